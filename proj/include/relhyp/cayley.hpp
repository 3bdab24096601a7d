#ifndef RELHYP_CAYLEY_HPP
#define RELHYP_CAYLEY_HPP

#include <cstddef>
#include <unordered_map>
#include <utility>
#include <vector>

#include "relhyp/graph.hpp"
#include "relhyp/words.hpp"

namespace relhyp {

// Radius-R ball of the Cayley graph: vertex i carries the i-th element in
// shortlex order of its normal form.
class BallIndex {
 public:
  int radius() const noexcept { return radius_; }
  std::size_t size() const noexcept { return words_.size(); }

  const Word& word(VertexId v) const { return words_.at(static_cast<std::size_t>(v)); }
  const std::vector<Word>& words() const noexcept { return words_; }
  int wordLength(VertexId v) const { return static_cast<int>(word(v).size()); }
  // -1 when the element is outside the ball.
  VertexId find(const Word& normalForm) const;

  // Normal forms at distance k; throws InputError unless 0 <= k <= R.
  std::vector<Word> sphere(int k) const;
  const std::vector<VertexId>& sphereVertices(int k) const;

 private:
  friend std::pair<MetricGraph, BallIndex> buildBall(const GroupOracle&, int, std::size_t);
  int radius_ = 0;
  std::vector<Word> words_;
  std::unordered_map<Word, VertexId, WordHash> index_;
  std::vector<std::vector<VertexId>> spheres_;
};

struct CayleyBall {
  MetricGraph graph;
  BallIndex index;
};

// Vertices: every element of word length <= R. Edges {g, g x} with both
// endpoints in the ball, weight 2. Throws ResourceError past the cap.
std::pair<MetricGraph, BallIndex> buildBall(const GroupOracle& oracle, int radius,
                                            std::size_t vertexCap = kDefaultVertexCap);

inline std::vector<Word> sphere(const BallIndex& index, int k) { return index.sphere(k); }

}  // namespace relhyp

#endif  // RELHYP_CAYLEY_HPP
