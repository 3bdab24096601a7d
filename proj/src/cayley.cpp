#include "relhyp/cayley.hpp"

#include <algorithm>

#include "relhyp/errors.hpp"

namespace relhyp {

VertexId BallIndex::find(const Word& normalForm) const {
  auto it = index_.find(normalForm);
  return it == index_.end() ? -1 : it->second;
}

std::vector<Word> BallIndex::sphere(int k) const {
  std::vector<Word> out;
  for (VertexId v : sphereVertices(k)) out.push_back(word(v));
  return out;
}

const std::vector<VertexId>& BallIndex::sphereVertices(int k) const {
  if (k < 0 || k > radius_) {
    throw InputError("sphere: k = " + std::to_string(k) + " outside 0.." + std::to_string(radius_));
  }
  return spheres_[static_cast<std::size_t>(k)];
}

std::pair<MetricGraph, BallIndex> buildBall(const GroupOracle& oracle, int radius, std::size_t vertexCap) {
  if (radius < 0) throw InputError("buildBall: radius must be >= 0");
  BallIndex index;
  index.radius_ = radius;
  const auto letters = static_cast<Letter>(oracle.alphabet().letterCount());

  // Normal forms are shortlex-least geodesics, hence prefix closed: every
  // element at distance k+1 is (normal form at distance k) * letter.
  std::vector<Word> previous{Word{}};
  index.words_.push_back(Word{});
  index.index_.emplace(Word{}, 0);
  index.spheres_.push_back({0});
  for (int k = 1; k <= radius; ++k) {
    std::vector<Word> next;
    for (const Word& w : previous) {
      for (Letter x = 0; x < letters; ++x) {
        Word nf = oracle.multiply(w, Word{x});
        if (static_cast<int>(nf.size()) != k || index.index_.count(nf)) continue;
        index.index_.emplace(nf, -1);
        next.push_back(std::move(nf));
      }
    }
    std::sort(next.begin(), next.end(), shortlexLess);
    if (index.words_.size() + next.size() > vertexCap) {
      throw ResourceError("buildBall: radius " + std::to_string(radius) + " exceeds the vertex cap " +
                          std::to_string(vertexCap));
    }
    std::vector<VertexId> ids;
    for (Word& w : next) {
      auto id = static_cast<VertexId>(index.words_.size());
      index.index_[w] = id;
      ids.push_back(id);
      index.words_.push_back(w);
    }
    index.spheres_.push_back(std::move(ids));
    previous = std::move(next);
  }

  GraphBuilder b;
  for (const Word& w : index.words_) b.addVertex(GroupVertex{w});
  for (std::size_t v = 0; v < index.words_.size(); ++v) {
    for (Letter x = 0; x < letters; ++x) {
      VertexId u = index.find(oracle.multiply(index.words_[v], Word{x}));
      if (u > static_cast<VertexId>(v)) b.addEdge(static_cast<VertexId>(v), u, kUnitWeight);
    }
  }
  return {std::move(b).finalize(), std::move(index)};
}

}  // namespace relhyp
