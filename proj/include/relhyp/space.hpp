#ifndef RELHYP_SPACE_HPP
#define RELHYP_SPACE_HPP

#include <string>
#include <string_view>
#include <vector>

#include "relhyp/cayley.hpp"
#include "relhyp/cusping.hpp"
#include "relhyp/graph.hpp"
#include "relhyp/words.hpp"

namespace relhyp {

enum class SpaceKind { Ball, Coned, Cusped };

SpaceKind parseSpaceKind(std::string_view name);
std::string spaceKindName(SpaceKind kind);

// A constructed space over a Cayley ball. The ball's vertices come first
// with the ball's indices, so group vertex v has word index.word(v).
struct Space {
  SpaceKind kind = SpaceKind::Ball;
  int radius = 0;
  int depth = 0;  // horoball depth, cusped spaces only
  MetricGraph graph;
  MetricGraph ball;
  BallIndex index;
  std::vector<HoroballInfo> horoballs;

  std::size_t groupCount() const noexcept { return index.size(); }
};

// depth < 0 selects defaultDepth(radius) for cusped spaces.
Space buildSpace(const GroupOracle& oracle, const PeripheralFamily& family, SpaceKind kind, int radius,
                 int depth = -1, std::size_t vertexCap = kDefaultVertexCap);

// Group vertices of word length <= R - margin, in ball order.
std::vector<VertexId> innerPoints(const Space& space, int margin);

}  // namespace relhyp

#endif  // RELHYP_SPACE_HPP
