#include "relhyp/space.hpp"

#include "relhyp/coning.hpp"
#include "relhyp/errors.hpp"

namespace relhyp {

SpaceKind parseSpaceKind(std::string_view name) {
  if (name == "ball") return SpaceKind::Ball;
  if (name == "coned") return SpaceKind::Coned;
  if (name == "cusped") return SpaceKind::Cusped;
  throw InputError("unknown space '" + std::string(name) + "' (expected ball, coned or cusped)");
}

std::string spaceKindName(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::Ball: return "ball";
    case SpaceKind::Coned: return "coned";
    case SpaceKind::Cusped: return "cusped";
  }
  return "ball";
}

Space buildSpace(const GroupOracle& oracle, const PeripheralFamily& family, SpaceKind kind, int radius, int depth,
                 std::size_t vertexCap) {
  Space s;
  s.kind = kind;
  s.radius = radius;
  auto [ball, index] = buildBall(oracle, radius, vertexCap);
  switch (kind) {
    case SpaceKind::Ball:
      s.graph = ball;
      break;
    case SpaceKind::Coned:
      s.graph = coneOff(ball, index, family).coned;
      break;
    case SpaceKind::Cusped: {
      s.depth = depth < 0 ? defaultDepth(radius) : depth;
      auto cusped = buildCusped(ball, index, family, s.depth);
      if (cusped.graph.vertexCount() > vertexCap) {
        throw ResourceError("cusped space has " + std::to_string(cusped.graph.vertexCount()) +
                            " vertices, above the vertex cap " + std::to_string(vertexCap));
      }
      s.graph = std::move(cusped.graph);
      s.horoballs = std::move(cusped.horoballs);
      break;
    }
  }
  s.ball = std::move(ball);
  s.index = std::move(index);
  return s;
}

std::vector<VertexId> innerPoints(const Space& space, int margin) {
  std::vector<VertexId> out;
  const int limit = space.radius - margin;
  for (std::size_t v = 0; v < space.groupCount(); ++v) {
    if (space.index.wordLength(static_cast<VertexId>(v)) <= limit) out.push_back(static_cast<VertexId>(v));
  }
  return out;
}

}  // namespace relhyp
