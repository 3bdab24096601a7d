#ifndef RELHYP_CONING_HPP
#define RELHYP_CONING_HPP

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "relhyp/cayley.hpp"
#include "relhyp/graph.hpp"
#include "relhyp/words.hpp"

namespace relhyp {

// Ball plus one cone vertex per (peripheral, coset) meeting the ball.
// Ball vertices keep their indices; cone vertices follow, grouped by
// peripheral in list order, then by first appearance in ball order.
struct ConedGraph {
  MetricGraph base;
  MetricGraph coned;
  std::map<std::pair<std::string, Word>, VertexId> coneIndex;
  // coneOf[p][v]: cone vertex of the p-th peripheral's coset through v.
  std::vector<std::vector<VertexId>> coneOf;

  std::size_t baseCount() const noexcept { return base.vertexCount(); }
  bool isConeVertex(VertexId v) const noexcept {
    return v >= 0 && static_cast<std::size_t>(v) >= base.vertexCount() && coned.contains(v);
  }
  VertexId cone(const std::string& peripheral, const Word& key) const;
};

ConedGraph coneOff(const MetricGraph& ball, const BallIndex& index, const PeripheralFamily& family);

// Each maximal run of >= 2 consecutive vertices inside one coset becomes
// entering vertex -> cone -> exiting vertex. Runs are taken greedily from
// the left; when several peripherals apply at a vertex the first in list
// order wins. Throws InputError for cone vertices or non-adjacent steps.
std::vector<VertexId> hatPath(const ConedGraph& coned, std::span<const VertexId> path);

struct PenetrationRecord {
  std::string peripheral;
  Word key;
  VertexId cone = -1;
  VertexId entering = -1;
  VertexId exiting = -1;
  friend bool operator==(const PenetrationRecord&, const PenetrationRecord&) = default;
};

// One record per cone visit, in path order. A cone vertex at either end
// throws MalformedPathError; a step along a non-edge throws InputError.
std::vector<PenetrationRecord> penetrations(const MetricGraph& coned, std::span<const VertexId> hatPath);

bool isWithoutBacktracking(std::span<const PenetrationRecord> records);
bool isWithoutBacktracking(const MetricGraph& coned, std::span<const VertexId> hatPath);

}  // namespace relhyp

#endif  // RELHYP_CONING_HPP
