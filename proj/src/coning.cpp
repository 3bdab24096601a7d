#include "relhyp/coning.hpp"

#include <set>

#include "relhyp/errors.hpp"

namespace relhyp {

VertexId ConedGraph::cone(const std::string& peripheral, const Word& key) const {
  auto it = coneIndex.find({peripheral, key});
  if (it == coneIndex.end()) throw InputError("no cone vertex for coset " + peripheral);
  return it->second;
}

ConedGraph coneOff(const MetricGraph& ball, const BallIndex& index, const PeripheralFamily& family) {
  ConedGraph out;
  out.base = ball;
  const std::size_t n = ball.vertexCount();
  if (index.size() != n) throw InputError("coneOff: index does not match the ball");

  GraphBuilder b;
  for (const VertexTag& t : ball.tags()) b.addVertex(t);
  for (const Edge& e : ball.edges()) b.addEdge(e.u, e.v, e.weight);

  for (const PeripheralSpec& p : family.representatives()) {
    std::vector<VertexId> coneOf(n, -1);
    for (std::size_t v = 0; v < n; ++v) {
      Word key = p.cosetKey(index.word(static_cast<VertexId>(v)));
      auto [it, fresh] = out.coneIndex.try_emplace({p.label(), key}, -1);
      if (fresh) it->second = b.addVertex(ConeVertex{p.label(), key});
      coneOf[v] = it->second;
      b.addEdge(static_cast<VertexId>(v), it->second, kConeWeight);
    }
    out.coneOf.push_back(std::move(coneOf));
  }
  out.coned = std::move(b).finalize();
  return out;
}

std::vector<VertexId> hatPath(const ConedGraph& coned, std::span<const VertexId> path) {
  const auto n = static_cast<VertexId>(coned.baseCount());
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (path[i] < 0 || path[i] >= n) {
      throw InputError("hatPath: vertex " + std::to_string(path[i]) + " is not a ball vertex");
    }
    if (i > 0 && coned.base.edgeWeight(path[i - 1], path[i]) == 0) {
      throw InputError("hatPath: steps " + std::to_string(path[i - 1]) + " -> " + std::to_string(path[i]) +
                       " are not adjacent");
    }
  }

  std::vector<VertexId> out;
  std::size_t i = 0;
  while (i < path.size()) {
    out.push_back(path[i]);
    if (i + 1 == path.size()) break;
    std::size_t next = i + 1;
    for (const auto& coneOf : coned.coneOf) {
      auto at = [&](std::size_t k) { return coneOf[static_cast<std::size_t>(path[k])]; };
      std::size_t j = i;
      while (j + 1 < path.size() && at(j + 1) == at(i)) ++j;
      if (j > i) {
        out.push_back(at(i));
        next = j;
        break;
      }
    }
    i = next;
  }
  return out;
}

std::vector<PenetrationRecord> penetrations(const MetricGraph& coned, std::span<const VertexId> hatPath) {
  std::vector<PenetrationRecord> out;
  for (std::size_t i = 0; i < hatPath.size(); ++i) {
    if (!coned.contains(hatPath[i])) throw InputError("penetrations: unknown vertex " + std::to_string(hatPath[i]));
    if (i > 0 && coned.edgeWeight(hatPath[i - 1], hatPath[i]) == 0) {
      throw InputError("penetrations: path steps along a non-edge");
    }
    const auto* cone = std::get_if<ConeVertex>(&coned.tag(hatPath[i]));
    if (!cone) continue;
    if (i == 0 || i + 1 == hatPath.size()) {
      throw MalformedPathError("penetrations: cone vertex at a path endpoint");
    }
    out.push_back({cone->peripheral, cone->key, hatPath[i], hatPath[i - 1], hatPath[i + 1]});
  }
  return out;
}

bool isWithoutBacktracking(std::span<const PenetrationRecord> records) {
  std::set<VertexId> seen;
  for (const auto& r : records) {
    if (!seen.insert(r.cone).second) return false;
  }
  return true;
}

bool isWithoutBacktracking(const MetricGraph& coned, std::span<const VertexId> hatPath) {
  auto records = penetrations(coned, hatPath);
  return isWithoutBacktracking(records);
}

}  // namespace relhyp
