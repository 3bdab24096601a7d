#include "relhyp/graph.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "relhyp/errors.hpp"

namespace relhyp {

namespace {

void checkVertex(const MetricGraph& g, VertexId v, const char* what) {
  if (!g.contains(v)) throw InputError(std::string(what) + ": unknown vertex " + std::to_string(v));
}

}  // namespace

// ---------------------------------------------------------------------------
// MetricGraph / GraphBuilder

int MetricGraph::edgeWeight(VertexId u, VertexId v) const {
  auto nb = neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v, [](const Neighbor& n, VertexId x) { return n.vertex < x; });
  return (it != nb.end() && it->vertex == v) ? it->weight : 0;
}

std::vector<Edge> MetricGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edgeCount_);
  for (std::size_t u = 0; u < adjacency_.size(); ++u) {
    for (const Neighbor& n : adjacency_[u]) {
      if (static_cast<std::size_t>(n.vertex) > u) out.push_back({static_cast<VertexId>(u), n.vertex, n.weight});
    }
  }
  return out;
}

MetricGraph MetricGraph::restrictTo(std::span<const VertexId> keep) const {
  std::vector<VertexId> renumber(tags_.size(), -1);
  GraphBuilder b;
  for (VertexId v : keep) {
    checkVertex(*this, v, "restrictTo");
    if (renumber[static_cast<std::size_t>(v)] >= 0) throw InputError("restrictTo: repeated vertex");
    renumber[static_cast<std::size_t>(v)] = b.addVertex(tag(v));
  }
  for (const Edge& e : edges()) {
    VertexId a = renumber[static_cast<std::size_t>(e.u)];
    VertexId c = renumber[static_cast<std::size_t>(e.v)];
    if (a >= 0 && c >= 0) b.addEdge(a, c, e.weight);
  }
  return std::move(b).finalize();
}

VertexId GraphBuilder::addVertex(VertexTag tag) {
  tags_.push_back(std::move(tag));
  adjacency_.emplace_back();
  return static_cast<VertexId>(tags_.size() - 1);
}

bool GraphBuilder::hasEdge(VertexId u, VertexId v) const {
  if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= tags_.size()) return false;
  const auto& nb = adjacency_[static_cast<std::size_t>(u)];
  return std::any_of(nb.begin(), nb.end(), [v](const Neighbor& n) { return n.vertex == v; });
}

void GraphBuilder::addEdge(VertexId u, VertexId v, int weight) {
  if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= tags_.size() || static_cast<std::size_t>(v) >= tags_.size()) {
    throw InputError("addEdge: unknown vertex");
  }
  if (u == v) throw InputError("addEdge: self-loop at vertex " + std::to_string(u));
  if (weight != kConeWeight && weight != kUnitWeight) throw InputError("addEdge: weight must be 1 or 2");
  if (hasEdge(u, v)) throw InputError("addEdge: duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
  adjacency_[static_cast<std::size_t>(u)].push_back({v, weight});
  adjacency_[static_cast<std::size_t>(v)].push_back({u, weight});
  ++edgeCount_;
}

MetricGraph GraphBuilder::finalize(bool requireConnected) && {
  MetricGraph g;
  for (auto& nb : adjacency_) {
    std::sort(nb.begin(), nb.end(), [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
  }
  for (std::size_t u = 0; u < adjacency_.size(); ++u) {
    for (const Neighbor& n : adjacency_[u]) {
      if (n.weight == kConeWeight && !isCone(tags_[u]) && !isCone(tags_[static_cast<std::size_t>(n.vertex)])) {
        throw InputError("graph: weight-1 edge " + std::to_string(u) + "-" + std::to_string(n.vertex) +
                         " not incident to a cone vertex");
      }
    }
  }
  g.tags_ = std::move(tags_);
  g.adjacency_ = std::move(adjacency_);
  g.edgeCount_ = edgeCount_;
  if (requireConnected && !isConnected(g)) throw InputError("graph: not connected");
  return g;
}

// ---------------------------------------------------------------------------
// Distances

std::vector<int> distancesFrom(const MetricGraph& g, VertexId source) {
  checkVertex(g, source, "distancesFrom");
  // Dial's algorithm; with weights in {1,2} three circular buckets suffice.
  std::vector<int> dist(g.vertexCount(), -1);
  std::vector<int> tentative(g.vertexCount(), std::numeric_limits<int>::max());
  std::vector<VertexId> buckets[3];
  tentative[static_cast<std::size_t>(source)] = 0;
  buckets[0].push_back(source);
  std::size_t pending = 1;
  for (int d = 0; pending > 0; ++d) {
    auto& bucket = buckets[d % 3];
    // Vertices settled at distance d may push more vertices into this
    // bucket only via weight-0 edges, which do not exist.
    std::vector<VertexId> current;
    current.swap(bucket);
    pending -= current.size();
    for (VertexId u : current) {
      auto ui = static_cast<std::size_t>(u);
      if (dist[ui] >= 0 || tentative[ui] != d) continue;
      dist[ui] = d;
      for (const Neighbor& n : g.neighbors(u)) {
        auto vi = static_cast<std::size_t>(n.vertex);
        int nd = d + n.weight;
        if (dist[vi] < 0 && nd < tentative[vi]) {
          tentative[vi] = nd;
          buckets[nd % 3].push_back(n.vertex);
          ++pending;
        }
      }
    }
  }
  return dist;
}

bool isConnected(const MetricGraph& g) {
  if (g.vertexCount() == 0) return true;
  auto d = distancesFrom(g, 0);
  return std::none_of(d.begin(), d.end(), [](int x) { return x < 0; });
}

int DistanceMatrix::maxEntry() const {
  int m = 0;
  for (auto x : data_) m = std::max(m, static_cast<int>(x));
  return m;
}

DistanceMatrix allPairs(const MetricGraph& g, std::size_t vertexCap) {
  const std::size_t n = g.vertexCount();
  if (n > vertexCap) {
    throw ResourceError("allPairs: " + std::to_string(n) + " vertices exceed the vertex cap " +
                        std::to_string(vertexCap));
  }
  std::vector<std::uint16_t> data(n * n);
  for (std::size_t s = 0; s < n; ++s) {
    auto row = distancesFrom(g, static_cast<VertexId>(s));
    for (std::size_t t = 0; t < n; ++t) {
      if (row[t] < 0) throw InputError("allPairs: graph is not connected");
      if (row[t] > std::numeric_limits<std::uint16_t>::max()) throw ResourceError("allPairs: distance overflow");
      data[s * n + t] = static_cast<std::uint16_t>(row[t]);
    }
  }
  return DistanceMatrix(n, std::move(data));
}

const std::vector<int>& DistanceCache::row(VertexId source) {
  auto it = rows_.find(source);
  if (it != rows_.end()) return it->second;
  return rows_.emplace(source, distancesFrom(*graph_, source)).first->second;
}

// ---------------------------------------------------------------------------
// Geodesics

GeodesicPath extractGeodesic(const MetricGraph& g, VertexId u, VertexId v, std::span<const int> distToV) {
  checkVertex(g, u, "extractGeodesic");
  checkVertex(g, v, "extractGeodesic");
  GeodesicPath p;
  p.vertices.push_back(u);
  p.weight = distToV[static_cast<std::size_t>(u)];
  if (p.weight < 0) throw InputError("extractGeodesic: endpoints not connected");
  VertexId cur = u;
  while (cur != v) {
    int here = distToV[static_cast<std::size_t>(cur)];
    for (const Neighbor& n : g.neighbors(cur)) {
      if (distToV[static_cast<std::size_t>(n.vertex)] + n.weight == here) {
        cur = n.vertex;
        break;
      }
    }
    p.vertices.push_back(cur);
  }
  return p;
}

GeodesicPath extractGeodesic(const MetricGraph& g, VertexId u, VertexId v) {
  checkVertex(g, v, "extractGeodesic");
  auto d = distancesFrom(g, v);
  return extractGeodesic(g, u, v, d);
}

int pathWeight(const MetricGraph& g, std::span<const VertexId> path) {
  int total = 0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    checkVertex(g, path[i], "path");
    if (i == 0) continue;
    int w = g.edgeWeight(path[i - 1], path[i]);
    if (w == 0) {
      throw InputError("path: vertices " + std::to_string(path[i - 1]) + " and " + std::to_string(path[i]) +
                       " are not adjacent");
    }
    total += w;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Export / import

GraphFormat parseGraphFormat(std::string_view name) {
  if (name == "dot") return GraphFormat::Dot;
  if (name == "json") return GraphFormat::Json;
  if (name == "csv") return GraphFormat::Csv;
  throw InputError("unknown graph export format '" + std::string(name) + "'");
}

std::string vertexLabel(const VertexTag& tag, const Alphabet& alphabet) {
  return std::visit(
      [&](const auto& t) -> std::string {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, GroupVertex>) {
          return formatWord(alphabet, t.word);
        } else if constexpr (std::is_same_v<T, ConeVertex>) {
          return "CONE:" + t.peripheral + ":" + formatWord(alphabet, t.key);
        } else {
          return "HORO:" + formatWord(alphabet, t.key) + ":" + std::to_string(t.depth);
        }
      },
      tag);
}

namespace {

std::string dotEscape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

nlohmann::json tagToJson(const VertexTag& tag, const Alphabet& alphabet) {
  return std::visit(
      [&](const auto& t) -> nlohmann::json {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, GroupVertex>) {
          return {{"kind", "group"}, {"word", formatWord(alphabet, t.word)}};
        } else if constexpr (std::is_same_v<T, ConeVertex>) {
          return {{"kind", "cone"}, {"peripheral", t.peripheral}, {"key", formatWord(alphabet, t.key)}};
        } else {
          return {{"kind", "horo"},
                  {"word", formatWord(alphabet, t.word)},
                  {"depth", t.depth},
                  {"peripheral", t.peripheral},
                  {"key", formatWord(alphabet, t.key)}};
        }
      },
      tag);
}

VertexTag tagFromJson(const nlohmann::json& j, const Alphabet& alphabet) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "group") return GroupVertex{parseWord(alphabet, j.at("word").get<std::string>())};
  if (kind == "cone") {
    return ConeVertex{j.at("peripheral").get<std::string>(), parseWord(alphabet, j.at("key").get<std::string>())};
  }
  if (kind == "horo") {
    return HoroVertex{parseWord(alphabet, j.at("word").get<std::string>()), j.at("depth").get<int>(),
                      j.at("peripheral").get<std::string>(), parseWord(alphabet, j.at("key").get<std::string>())};
  }
  throw InputError("graph json: unknown vertex kind '" + kind + "'");
}

}  // namespace

std::string exportGraph(const MetricGraph& g, GraphFormat format, const Alphabet& alphabet) {
  std::ostringstream os;
  switch (format) {
    case GraphFormat::Dot: {
      os << "graph G {\n";
      for (std::size_t v = 0; v < g.vertexCount(); ++v) {
        os << "  " << v << " [label=\"" << dotEscape(vertexLabel(g.tag(static_cast<VertexId>(v)), alphabet))
           << "\"];\n";
      }
      for (const Edge& e : g.edges()) os << "  " << e.u << " -- " << e.v << " [weight=" << e.weight << "];\n";
      os << "}\n";
      break;
    }
    case GraphFormat::Csv:
      for (const Edge& e : g.edges()) os << e.u << ',' << e.v << ',' << e.weight << '\n';
      break;
    case GraphFormat::Json: {
      nlohmann::json j;
      j["scale"] = kUnitWeight;
      j["vertices"] = nlohmann::json::array();
      j["adjacency"] = nlohmann::json::array();
      for (std::size_t v = 0; v < g.vertexCount(); ++v) {
        j["vertices"].push_back(tagToJson(g.tag(static_cast<VertexId>(v)), alphabet));
        auto adj = nlohmann::json::array();
        for (const Neighbor& n : g.neighbors(static_cast<VertexId>(v))) adj.push_back({n.vertex, n.weight});
        j["adjacency"].push_back(std::move(adj));
      }
      os << j.dump(1) << '\n';
      break;
    }
  }
  return os.str();
}

MetricGraph importGraphJson(std::string_view text, const Alphabet& alphabet) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("graph json: ") + e.what());
  }
  GraphBuilder b;
  const auto& vs = j.at("vertices");
  const auto& adj = j.at("adjacency");
  if (vs.size() != adj.size()) throw InputError("graph json: vertices/adjacency length mismatch");
  for (const auto& v : vs) b.addVertex(tagFromJson(v, alphabet));
  for (std::size_t u = 0; u < adj.size(); ++u) {
    for (const auto& entry : adj[u]) {
      auto v = entry.at(0).get<VertexId>();
      if (static_cast<std::size_t>(v) > u) b.addEdge(static_cast<VertexId>(u), v, entry.at(1).get<int>());
    }
  }
  return std::move(b).finalize();
}

}  // namespace relhyp
