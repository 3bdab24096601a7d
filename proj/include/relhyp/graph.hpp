#ifndef RELHYP_GRAPH_HPP
#define RELHYP_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "relhyp/words.hpp"

namespace relhyp {

using VertexId = std::int32_t;

// All lengths are the word-metric lengths multiplied by two, so cone edges
// (half a unit) have weight 1 and ordinary edges weight 2.
constexpr int kUnitWeight = 2;
constexpr int kConeWeight = 1;

struct GroupVertex {
  Word word;
  friend bool operator==(const GroupVertex&, const GroupVertex&) = default;
};

struct ConeVertex {
  std::string peripheral;
  Word key;
  friend bool operator==(const ConeVertex&, const ConeVertex&) = default;
};

// Vertex (word, depth) of a combinatorial horoball over the coset with the
// given peripheral label and key.
struct HoroVertex {
  Word word;
  int depth = 0;
  std::string peripheral;
  Word key;
  friend bool operator==(const HoroVertex&, const HoroVertex&) = default;
};

using VertexTag = std::variant<GroupVertex, ConeVertex, HoroVertex>;

inline bool isCone(const VertexTag& t) { return std::holds_alternative<ConeVertex>(t); }
inline bool isGroup(const VertexTag& t) { return std::holds_alternative<GroupVertex>(t); }

struct Neighbor {
  VertexId vertex;
  int weight;
  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

struct Edge {
  VertexId u;  // u < v
  VertexId v;
  int weight;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Immutable finite weighted graph; build through GraphBuilder.
class MetricGraph {
 public:
  MetricGraph() = default;

  std::size_t vertexCount() const noexcept { return tags_.size(); }
  std::size_t edgeCount() const noexcept { return edgeCount_; }
  const VertexTag& tag(VertexId v) const { return tags_.at(static_cast<std::size_t>(v)); }
  const std::vector<VertexTag>& tags() const noexcept { return tags_; }
  // Sorted by neighbor index.
  std::span<const Neighbor> neighbors(VertexId v) const { return adjacency_.at(static_cast<std::size_t>(v)); }
  // 0 when not adjacent.
  int edgeWeight(VertexId u, VertexId v) const;
  bool contains(VertexId v) const noexcept { return v >= 0 && static_cast<std::size_t>(v) < tags_.size(); }
  // Edge list sorted by (u, v) with u < v.
  std::vector<Edge> edges() const;

  // Graph on the kept vertices, renumbered in the given order.
  MetricGraph restrictTo(std::span<const VertexId> keep) const;

  friend bool operator==(const MetricGraph&, const MetricGraph&) = default;

 private:
  friend class GraphBuilder;
  std::vector<VertexTag> tags_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::size_t edgeCount_ = 0;
};

class GraphBuilder {
 public:
  VertexId addVertex(VertexTag tag);
  // Rejects self-loops, duplicate edges and weights outside {1, 2}.
  void addEdge(VertexId u, VertexId v, int weight);
  bool hasEdge(VertexId u, VertexId v) const;
  std::size_t vertexCount() const noexcept { return tags_.size(); }

  // Checks the weight-1 and connectivity invariants.
  MetricGraph finalize(bool requireConnected = true) &&;

 private:
  std::vector<VertexTag> tags_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::size_t edgeCount_ = 0;
};

// Exact single-source distances (scaled); -1 marks unreachable vertices.
std::vector<int> distancesFrom(const MetricGraph& g, VertexId source);
bool isConnected(const MetricGraph& g);

class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  DistanceMatrix(std::size_t n, std::vector<std::uint16_t> data) : n_(n), data_(std::move(data)) {}

  std::size_t size() const noexcept { return n_; }
  int operator()(VertexId u, VertexId v) const {
    return data_[static_cast<std::size_t>(u) * n_ + static_cast<std::size_t>(v)];
  }
  std::span<const std::uint16_t> row(VertexId u) const {
    return std::span<const std::uint16_t>(data_).subspan(static_cast<std::size_t>(u) * n_, n_);
  }
  int maxEntry() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint16_t> data_;
};

constexpr std::size_t kDefaultVertexCap = 20000;

// Throws ResourceError naming the cap when the graph is larger.
DistanceMatrix allPairs(const MetricGraph& g, std::size_t vertexCap = kDefaultVertexCap);

// Lazily computed distance rows, shared by analyses that only touch a few
// sources of a large graph.
class DistanceCache {
 public:
  explicit DistanceCache(const MetricGraph& g) : graph_(&g) {}
  const std::vector<int>& row(VertexId source);
  int operator()(VertexId u, VertexId v) { return row(u)[static_cast<std::size_t>(v)]; }
  const MetricGraph& graph() const noexcept { return *graph_; }

 private:
  const MetricGraph* graph_;
  std::unordered_map<VertexId, std::vector<int>> rows_;
};

struct GeodesicPath {
  std::vector<VertexId> vertices;
  int weight = 0;
};

// Next vertex is the smallest-index neighbor lying on a shortest path.
GeodesicPath extractGeodesic(const MetricGraph& g, VertexId u, VertexId v);
GeodesicPath extractGeodesic(const MetricGraph& g, VertexId u, VertexId v, std::span<const int> distToV);

// Sum of edge weights; throws InputError if consecutive vertices are not adjacent.
int pathWeight(const MetricGraph& g, std::span<const VertexId> path);

enum class GraphFormat { Dot, Json, Csv };
GraphFormat parseGraphFormat(std::string_view name);

// Labels: group words, "CONE:<peripheral>:<key>", "HORO:<key>:<depth>".
std::string vertexLabel(const VertexTag& tag, const Alphabet& alphabet);
std::string exportGraph(const MetricGraph& g, GraphFormat format, const Alphabet& alphabet);
// Inverse of the JSON export.
MetricGraph importGraphJson(std::string_view json, const Alphabet& alphabet);

}  // namespace relhyp

#endif  // RELHYP_GRAPH_HPP
