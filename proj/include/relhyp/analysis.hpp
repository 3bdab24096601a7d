#ifndef RELHYP_ANALYSIS_HPP
#define RELHYP_ANALYSIS_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "relhyp/graph.hpp"
#include "relhyp/space.hpp"

namespace relhyp {

// Counter-based draws: the i-th value depends only on (seed, i).
std::uint64_t counterDraw(std::uint64_t seed, std::uint64_t counter) noexcept;

struct SamplingPolicy {
  enum class Mode { Exhaustive, Sampled, Auto };
  Mode mode = Mode::Auto;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;

  static SamplingPolicy exhaustive() { return {Mode::Exhaustive, 0, 0}; }
  static SamplingPolicy sampled(std::uint64_t n, std::uint64_t seed) { return {Mode::Sampled, n, seed}; }
  // Exhaustive up to kExhaustiveCap points, sampled above.
  static SamplingPolicy automatic(std::uint64_t n, std::uint64_t seed) { return {Mode::Auto, n, seed}; }
};

constexpr std::size_t kExhaustiveCap = 120;

// Distances among a point set, rows computed once per point.
class PointMetric {
 public:
  PointMetric(const MetricGraph& g, std::vector<VertexId> points);
  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<VertexId>& points() const noexcept { return points_; }
  int operator()(std::size_t i, std::size_t j) const { return d_[i * points_.size() + j]; }

 private:
  std::vector<VertexId> points_;
  std::vector<int> d_;
};

// Four-point value L - M of one quadruple (twice the scaled delta).
int fourPointDefect(int dwx, int dyz, int dwy, int dxz, int dwz, int dxy) noexcept;

struct DeltaReport {
  int radius = 0;
  std::size_t vertexCount = 0;
  std::size_t pointCount = 0;
  // Twice the scaled four-point delta, so always an integer; word-metric units
  // are fourPointX2 / 4.
  int fourPointX2 = 0;
  int slim = 0;  // scaled
  bool exhaustive = true;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  int innerMargin = 0;

  double fourPointUnits() const noexcept { return fourPointX2 / 4.0; }
  double slimUnits() const noexcept { return slim / 2.0; }
  friend bool operator==(const DeltaReport&, const DeltaReport&) = default;
};

// Max of L - M over quadruples of the point set. Exhaustive above
// kExhaustiveCap points throws ResourceError.
int fourPointDeltaX2(const PointMetric& m, const SamplingPolicy& policy);
// Slim-triangle delta (scaled) over triples of the point set, sides built
// with extractGeodesic.
int slimDelta(const MetricGraph& g, std::span<const VertexId> points, const SamplingPolicy& policy);

// Both deltas over all vertices of g.
DeltaReport fourPointDelta(const MetricGraph& g, const SamplingPolicy& policy);
DeltaReport measureDelta(const Space& space, const SamplingPolicy& policy, int margin, bool withSlim = true);

enum class Verdict { Bounded, Growing, Inconclusive };
std::string verdictName(Verdict v);
// Bounded iff the last three values agree; growing iff strictly increasing.
Verdict growthVerdict(std::span<const int> values);

struct DeltaScan {
  std::vector<DeltaReport> reports;
  Verdict fourPointVerdict = Verdict::Inconclusive;
  Verdict slimVerdict = Verdict::Inconclusive;
  bool withSlim = true;  // false: slim fields are unset
};

// Needs at least three strictly increasing radii.
DeltaScan deltaGrowthScan(const std::function<Space(int)>& build, std::span<const int> radii,
                          const SamplingPolicy& policy, int margin, bool withSlim = true);

// Margin used when a config does not set one.
int defaultMargin(SpaceKind kind);

struct FinenessProfile {
  int maxLength = 0;  // word-metric units
  // counts[e][L-1]: vertex-simple cycles through edge e of scaled length <= L,
  // for L = 1 .. 2 * maxLength.
  std::map<std::pair<VertexId, VertexId>, std::vector<std::uint64_t>> counts;

  std::uint64_t total(VertexId u, VertexId v) const;
};

constexpr int kMaxCircuitLength = 12;

// Edges are given as vertex pairs; each must be an edge of g. Throws
// ResourceError for maxLength > kMaxCircuitLength or when the expansion
// budget runs out.
FinenessProfile finenessProfile(const MetricGraph& g, int maxLength, std::span<const std::pair<VertexId, VertexId>> edges,
                                std::uint64_t budget = 200000000);

}  // namespace relhyp

#endif  // RELHYP_ANALYSIS_HPP
