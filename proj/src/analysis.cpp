#include "relhyp/analysis.hpp"

#include <algorithm>
#include <array>

#include "relhyp/errors.hpp"

namespace relhyp {

std::uint64_t counterDraw(std::uint64_t seed, std::uint64_t counter) noexcept {
  // splitmix64 finalizer over a seed-dependent stream position.
  std::uint64_t z = seed * 0xD1B54A32D192ED03ULL + (counter + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

PointMetric::PointMetric(const MetricGraph& g, std::vector<VertexId> points) : points_(std::move(points)) {
  const std::size_t p = points_.size();
  d_.resize(p * p);
  for (std::size_t i = 0; i < p; ++i) {
    auto row = distancesFrom(g, points_[i]);
    for (std::size_t j = 0; j < p; ++j) {
      int x = row[static_cast<std::size_t>(points_[j])];
      if (x < 0) throw InputError("PointMetric: points are not mutually reachable");
      d_[i * p + j] = x;
    }
  }
}

int fourPointDefect(int dwx, int dyz, int dwy, int dxz, int dwz, int dxy) noexcept {
  std::array<int, 3> s{dwx + dyz, dwy + dxz, dwz + dxy};
  std::sort(s.begin(), s.end());
  return s[2] - s[1];
}

namespace {

bool useExhaustive(const SamplingPolicy& policy, std::size_t points) {
  switch (policy.mode) {
    case SamplingPolicy::Mode::Exhaustive:
      if (points > kExhaustiveCap) {
        throw ResourceError("exhaustive delta needs <= " + std::to_string(kExhaustiveCap) + " points, got " +
                            std::to_string(points));
      }
      return true;
    case SamplingPolicy::Mode::Sampled: return false;
    case SamplingPolicy::Mode::Auto: return points <= kExhaustiveCap;
  }
  return true;
}

std::size_t drawIndex(const SamplingPolicy& policy, std::uint64_t counter, std::size_t n) {
  return static_cast<std::size_t>(counterDraw(policy.seed, counter) % n);
}

}  // namespace

int fourPointDeltaX2(const PointMetric& m, const SamplingPolicy& policy) {
  const std::size_t p = m.size();
  int best = 0;
  auto quad = [&](std::size_t w, std::size_t x, std::size_t y, std::size_t z) {
    best = std::max(best, fourPointDefect(m(w, x), m(y, z), m(w, y), m(x, z), m(w, z), m(x, y)));
  };
  if (useExhaustive(policy, p)) {
    for (std::size_t w = 0; w < p; ++w)
      for (std::size_t x = w + 1; x < p; ++x)
        for (std::size_t y = x + 1; y < p; ++y)
          for (std::size_t z = y + 1; z < p; ++z) quad(w, x, y, z);
  } else if (p > 0) {
    for (std::uint64_t c = 0; c < policy.samples; ++c) {
      quad(drawIndex(policy, 4 * c, p), drawIndex(policy, 4 * c + 1, p), drawIndex(policy, 4 * c + 2, p),
           drawIndex(policy, 4 * c + 3, p));
    }
  }
  return best;
}

int slimDelta(const MetricGraph& g, std::span<const VertexId> points, const SamplingPolicy& policy) {
  const std::size_t p = points.size();
  DistanceCache dist(g);
  std::map<std::pair<std::size_t, std::size_t>, std::vector<VertexId>> sides;
  auto side = [&](std::size_t i, std::size_t j) -> const std::vector<VertexId>& {
    auto key = std::minmax(i, j);
    auto it = sides.find(key);
    if (it == sides.end()) {
      const auto& row = dist.row(points[key.second]);
      auto path = extractGeodesic(g, points[key.first], points[key.second], row);
      it = sides.emplace(key, std::move(path.vertices)).first;
    }
    return it->second;
  };
  auto gap = [&](const std::vector<VertexId>& s, const std::vector<VertexId>& a, const std::vector<VertexId>& b) {
    int worst = 0;
    for (VertexId v : s) {
      const auto& row = dist.row(v);
      int near = -1;
      for (const auto* other : {&a, &b}) {
        for (VertexId u : *other) {
          int x = row[static_cast<std::size_t>(u)];
          if (near < 0 || x < near) near = x;
        }
      }
      worst = std::max(worst, near);
    }
    return worst;
  };
  int best = 0;
  auto triple = [&](std::size_t x, std::size_t y, std::size_t z) {
    const auto& xy = side(x, y);
    const auto& yz = side(y, z);
    const auto& zx = side(z, x);
    best = std::max({best, gap(xy, yz, zx), gap(yz, zx, xy), gap(zx, xy, yz)});
  };
  if (useExhaustive(policy, p)) {
    for (std::size_t x = 0; x < p; ++x)
      for (std::size_t y = x + 1; y < p; ++y)
        for (std::size_t z = y + 1; z < p; ++z) triple(x, y, z);
  } else if (p > 0) {
    for (std::uint64_t c = 0; c < policy.samples; ++c) {
      triple(drawIndex(policy, 3 * c, p), drawIndex(policy, 3 * c + 1, p), drawIndex(policy, 3 * c + 2, p));
    }
  }
  return best;
}

namespace {

DeltaReport reportFor(const MetricGraph& g, std::vector<VertexId> points, const SamplingPolicy& policy, bool withSlim) {
  DeltaReport r;
  r.vertexCount = g.vertexCount();
  r.pointCount = points.size();
  r.exhaustive = useExhaustive(policy, points.size());
  if (!r.exhaustive) {
    r.samples = policy.samples;
    r.seed = policy.seed;
  }
  PointMetric m(g, points);
  r.fourPointX2 = fourPointDeltaX2(m, policy);
  if (withSlim) r.slim = slimDelta(g, points, policy);
  return r;
}

}  // namespace

DeltaReport fourPointDelta(const MetricGraph& g, const SamplingPolicy& policy) {
  std::vector<VertexId> all(g.vertexCount());
  for (std::size_t v = 0; v < all.size(); ++v) all[v] = static_cast<VertexId>(v);
  return reportFor(g, std::move(all), policy, true);
}

DeltaReport measureDelta(const Space& space, const SamplingPolicy& policy, int margin, bool withSlim) {
  if (margin < 0 || margin > space.radius) throw InputError("inner margin must lie in 0..R");
  DeltaReport r = reportFor(space.graph, innerPoints(space, margin), policy, withSlim);
  r.radius = space.radius;
  r.innerMargin = margin;
  return r;
}

std::string verdictName(Verdict v) {
  switch (v) {
    case Verdict::Bounded: return "bounded";
    case Verdict::Growing: return "growing";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Verdict growthVerdict(std::span<const int> values) {
  if (values.size() < 3) throw InputError("a growth verdict needs at least three values");
  const std::size_t n = values.size();
  if (values[n - 1] == values[n - 2] && values[n - 2] == values[n - 3]) return Verdict::Bounded;
  for (std::size_t i = 1; i < n; ++i) {
    if (values[i] <= values[i - 1]) return Verdict::Inconclusive;
  }
  return Verdict::Growing;
}

DeltaScan deltaGrowthScan(const std::function<Space(int)>& build, std::span<const int> radii,
                          const SamplingPolicy& policy, int margin, bool withSlim) {
  if (radii.size() < 3) throw InputError("a delta scan needs at least three radii");
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (radii[i] <= radii[i - 1]) throw InputError("scan radii must be strictly increasing");
  }
  DeltaScan scan;
  scan.withSlim = withSlim;
  std::vector<int> four;
  std::vector<int> slim;
  for (int r : radii) {
    scan.reports.push_back(measureDelta(build(r), policy, margin, withSlim));
    four.push_back(scan.reports.back().fourPointX2);
    slim.push_back(scan.reports.back().slim);
  }
  scan.fourPointVerdict = growthVerdict(four);
  scan.slimVerdict = withSlim ? growthVerdict(slim) : Verdict::Inconclusive;
  return scan;
}

int defaultMargin(SpaceKind kind) { return kind == SpaceKind::Ball ? 0 : 1; }

std::uint64_t FinenessProfile::total(VertexId u, VertexId v) const {
  auto it = counts.find(std::minmax(u, v));
  if (it == counts.end()) throw InputError("fineness: edge not profiled");
  return it->second.empty() ? 0 : it->second.back();
}

FinenessProfile finenessProfile(const MetricGraph& g, int maxLength, std::span<const std::pair<VertexId, VertexId>> edges,
                                std::uint64_t budget) {
  if (maxLength < 1) throw InputError("fineness: circuit length must be >= 1");
  if (maxLength > kMaxCircuitLength) {
    throw ResourceError("fineness: circuit length " + std::to_string(maxLength) + " exceeds the cap " +
                        std::to_string(kMaxCircuitLength));
  }
  const int limit = 2 * maxLength;
  FinenessProfile out;
  out.maxLength = maxLength;
  std::uint64_t expansions = 0;
  std::vector<char> onPath(g.vertexCount(), 0);

  for (auto [u, v] : edges) {
    const int w = g.contains(u) && g.contains(v) ? g.edgeWeight(u, v) : 0;
    if (w == 0) throw InputError("fineness: " + std::to_string(u) + "-" + std::to_string(v) + " is not an edge");
    const auto toU = distancesFrom(g, u);
    std::vector<std::uint64_t> exact(static_cast<std::size_t>(limit) + 1, 0);

    // Simple paths v -> u other than the edge itself close a circuit.
    onPath[static_cast<std::size_t>(v)] = 1;
    auto dfs = [&](auto&& self, VertexId at, int length, int steps) -> void {
      for (const Neighbor& nb : g.neighbors(at)) {
        const int next = length + nb.weight;
        if (nb.vertex == u) {
          if (steps >= 1 && next <= limit) ++exact[static_cast<std::size_t>(next)];
          continue;
        }
        if (onPath[static_cast<std::size_t>(nb.vertex)]) continue;
        const int rest = toU[static_cast<std::size_t>(nb.vertex)];
        if (rest < 0 || next + rest > limit) continue;
        if (++expansions > budget) {
          throw ResourceError("fineness: expansion budget " + std::to_string(budget) + " exhausted", true);
        }
        onPath[static_cast<std::size_t>(nb.vertex)] = 1;
        self(self, nb.vertex, next, steps + 1);
        onPath[static_cast<std::size_t>(nb.vertex)] = 0;
      }
    };
    dfs(dfs, v, w, 0);
    onPath[static_cast<std::size_t>(v)] = 0;

    std::vector<std::uint64_t> cumulative(static_cast<std::size_t>(limit));
    std::uint64_t running = 0;
    for (int len = 1; len <= limit; ++len) {
      running += exact[static_cast<std::size_t>(len)];
      cumulative[static_cast<std::size_t>(len - 1)] = running;
    }
    out.counts[std::minmax(u, v)] = std::move(cumulative);
  }
  return out;
}

}  // namespace relhyp
