// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance [--presets DIR] [AC1 ... AC8]
//
// With no names every criterion runs. Exit status is 1 if any selected
// criterion fails.

#include <algorithm>
#include <chrono>
#include <climits>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <queue>
#include <random>
#include <sstream>

#include "relhyp/analysis.hpp"
#include "relhyp/bcp.hpp"
#include "relhyp/boundary.hpp"
#include "relhyp/config.hpp"
#include "relhyp/cusping.hpp"
#include "relhyp/errors.hpp"
#include "relhyp/pipeline.hpp"

using namespace relhyp;
namespace fs = std::filesystem;

namespace {

fs::path presetDir = fs::path(RELHYP_SOURCE_DIR) / "presets";

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + ("failed: " + what);
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

struct Criterion {
  std::string name;
  double limitSeconds;
  std::string title;
  std::function<Outcome()> run;
};

RunConfig preset(const std::string& name) {
  std::ifstream in(presetDir / (name + ".cfg"));
  if (!in) throw InputError("missing preset " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parseConfig(ss.str());
}

// Oracle and family outlive the builder passed to deltaGrowthScan.
struct Setup {
  RunConfig config;
  GroupOracle oracle;
  PeripheralFamily family;

  explicit Setup(const std::string& name)
      : config(preset(name)), oracle(parseFamily(config.family)), family(buildFamily(oracle, config.peripherals)) {}

  Space space(int r) const {
    return buildSpace(oracle, family, config.space, r, config.depth ? *config.depth : -1, config.vertexCap);
  }
  DeltaScan deltaScan() const {
    return deltaGrowthScan([&](int r) { return space(r); }, config.radii, policyFor(config), marginFor(config),
                           config.slim);
  }
};

std::string unitSeries(const DeltaScan& s) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < s.reports.size(); ++i) os << (i ? "," : "") << s.reports[i].fourPointUnits();
  os << ']';
  return os.str();
}

template <class T>
std::string list(const std::vector<T>& xs) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
  os << ']';
  return os.str();
}

Outcome ac1() {
  Outcome o;
  Setup s("ac1_free_delta");
  o.require(s.config.radii == std::vector<int>{2, 3, 4, 5}, "radii 2..5");
  DeltaScan scan = s.deltaScan();
  for (const DeltaReport& r : scan.reports) {
    o.require(r.fourPointX2 == 0, "delta = 0 at R=" + std::to_string(r.radius));
    if (r.radius <= 3) o.require(r.exhaustive, "exhaustive at R=" + std::to_string(r.radius));
    else o.require(!r.exhaustive && r.samples == 100000, "1e5 samples at R=" + std::to_string(r.radius));
  }
  o.note("four-point delta " + unitSeries(scan));
  return o;
}

Outcome ac2() {
  Outcome o;
  Setup s("ac2_z2_delta");
  DeltaScan scan = s.deltaScan();
  for (const auto& r : scan.reports) o.require(r.exhaustive, "exhaustive");
  o.note("four-point delta " + unitSeries(scan));
  o.require(scan.fourPointVerdict == Verdict::Growing, "strictly increasing");
  return o;
}

Outcome ac3() {
  Outcome o;
  Setup s("ac3_z2_rel_a");
  DeltaScan scan = s.deltaScan();
  o.note("coned delta " + unitSeries(scan) + " " + verdictName(scan.fourPointVerdict));
  o.require(scan.fourPointVerdict == Verdict::Bounded, "delta verdict bounded");

  auto [num, den] = s.config.lambdas.front();
  BcpScan bcp = bcpScan(s.oracle, s.family, num, den, s.config.radii, s.config.budget);
  auto json = bcpScanJson(bcp, s.oracle.alphabet());
  std::vector<double> seps;
  for (std::size_t i = 0; i < bcp.reports.size(); ++i) {
    const BcpReport& r = bcp.reports[i];
    seps.push_back(r.case1 / 2.0);
    o.require(r.case1 >= 2 * (r.radius - 1), "case-1 separation >= R-1 at R=" + std::to_string(r.radius));
    o.require(!json["reports"][i]["case1_witness"].is_null(), "witness serialized");
  }
  o.note("bcp case-1 separation " + list(seps) + " " + bcpVerdictName(bcp.verdict));
  o.require(bcp.verdict == BcpVerdict::ViolationWitnessed, "bcp violation witnessed");
  return o;
}

Outcome ac4() {
  Outcome o;
  Setup free("ac4_cusped_free");
  o.require(!free.config.depth, "default depth");
  for (int r : free.config.radii) o.require(free.space(r).depth == defaultDepth(r), "depth ceil(log2 R)+1");
  DeltaScan fs = free.deltaScan();
  o.note("cusped F2 " + unitSeries(fs) + " " + verdictName(fs.fourPointVerdict));
  o.require(fs.fourPointVerdict == Verdict::Bounded, "cusped F2 bounded");

  Setup cz("ac4_cusped_z2");
  DeltaScan cs = cz.deltaScan();
  o.note("cusped Z2 " + unitSeries(cs) + " " + verdictName(cs.fourPointVerdict));
  o.require(cs.fourPointVerdict == Verdict::Bounded, "cusped Z2 bounded");

  Setup pz("ac4_plain_z2");
  DeltaScan ps = pz.deltaScan();
  o.note("plain Z2 " + unitSeries(ps) + " " + verdictName(ps.fourPointVerdict));
  o.require(ps.fourPointVerdict == Verdict::Growing, "plain Z2 growing");
  return o;
}

Outcome ac5() {
  Outcome o;
  const int depth = 4;
  for (int d : {2, 4, 8, 16}) {
    GraphBuilder b;
    for (int i = 0; i <= d; ++i) b.addVertex(GroupVertex{});
    for (int i = 0; i < d; ++i) b.addEdge(i, i + 1, kUnitWeight);
    HoroballGraph h = buildHoroball(std::move(b).finalize(), depth);

    // Plain BFS over hop counts.
    std::vector<int> hops(h.graph.vertexCount(), -1);
    std::queue<VertexId> q;
    hops[static_cast<std::size_t>(h.vertex(0, 0))] = 0;
    q.push(h.vertex(0, 0));
    while (!q.empty()) {
      VertexId u = q.front();
      q.pop();
      for (auto nb : h.graph.neighbors(u)) {
        if (hops[static_cast<std::size_t>(nb.vertex)] < 0) {
          hops[static_cast<std::size_t>(nb.vertex)] = hops[static_cast<std::size_t>(u)] + 1;
          q.push(nb.vertex);
        }
      }
    }
    int formula = INT_MAX;
    for (int k = 0; k <= depth; ++k) formula = std::min(formula, 2 * k + (d + (1 << k) - 1) / (1 << k));
    const int bfs = hops[static_cast<std::size_t>(h.vertex(d, 0))];
    const int lib = distancesFrom(h.graph, h.vertex(0, 0))[static_cast<std::size_t>(h.vertex(d, 0))];
    o.require(bfs == formula && lib == 2 * formula, "d=" + std::to_string(d));
    o.note("d=" + std::to_string(d) + ": " + std::to_string(formula));
  }
  return o;
}

std::vector<std::uint64_t> coneTotals(const Setup& s) {
  std::vector<std::uint64_t> totals;
  const std::string label = s.config.finenessPeripheral.empty() ? s.config.peripherals.front().label
                                                                : s.config.finenessPeripheral;
  for (int r : s.config.radii) {
    Space space = s.space(r);
    VertexId cone = -1;
    for (std::size_t v = 0; v < space.graph.vertexCount(); ++v) {
      const auto* c = std::get_if<ConeVertex>(&space.graph.tag(static_cast<VertexId>(v)));
      if (c && c->peripheral == label && c->key.empty()) cone = static_cast<VertexId>(v);
    }
    if (cone < 0) throw InputError("no identity cone");
    std::vector<std::pair<VertexId, VertexId>> edge{{0, cone}};
    totals.push_back(finenessProfile(space.graph, s.config.circuitLength, edge).total(0, cone));
  }
  return totals;
}

Outcome ac6() {
  Outcome o;
  Setup z("ac6_fineness_z2");
  Setup f("ac6_fineness_free");
  o.require(z.config.circuitLength == 6 && f.config.circuitLength == 6, "n = 6");
  auto zt = coneTotals(z);
  auto ft = coneTotals(f);
  o.note("Z2/<a> " + list(zt) + ", F2/<[a,b]> " + list(ft));
  o.require(trendName(zt) == "increasing", "Z2 counts strictly increase");
  o.require(trendName(ft) == "constant", "F2 counts constant");
  return o;
}

Outcome ac7() {
  Outcome o;
  Setup f("ac7_free_boundary");
  const int r = f.config.boundaryRadius.value_or(f.config.radii.back());
  Space ball = f.space(r);
  BoundarySample s = sampleBoundary(ball, defaultEpsilon(), f.oracle.alphabet());
  std::vector<std::size_t> counts;
  for (int k = 1; k <= 3; ++k) counts.push_back(clusterCount(s, k));
  o.note("F2 clusters " + list(counts));
  o.require(r == 4 && counts == std::vector<std::size_t>{4, 12, 36}, "cluster counts 4,12,36");

  Setup c("ac7_cusped_boundary");
  Space cusped = c.space(c.config.boundaryRadius.value_or(c.config.radii.back()));
  BoundarySample cs = sampleBoundary(cusped, defaultEpsilon(), c.oracle.alphabet());
  auto k = calibratedThreshold(cs);
  o.require(k.has_value(), "calibrated threshold");
  if (k) {
    auto adj = clusterAdjacency(cusped, c.family, cs, *k);
    o.note("cusped threshold " + std::to_string(*k) + ", " + std::to_string(adj.size()) + " clusters");
    o.require(isSingleCycle(adj), "cusped adjacency is a single cycle");
  }
  return o;
}

Outcome ac8() {
  Outcome o;
  // Words: normal-form laws on 1e4 seeded cases per family.
  std::mt19937 rng(8);
  std::size_t cases = 0;
  for (const char* fam : {"free(2)", "abelian(2)", "surface(2)"}) {
    GroupOracle g(parseFamily(fam));
    std::uniform_int_distribution<int> letter(0, static_cast<int>(g.alphabet().letterCount()) - 1);
    auto word = [&] {
      Word w;
      for (int i = static_cast<int>(rng() % 16); i > 0; --i) w.letters.push_back(static_cast<Letter>(letter(rng)));
      return w;
    };
    bool ok = true;
    for (int t = 0; t < 10000; ++t, ++cases) {
      Word u = word(), v = word(), w = word();
      Word nu = g.normalize(u);
      ok = ok && g.normalize(nu) == nu && g.isIdentity(g.multiply(u, g.invert(u))) &&
           g.multiply(g.multiply(u, v), w) == g.multiply(u, g.multiply(v, w)) && g.multiply(u, Word{}) == nu;
    }
    o.require(ok, std::string("word laws for ") + fam);
  }
  o.note(std::to_string(cases) + " word cases");

  // Graphs: triangle inequality and geodesic validity.
  std::size_t triples = 0;
  for (const char* name : {"ac3_z2_rel_a", "ac4_cusped_free", "ac7_free_boundary"}) {
    Setup s(name);
    Space space = s.space(3);
    DistanceMatrix d = allPairs(space.graph);
    const auto n = static_cast<VertexId>(d.size());
    bool ok = true;
    for (VertexId x = 0; x < n; ++x) {
      for (VertexId y = 0; y < n; ++y) {
        ok = ok && d(x, y) == d(y, x) && (d(x, y) == 0) == (x == y);
        for (VertexId z = 0; z < n; ++z, ++triples) ok = ok && d(x, z) <= d(x, y) + d(y, z);
      }
      GeodesicPath p = extractGeodesic(space.graph, x, (x * 7 + 3) % n);
      ok = ok && p.weight == d(x, (x * 7 + 3) % n) && pathWeight(space.graph, p.vertices) == p.weight;
    }
    o.require(ok, std::string("metric invariants in ") + name);
  }
  o.note(std::to_string(triples) + " triangle checks");

  // bcp: every enumerated path passes the independent subpath checker.
  {
    GroupOracle z2(Family::abelian(2));
    auto [ball, index] = buildBall(z2, 3);
    DistanceCache cache(ball);
    std::size_t paths = 0;
    bool ok = true;
    for (auto [num, den] : {std::pair{1, 1}, std::pair{3, 2}, std::pair{2, 1}}) {
      for (VertexId v = 0; v < static_cast<VertexId>(ball.vertexCount()); ++v) {
        const int dv = cache(0, v);
        QuasiParams qp{num, den, std::max(1, (num * dv + 2 * den - 1) / (2 * den))};
        for (const Path& p : enumerateQuasigeodesics(cache, 0, v, qp)) {
          ok = ok && isQuasigeodesic(ball, p, qp);
          ++paths;
        }
      }
    }
    o.require(ok, "bcp post-hoc verification");
    o.note(std::to_string(paths) + " quasigeodesics verified");
  }

  // Determinism: two runs of one preset agree byte for byte.
  {
    RunConfig c = preset("ac3_z2_rel_a");
    c.radii = {2, 3, 4};
    fs::path a = fs::temp_directory_path() / "relhyp-acceptance-a";
    fs::path b = fs::temp_directory_path() / "relhyp-acceptance-b";
    fs::remove_all(a);
    fs::remove_all(b);
    RunResult ra = runPipeline(c, a), rb = runPipeline(c, b);
    bool same = ra.files.size() == rb.files.size() && !ra.files.empty();
    for (std::size_t i = 0; same && i < ra.files.size(); ++i) same = ra.files[i].sha256 == rb.files[i].sha256;
    o.require(same, "two identical runs byte-identical");
    fs::remove_all(a);
    fs::remove_all(b);
  }
  return o;
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"AC1", 30, "free group balls have four-point delta 0", ac1},
      {"AC2", 60, "Z2 four-point delta strictly increases over R = 2..5", ac2},
      {"AC3", 60, "Z2 rel <a>: coned delta bounded, bcp violated", ac3},
      {"AC4", 120, "cusped spaces bounded, plain Z2 growing", ac4},
      {"AC5", 5, "horoball distance formula", ac5},
      {"AC6", 120, "fineness contrast", ac6},
      {"AC7", 60, "boundary branching and circle signal", ac7},
      {"AC8", 60, "invariant suites", ac8},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> wanted;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--presets" && i + 1 < argc) {
      presetDir = argv[++i];
    } else {
      wanted.push_back(arg);
    }
  }
  int failed = 0;
  for (const Criterion& c : criteria()) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.name) == wanted.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note(std::string("error: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= c.limitSeconds) o.require(false, "runtime limit");
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs/%.0fs", secs, c.limitSeconds);
    std::cout << c.name << ' ' << (o.pass ? "PASS" : "FAIL") << ' ' << timing << "  " << c.title << ": " << o.detail
              << std::endl;
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
