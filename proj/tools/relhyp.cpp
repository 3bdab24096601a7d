// relhyp: command-line front end for the ball / coned / cusped pipelines.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "relhyp/bcp.hpp"
#include "relhyp/boundary.hpp"
#include "relhyp/coning.hpp"
#include "relhyp/cusping.hpp"
#include "relhyp/errors.hpp"
#include "relhyp/pipeline.hpp"

using namespace relhyp;

namespace {

struct Common {
  std::string family = "free(2)";
  std::vector<std::string> peripherals;
  std::string space = "ball";
  std::string radii = "2,3,4";
  int radius = 2;
  int depth = -1;
  std::string exportFormat;
  std::string out;
  std::uint64_t seed = 1;
  std::size_t vertexCap = kDefaultVertexCap;
};

std::vector<PeripheralDecl> peripheralDecls(const Common& o) {
  std::vector<PeripheralDecl> out;
  for (const std::string& p : o.peripherals) {
    auto eq = p.find('=');
    if (eq == std::string::npos) throw InputError("--peripheral expects LABEL=cyclic:WORD, LABEL=factor:I or LABEL=whole");
    out.push_back(parsePeripheralDecl(p.substr(0, eq), p.substr(eq + 1)));
  }
  return out;
}

void emit(const Common& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw InputError("cannot write " + o.out);
  f << text;
}

void addGroupOptions(CLI::App* cmd, Common& o, bool withPeripherals) {
  cmd->add_option("--family", o.family, "group family, e.g. free(2), abelian(2), surface(2)");
  if (withPeripherals) {
    cmd->add_option("--peripheral", o.peripherals, "LABEL=cyclic:WORD | LABEL=factor:I | LABEL=whole (repeatable)");
  }
  cmd->add_option("--vertex-cap", o.vertexCap, "vertex cap for balls and spaces");
  cmd->add_option("-o,--out", o.out, "write to this file instead of stdout");
}

struct Ctx {
  GroupOracle oracle;
  PeripheralFamily family;
};

Ctx context(const Common& o) {
  GroupOracle oracle(parseFamily(o.family));
  PeripheralFamily family = buildFamily(oracle, peripheralDecls(o));
  return {std::move(oracle), std::move(family)};
}

std::string graphSummary(const MetricGraph& g) {
  std::size_t cones = 0, horo = 0;
  for (const auto& t : g.tags()) {
    cones += std::holds_alternative<ConeVertex>(t);
    horo += std::holds_alternative<HoroVertex>(t);
  }
  std::ostringstream os;
  os << "vertices " << g.vertexCount() << " (cone " << cones << ", horoball " << horo << "), edges " << g.edgeCount()
     << "\n";
  return os.str();
}

void emitGraph(const Common& o, const MetricGraph& g, const Alphabet& alphabet) {
  if (o.exportFormat.empty()) {
    emit(o, graphSummary(g));
  } else {
    emit(o, exportGraph(g, parseGraphFormat(o.exportFormat), alphabet));
  }
}

int run(int argc, char** argv) {
  CLI::App app{"relhyp: finite models of relatively hyperbolic groups"};
  app.require_subcommand(1);
  Common o;

  auto* ball = app.add_subcommand("ball", "Cayley ball of radius R");
  addGroupOptions(ball, o, false);
  ball->add_option("-R,--radius", o.radius, "radius")->required();
  ball->add_option("--export", o.exportFormat, "dot | json | csv");
  ball->callback([&] {
    Ctx c = context(o);
    auto [g, index] = buildBall(c.oracle, o.radius, o.vertexCap);
    emitGraph(o, g, c.oracle.alphabet());
  });

  auto* cone = app.add_subcommand("cone", "coned-off Cayley ball");
  addGroupOptions(cone, o, true);
  cone->add_option("-R,--radius", o.radius, "radius")->required();
  cone->add_option("--export", o.exportFormat, "dot | json | csv");
  cone->callback([&] {
    Ctx c = context(o);
    auto [g, index] = buildBall(c.oracle, o.radius, o.vertexCap);
    emitGraph(o, coneOff(g, index, c.family).coned, c.oracle.alphabet());
  });

  auto* cusp = app.add_subcommand("cusp", "cusped Cayley ball");
  addGroupOptions(cusp, o, true);
  cusp->add_option("-R,--radius", o.radius, "radius")->required();
  cusp->add_option("-K,--depth", o.depth, "horoball depth (default ceil(log2 R) + 1)");
  cusp->add_option("--export", o.exportFormat, "dot | json | csv");
  cusp->callback([&] {
    Ctx c = context(o);
    if (o.depth >= 0 && o.depth < defaultDepth(o.radius)) {
      std::cerr << "warning: depth " << o.depth << " is below ceil(log2 R) + 1 = " << defaultDepth(o.radius) << "\n";
    }
    Space s = buildSpace(c.oracle, c.family, SpaceKind::Cusped, o.radius, o.depth, o.vertexCap);
    for (const auto& h : s.horoballs) {
      if (h.degenerate && h.coset.size() > 1) {
        std::cerr << "note: coset " << h.peripheral << ":" << c.oracle.format(h.key)
                  << " has no intra-coset edges; its horoball is vertical rays only\n";
      }
    }
    emitGraph(o, s.graph, c.oracle.alphabet());
  });

  std::string policy = "auto";
  std::uint64_t samples = 100000;
  int margin = -1;
  bool noSlim = false;
  auto* delta = app.add_subcommand("delta", "four-point and slim-triangle delta across radii");
  addGroupOptions(delta, o, true);
  delta->add_option("--space", o.space, "ball | coned | cusped");
  delta->add_option("--radii", o.radii, "increasing radii, e.g. 2,3,4,5");
  delta->add_option("-K,--depth", o.depth, "horoball depth for cusped spaces");
  delta->add_option("--policy", policy, "auto | exhaustive | sampled");
  delta->add_option("--samples", samples, "quadruples / triples when sampling");
  delta->add_option("--seed", o.seed, "sampling seed");
  delta->add_option("--margin", margin, "inner margin (default 0 for balls, 1 otherwise)");
  delta->add_flag("--no-slim", noSlim, "skip the slim-triangle delta");
  delta->add_option("--export", o.exportFormat, "json | csv | svg (default: table)");
  delta->callback([&] {
    Ctx c = context(o);
    RunConfig rc;
    rc.space = parseSpaceKind(o.space);
    rc.policy = policy;
    rc.samples = samples;
    rc.seed = o.seed;
    if (margin >= 0) rc.margin = margin;
    auto radii = parseRadii(o.radii);
    auto scan = deltaGrowthScan(
        [&](int r) { return buildSpace(c.oracle, c.family, rc.space, r, o.depth, o.vertexCap); }, radii, policyFor(rc),
        marginFor(rc), !noSlim);
    if (o.exportFormat == "json") {
      emit(o, deltaScanJson(scan).dump(1) + "\n");
    } else if (o.exportFormat == "csv") {
      emit(o, deltaScanCsv(scan));
    } else if (o.exportFormat == "svg") {
      emit(o, deltaScanSvg(scan));
    } else if (o.exportFormat.empty()) {
      std::ostringstream os;
      for (const auto& r : scan.reports) {
        os << "R=" << r.radius << " points=" << r.pointCount << " four-point=" << r.fourPointUnits();
        if (!noSlim) os << " slim=" << r.slimUnits();
        os << (r.exhaustive ? " exhaustive" : " sampled") << "\n";
      }
      os << "four-point verdict: " << verdictName(scan.fourPointVerdict) << "\n";
      if (!noSlim) os << "slim verdict: " << verdictName(scan.slimVerdict) << "\n";
      emit(o, os.str());
    } else {
      throw InputError("delta: unknown export format '" + o.exportFormat + "'");
    }
  });

  std::vector<std::string> lambdas{"1"};
  bool largeLambda = false;
  std::uint64_t budget = kDefaultBudget;
  auto* bcp = app.add_subcommand("bcp", "bounded coset penetration scan (JSON)");
  addGroupOptions(bcp, o, true);
  bcp->add_option("--radii", o.radii, "increasing radii");
  bcp->add_option("--lambda", lambdas, "lambda values, e.g. 1 2 3/2");
  bcp->add_flag("--allow-large-lambda", largeLambda, "permit lambda > 2");
  bcp->add_option("--budget", budget, "expansion budget per endpoint pair");
  bcp->callback([&] {
    Ctx c = context(o);
    auto radii = parseRadii(o.radii);
    nlohmann::json all = nlohmann::json::array();
    for (const std::string& text : lambdas) {
      auto l = parseLambda(text);
      if (l.first > 2 * l.second && !largeLambda) throw InputError("lambda > 2 needs --allow-large-lambda");
      auto j = bcpScanJson(bcpScan(c.oracle, c.family, l.first, l.second, radii, budget), c.oracle.alphabet());
      j["lambda"] = formatLambda(l);
      all.push_back(j);
    }
    emit(o, all.dump(1) + "\n");
  });

  int length = 6;
  std::string edge = "cone";
  auto* fine = app.add_subcommand("fineness", "circuit counts through an edge at the identity");
  addGroupOptions(fine, o, true);
  fine->add_option("--space", o.space, "ball | coned | cusped");
  fine->add_option("--radii", o.radii, "increasing radii");
  fine->add_option("-n,--length", length, "maximal circuit length in word-metric units (<= 12)");
  fine->add_option("--edge", edge, "cone (identity to its first cone) | identity (all edges at e)");
  fine->callback([&] {
    RunConfig rc;
    rc.family = o.family;
    rc.peripherals = peripheralDecls(o);
    rc.space = parseSpaceKind(o.space);
    rc.radii = parseRadii(o.radii);
    rc.fineness = true;
    rc.circuitLength = length;
    rc.finenessEdge = edge;
    rc.vertexCap = o.vertexCap;
    parseConfig(formatConfig(rc));  // validation
    auto dir = std::filesystem::temp_directory_path() / ("relhyp-fineness-" + std::to_string(::getpid()));
    auto result = runPipeline(rc, dir);
    std::ifstream in(dir / "fineness.json");
    std::stringstream text;
    text << in.rdbuf();
    std::filesystem::remove_all(dir);
    if (!result.failures.empty()) {
      const auto& f = result.failures.front();
      if (f.resource) throw ResourceError(f.message, f.partial);
      throw InputError(f.message);
    }
    emit(o, text.str());
  });

  double epsilon = defaultEpsilon();
  auto* bnd = app.add_subcommand("boundary", "visual-metric sample of the radius-R sphere");
  addGroupOptions(bnd, o, true);
  bnd->add_option("--space", o.space, "ball | coned | cusped");
  bnd->add_option("-R,--radius", o.radius, "radius")->required();
  bnd->add_option("-K,--depth", o.depth, "horoball depth for cusped spaces");
  bnd->add_option("--epsilon", epsilon, "visual parameter per word-metric unit (default ln 2)");
  bnd->add_option("--export", o.exportFormat, "csv | json | svg | svg-dendrogram (default: summary)");
  bnd->callback([&] {
    Ctx c = context(o);
    Space s = buildSpace(c.oracle, c.family, parseSpaceKind(o.space), o.radius, o.depth, o.vertexCap);
    BoundarySample sample = sampleBoundary(s, epsilon, c.oracle.alphabet());
    if (!o.exportFormat.empty()) {
      emit(o, exportBoundary(sample, parseBoundaryFormat(o.exportFormat)));
      return;
    }
    std::ostringstream os;
    os << "sphere points " << sample.size() << "\n";
    for (int k = 1; k <= o.radius; ++k) os << "clusters at k=" << k << ": " << clusterCount(sample, k) << "\n";
    if (auto k = calibratedThreshold(sample)) {
      os << "calibrated threshold " << *k << ", cluster adjacency is "
         << (isSingleCycle(clusterAdjacency(s, c.family, sample, *k)) ? "" : "not ") << "a single cycle\n";
    }
    emit(o, os.str());
  });

  std::string configPath;
  std::string outputDir;
  auto* runCmd = app.add_subcommand("run", "run a config file and write a manifest");
  runCmd->add_option("config", configPath, "config file")->required();
  runCmd->add_option("--output", outputDir, "output directory (overrides RELHYP_OUTPUT_DIR and the config)");
  int runExit = 0;
  runCmd->callback([&] {
    std::ifstream in(configPath);
    if (!in) throw InputError("cannot read " + configPath);
    std::stringstream text;
    text << in.rdbuf();
    RunConfig rc = parseConfig(text.str());
    std::filesystem::path dir = rc.output;
    if (const char* env = std::getenv("RELHYP_OUTPUT_DIR"); env && *env) dir = env;
    if (!outputDir.empty()) dir = outputDir;
    auto result = runPipeline(rc, dir);
    for (const auto& f : result.failures) {
      std::cerr << "stage " << f.stage << " failed" << (f.partial ? " (partial output kept)" : "") << ": " << f.message
                << "\n";
    }
    std::cout << "wrote " << result.files.size() << " files and " << result.manifest.string() << "\n";
    runExit = result.exitCode();
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return runExit;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ResourceError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 3;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
}
