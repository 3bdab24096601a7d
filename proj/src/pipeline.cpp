#include "relhyp/pipeline.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>

#include "relhyp/bcp.hpp"
#include "relhyp/boundary.hpp"
#include "relhyp/coning.hpp"
#include "relhyp/errors.hpp"

namespace relhyp {

std::string sha256Hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256: digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

int RunResult::exitCode() const {
  if (failures.empty()) return 0;
  for (const auto& f : failures)
    if (f.resource) return 3;
  return 2;
}

SamplingPolicy policyFor(const RunConfig& c) {
  if (c.policy == "exhaustive") return SamplingPolicy::exhaustive();
  if (c.policy == "sampled") return SamplingPolicy::sampled(c.samples, c.seed);
  return SamplingPolicy::automatic(c.samples, c.seed);
}

int marginFor(const RunConfig& c) { return c.margin ? *c.margin : defaultMargin(c.space); }

nlohmann::json deltaScanJson(const DeltaScan& scan) {
  nlohmann::json reports = nlohmann::json::array();
  for (const DeltaReport& r : scan.reports) {
    reports.push_back({{"radius", r.radius},
                       {"vertex_count", r.vertexCount},
                       {"point_count", r.pointCount},
                       {"four_point_x2", r.fourPointX2},
                       {"four_point_units", r.fourPointUnits()},
                       {"slim_scaled", scan.withSlim ? nlohmann::json(r.slim) : nlohmann::json()},
                       {"slim_units", scan.withSlim ? nlohmann::json(r.slimUnits()) : nlohmann::json()},
                       {"method", r.exhaustive ? "exhaustive" : "sampled"},
                       {"samples", r.samples},
                       {"seed", r.seed},
                       {"inner_margin", r.innerMargin}});
  }
  return {{"reports", reports},
          {"four_point_verdict", verdictName(scan.fourPointVerdict)},
          {"slim_verdict", scan.withSlim ? nlohmann::json(verdictName(scan.slimVerdict)) : nlohmann::json()},
          {"note", "verdicts are heuristics from finite balls, not proofs"}};
}

std::string deltaScanCsv(const DeltaScan& scan) {
  std::ostringstream os;
  os << "radius,vertices,points,four_point_x2,slim_scaled,method,samples,seed,margin\n";
  for (const DeltaReport& r : scan.reports) {
    os << r.radius << ',' << r.vertexCount << ',' << r.pointCount << ',' << r.fourPointX2 << ','
       << (scan.withSlim ? std::to_string(r.slim) : "") << ','
       << (r.exhaustive ? "exhaustive" : "sampled") << ',' << r.samples << ',' << r.seed << ',' << r.innerMargin
       << '\n';
  }
  return os.str();
}

std::string deltaScanSvg(const DeltaScan& scan) {
  const double w = 400, h = 240, pad = 30;
  double maxR = 1, maxD = 1;
  for (const auto& r : scan.reports) {
    maxR = std::max(maxR, static_cast<double>(r.radius));
    maxD = std::max({maxD, r.fourPointUnits(), r.slimUnits()});
  }
  auto px = [&](double x) { return pad + x / maxR * (w - 2 * pad); };
  auto py = [&](double y) { return h - pad - y / maxD * (h - 2 * pad); };
  auto fmt = [](double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return std::string(buf);
  };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"240\">\n";
  os << "<path d=\"M" << pad << ' ' << h - pad << " H" << w - pad << " M" << pad << ' ' << h - pad << " V" << pad
     << "\" stroke=\"gray\" fill=\"none\"/>\n";
  for (int series = 0; series < (scan.withSlim ? 2 : 1); ++series) {
    os << "<polyline fill=\"none\" stroke=\"" << (series == 0 ? "black" : "steelblue") << "\" points=\"";
    for (std::size_t i = 0; i < scan.reports.size(); ++i) {
      const auto& r = scan.reports[i];
      os << (i ? " " : "") << fmt(px(r.radius)) << ',' << fmt(py(series == 0 ? r.fourPointUnits() : r.slimUnits()));
    }
    os << "\"/>\n";
  }
  os << "<text x=\"" << pad << "\" y=\"16\" font-size=\"11\">four-point (black)"
     << (scan.withSlim ? ", slim (blue)" : "") << ", word-metric units</text>\n";
  os << "</svg>\n";
  return os.str();
}

std::string trendName(const std::vector<std::uint64_t>& values) {
  bool increasing = values.size() >= 2;
  bool constant = true;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] <= values[i - 1]) increasing = false;
    if (values[i] != values[i - 1]) constant = false;
  }
  return increasing ? "increasing" : constant ? "constant" : "mixed";
}

namespace {

std::string timestampUtc() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class OutputDir {
 public:
  explicit OutputDir(std::filesystem::path root) : root_(std::move(root)) {
    std::filesystem::create_directories(root_);
  }

  void write(const std::string& name, const std::string& data) {
    std::ofstream out(root_ / name, std::ios::binary);
    if (!out) throw InputError("cannot write " + (root_ / name).string());
    out << data;
    files.push_back({name, sha256Hex(data), data.size()});
  }

  const std::filesystem::path& root() const noexcept { return root_; }
  std::vector<ManifestEntry> files;

 private:
  std::filesystem::path root_;
};

VertexId findCone(const MetricGraph& g, const std::string& label) {
  for (std::size_t v = 0; v < g.vertexCount(); ++v) {
    const auto* c = std::get_if<ConeVertex>(&g.tag(static_cast<VertexId>(v)));
    if (c && c->peripheral == label && c->key.empty()) return static_cast<VertexId>(v);
  }
  throw InputError("fineness: no cone vertex for the identity coset of " + label);
}

}  // namespace

RunResult runPipeline(const RunConfig& c, const std::filesystem::path& outputDir) {
  RunResult result;
  OutputDir out(outputDir);
  const GroupOracle oracle(parseFamily(c.family));
  const PeripheralFamily family = buildFamily(oracle, c.peripherals);

  auto stage = [&](const std::string& name, auto&& body) {
    try {
      body();
    } catch (const ResourceError& e) {
      result.failures.push_back({name, e.what(), true, e.partial()});
    } catch (const InputError& e) {
      result.failures.push_back({name, e.what(), false, false});
    }
  };

  out.write("config.cfg", formatConfig(c));

  std::map<int, Space> spaces;
  auto spaceAt = [&](int r) -> const Space& {
    auto it = spaces.find(r);
    if (it == spaces.end()) {
      it = spaces.emplace(r, buildSpace(oracle, family, c.space, r, c.depth ? *c.depth : -1, c.vertexCap)).first;
    }
    return it->second;
  };

  stage("build", [&] {
    for (int r : c.radii) {
      const Space& s = spaceAt(r);
      for (const std::string& f : c.graphExports) {
        out.write("space_R" + std::to_string(r) + "." + f, exportGraph(s.graph, parseGraphFormat(f), oracle.alphabet()));
      }
    }
  });

  if (c.delta) {
    stage("delta", [&] {
      DeltaScan scan = deltaGrowthScan([&](int r) { return spaceAt(r); }, c.radii, policyFor(c), marginFor(c), c.slim);
      out.write("delta.json", deltaScanJson(scan).dump(1) + "\n");
      out.write("delta.csv", deltaScanCsv(scan));
      out.write("delta.svg", deltaScanSvg(scan));
    });
  }

  if (c.bcp) {
    stage("bcp", [&] {
      // Completed lambdas are kept when a later one hits the budget.
      nlohmann::json all = nlohmann::json::array();
      try {
        for (auto [num, den] : c.lambdas) {
          BcpScan scan = bcpScan(oracle, family, num, den, c.radii, c.budget);
          auto j = bcpScanJson(scan, oracle.alphabet());
          j["lambda"] = formatLambda({num, den});
          all.push_back(j);
        }
      } catch (const ResourceError& e) {
        if (!all.empty()) out.write("bcp.json", all.dump(1) + "\n");
        throw ResourceError(e.what(), !all.empty());
      }
      out.write("bcp.json", all.dump(1) + "\n");
    });
  }

  if (c.fineness) {
    stage("fineness", [&] {
      nlohmann::json rows = nlohmann::json::array();
      std::ostringstream csv;
      csv << "radius,u,v,length_scaled,count\n";
      std::map<std::string, std::vector<std::uint64_t>> series;
      auto flush = [&] {
        nlohmann::json trends = nlohmann::json::object();
        for (const auto& [name, values] : series) trends[name] = {{"totals", values}, {"trend", trendName(values)}};
        nlohmann::json doc{{"max_length_units", c.circuitLength}, {"profiles", rows}, {"trends", trends}};
        out.write("fineness.json", doc.dump(1) + "\n");
        out.write("fineness.csv", csv.str());
      };
      // Completed radii are kept when a larger one hits a cap.
      try {
        for (int r : c.radii) {
          const Space& s = spaceAt(r);
          std::vector<std::pair<VertexId, VertexId>> edges;
          if (c.finenessEdge == "cone") {
            const std::string label = c.finenessPeripheral.empty() ? c.peripherals.front().label : c.finenessPeripheral;
            edges.emplace_back(0, findCone(s.graph, label));
          } else {
            for (const Neighbor& nb : s.graph.neighbors(0)) edges.emplace_back(0, nb.vertex);
          }
          FinenessProfile p = finenessProfile(s.graph, c.circuitLength, edges);
          for (auto [u, v] : edges) {
            const auto& counts = p.counts.at(std::minmax(u, v));
            const std::string name = vertexLabel(s.graph.tag(u), oracle.alphabet()) + " -- " +
                                     vertexLabel(s.graph.tag(v), oracle.alphabet());
            series[name].push_back(counts.back());
            rows.push_back({{"radius", r}, {"edge", name}, {"u", u}, {"v", v}, {"cumulative_counts", counts}});
            for (std::size_t len = 0; len < counts.size(); ++len) {
              csv << r << ',' << u << ',' << v << ',' << len + 1 << ',' << counts[len] << '\n';
            }
          }
        }
      } catch (const ResourceError& e) {
        if (!rows.empty()) flush();
        throw ResourceError(e.what(), !rows.empty());
      }
      flush();
    });
  }

  if (c.boundary) {
    stage("boundary", [&] {
      const int r = c.boundaryRadius ? *c.boundaryRadius : c.radii.back();
      const Space& s = spaceAt(r);
      BoundarySample sample = sampleBoundary(s, c.epsilon > 0 ? c.epsilon : defaultEpsilon(), oracle.alphabet());
      out.write("boundary.csv", exportBoundary(sample, BoundaryFormat::Csv));
      out.write("boundary.json", exportBoundary(sample, BoundaryFormat::Json));
      out.write("boundary_heatmap.svg", exportBoundary(sample, BoundaryFormat::SvgHeatmap));
      out.write("boundary_dendrogram.svg", exportBoundary(sample, BoundaryFormat::SvgDendrogram));

      nlohmann::json counts = nlohmann::json::array();
      for (int k = 1; k <= r; ++k) counts.push_back({{"k", k}, {"clusters", clusterCount(sample, k)}});
      nlohmann::json summary{{"radius", r}, {"sphere_size", sample.size()}, {"cluster_counts", counts}};
      if (auto k = calibratedThreshold(sample)) {
        auto adj = clusterAdjacency(s, family, sample, *k);
        summary["calibrated_threshold"] = *k;
        summary["cluster_adjacency"] = adj;
        summary["single_cycle"] = isSingleCycle(adj);
      } else {
        summary["calibrated_threshold"] = nullptr;
        summary["single_cycle"] = false;
      }
      summary["note"] = "cycle detection is combinatorial, not a topological certificate";
      out.write("boundary_summary.json", summary.dump(1) + "\n");
    });
  }

  nlohmann::json files = nlohmann::json::array();
  for (const auto& f : out.files) files.push_back({{"path", f.path}, {"sha256", f.sha256}, {"bytes", f.bytes}});
  nlohmann::json failures = nlohmann::json::array();
  bool partial = false;
  for (const auto& f : result.failures) {
    failures.push_back({{"stage", f.stage}, {"error", f.message}, {"resource", f.resource}, {"partial", f.partial}});
    partial = true;
  }
  nlohmann::json manifest{{"tool", "relhyp"},
                          {"timestamp", timestampUtc()},
                          {"config", formatConfig(c)},
                          {"files", files},
                          {"failures", failures},
                          {"partial", partial}};
  result.files = out.files;
  result.manifest = out.root() / "manifest.json";
  std::ofstream(result.manifest, std::ios::binary) << manifest.dump(1) << "\n";
  return result;
}

}  // namespace relhyp
