#ifndef RELHYP_PIPELINE_HPP
#define RELHYP_PIPELINE_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "relhyp/analysis.hpp"
#include "relhyp/config.hpp"

namespace relhyp {

std::string sha256Hex(std::string_view data);

struct ManifestEntry {
  std::string path;  // relative to the output directory
  std::string sha256;
  std::size_t bytes = 0;
};

struct StageFailure {
  std::string stage;
  std::string message;
  bool resource = false;  // ResourceError rather than InputError
  bool partial = false;
};

struct RunResult {
  std::vector<ManifestEntry> files;
  std::vector<StageFailure> failures;
  std::filesystem::path manifest;

  // 0 clean, 3 when any stage hit a resource cap, otherwise 2.
  int exitCode() const;
};

// Builds every radius, runs the enabled analyses and writes their outputs
// plus manifest.json into outputDir. Stage failures are recorded and the
// remaining stages still run; outputs other than the manifest are
// byte-identical across runs of the same config.
RunResult runPipeline(const RunConfig& config, const std::filesystem::path& outputDir);

SamplingPolicy policyFor(const RunConfig& config);
int marginFor(const RunConfig& config);

nlohmann::json deltaScanJson(const DeltaScan& scan);
std::string deltaScanCsv(const DeltaScan& scan);
// Radius against delta in word-metric units, one polyline per series.
std::string deltaScanSvg(const DeltaScan& scan);

// "increasing", "constant" or "mixed".
std::string trendName(const std::vector<std::uint64_t>& values);

}  // namespace relhyp

#endif  // RELHYP_PIPELINE_HPP
