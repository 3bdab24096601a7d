#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "relhyp/errors.hpp"
#include "relhyp/pipeline.hpp"

using namespace relhyp;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("relhyp-test-" + name);
  fs::remove_all(p);
  return p;
}

const fs::path kGolden = fs::path(RELHYP_SOURCE_DIR) / "tests" / "golden";

}  // namespace

TEST_CASE("sha256Hex") {
  CHECK(sha256Hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256Hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("outputs match the golden files") {
  RunConfig c = parseConfig(slurp(kGolden / "small.cfg"));
  fs::path dir = scratch("golden");
  RunResult r = runPipeline(c, dir);
  CHECK(r.failures.empty());
  CHECK(r.exitCode() == 0);
  const bool update = std::getenv("RELHYP_UPDATE_GOLDEN") != nullptr;
  std::size_t compared = 0;
  for (const ManifestEntry& f : r.files) {
    fs::path golden = kGolden / "small" / f.path;
    if (update) fs::copy_file(dir / f.path, golden, fs::copy_options::overwrite_existing);
    INFO(f.path);
    REQUIRE(fs::exists(golden));
    CHECK(slurp(dir / f.path) == slurp(golden));
    ++compared;
  }
  CHECK(compared == 18);
  fs::remove_all(dir);
}

TEST_CASE("identical runs are byte-identical apart from the timestamp") {
  RunConfig c = parseConfig(slurp(kGolden / "small.cfg"));
  c.bcp = true;
  c.lambdas = {{1, 1}};
  c.peripherals.clear();
  c.peripherals.push_back(parsePeripheralDecl("A", "cyclic:a"));
  c.policy = "sampled";
  c.samples = 2000;
  c.seed = 17;
  fs::path a = scratch("det-a"), b = scratch("det-b");
  RunResult ra = runPipeline(c, a);
  RunResult rb = runPipeline(c, b);
  REQUIRE(ra.files.size() == rb.files.size());
  for (std::size_t i = 0; i < ra.files.size(); ++i) {
    CHECK(ra.files[i].path == rb.files[i].path);
    CHECK(ra.files[i].sha256 == rb.files[i].sha256);
    CHECK(slurp(a / ra.files[i].path) == slurp(b / rb.files[i].path));
  }
  auto ma = nlohmann::json::parse(slurp(ra.manifest));
  auto mb = nlohmann::json::parse(slurp(rb.manifest));
  ma.erase("timestamp");
  mb.erase("timestamp");
  CHECK(ma == mb);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("manifest lists every file with its digest and the config") {
  RunConfig c = parseConfig("[group]\nfamily = abelian(2)\n[space]\nradii = 2,3,4\n[delta]\n");
  fs::path dir = scratch("manifest");
  RunResult r = runPipeline(c, dir);
  auto m = nlohmann::json::parse(slurp(r.manifest));
  CHECK(m["config"] == formatConfig(c));
  CHECK(m["partial"] == false);
  CHECK(m["files"].size() == r.files.size());
  std::size_t listed = 0;
  for (const auto& f : m["files"]) {
    std::string body = slurp(dir / f["path"].get<std::string>());
    CHECK(f["sha256"] == sha256Hex(body));
    CHECK(f["bytes"] == body.size());
    ++listed;
  }
  std::size_t onDisk = 0;
  for (const auto& e : fs::directory_iterator(dir)) onDisk += e.path().filename() != "manifest.json";
  CHECK(listed == onDisk);
  CHECK(m["timestamp"].get<std::string>().size() == 20);
  fs::remove_all(dir);
}

TEST_CASE("stage failures are recorded and other stages still run") {
  RunConfig c = parseConfig(R"([group]
family = abelian(2)
[peripheral A]
kind = cyclic
word = a
[space]
kind = coned
radii = 2, 3, 4
[delta]
policy = exhaustive
[fineness]
length = 13
)");
  fs::path dir = scratch("failure");
  RunResult r = runPipeline(c, dir);
  REQUIRE(r.failures.size() == 1);
  CHECK(r.failures[0].stage == "fineness");
  CHECK(r.failures[0].resource);
  CHECK(r.exitCode() == 3);
  CHECK(fs::exists(dir / "delta.json"));
  auto m = nlohmann::json::parse(slurp(r.manifest));
  CHECK(m["partial"] == true);
  CHECK(m["failures"][0]["stage"] == "fineness");
  fs::remove_all(dir);
}

TEST_CASE("partial results are kept when a later radius hits a cap") {
  RunConfig c = parseConfig(R"([group]
family = abelian(2)
[peripheral A]
kind = cyclic
word = a
[space]
kind = coned
radii = 2, 3, 30
[fineness]
length = 4
[run]
vertex_cap = 500
)");
  fs::path dir = scratch("partial");
  RunResult r = runPipeline(c, dir);
  // The build stage and the fineness stage both hit the cap at R = 30.
  REQUIRE(r.failures.size() == 2);
  CHECK(r.failures[1].stage == "fineness");
  CHECK(r.failures[1].partial);
  auto f = nlohmann::json::parse(slurp(dir / "fineness.json"));
  CHECK(f["profiles"].size() == 2);
  fs::remove_all(dir);
}

TEST_CASE("report helpers") {
  CHECK(trendName({1, 2, 3}) == "increasing");
  CHECK(trendName({2, 2, 2}) == "constant");
  CHECK(trendName({2, 1, 3}) == "mixed");
  RunConfig c;
  c.space = SpaceKind::Cusped;
  CHECK(marginFor(c) == 1);
  c.margin = 0;
  CHECK(marginFor(c) == 0);
  c.space = SpaceKind::Ball;
  c.margin.reset();
  CHECK(marginFor(c) == 0);
  c.policy = "sampled";
  CHECK(policyFor(c).mode == SamplingPolicy::Mode::Sampled);
}
