#ifndef RELHYP_CONFIG_HPP
#define RELHYP_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "relhyp/space.hpp"
#include "relhyp/words.hpp"

namespace relhyp {

struct PeripheralDecl {
  std::string label;
  PeripheralKind kind = PeripheralKind::Cyclic;
  std::string word;        // cyclic
  std::size_t factor = 0;  // factor

  friend bool operator==(const PeripheralDecl&, const PeripheralDecl&) = default;
};

// Parses "cyclic:<word>", "factor:<index>" or "whole" for the given label.
PeripheralDecl parsePeripheralDecl(std::string label, std::string_view spec);
std::string formatPeripheralDecl(const PeripheralDecl& d);
PeripheralFamily buildFamily(const GroupOracle& oracle, const std::vector<PeripheralDecl>& decls);

struct RunConfig {
  std::string family = "free(2)";
  std::vector<PeripheralDecl> peripherals;

  SpaceKind space = SpaceKind::Ball;
  std::vector<int> radii{2, 3, 4};
  std::optional<int> depth;   // horoball depth; default ceil(log2 R) + 1
  std::optional<int> margin;  // inner margin; default by space kind
  std::vector<std::string> graphExports;

  bool delta = false;
  std::string policy = "auto";  // auto, exhaustive, sampled
  std::uint64_t samples = 100000;
  bool slim = true;

  bool bcp = false;
  std::vector<std::pair<int, int>> lambdas{{1, 1}, {2, 1}};
  bool largeLambda = false;
  std::uint64_t budget = 1000000;

  bool fineness = false;
  int circuitLength = 6;
  std::string finenessEdge = "cone";  // cone or identity
  std::string finenessPeripheral;     // empty: first peripheral

  bool boundary = false;
  double epsilon = 0;  // 0 means ln 2
  std::optional<int> boundaryRadius;  // default: largest radius

  std::uint64_t seed = 1;
  std::size_t vertexCap = 20000;
  std::string output = "relhyp-out";

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Line-oriented grammar: "[section]" or "[peripheral <label>]" headers,
// "key = value" entries, "#" comments. Unknown sections or keys, syntax
// errors (with line number) and semantic errors (with key path) throw
// InputError.
RunConfig parseConfig(std::string_view text);
// Canonical text; parseConfig(formatConfig(c)) == c.
std::string formatConfig(const RunConfig& config);

std::pair<int, int> parseLambda(std::string_view text);
std::string formatLambda(std::pair<int, int> lambda);
std::vector<int> parseRadii(std::string_view text);

}  // namespace relhyp

#endif  // RELHYP_CONFIG_HPP
