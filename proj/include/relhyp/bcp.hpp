#ifndef RELHYP_BCP_HPP
#define RELHYP_BCP_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "relhyp/cayley.hpp"
#include "relhyp/coning.hpp"
#include "relhyp/graph.hpp"

namespace relhyp {

using Path = std::vector<VertexId>;

// (lambda, 0)-quasigeodesic parameters; lambda = num / den >= 1 and the
// path length cap L is in word-metric units.
struct QuasiParams {
  int lambdaNum = 1;
  int lambdaDen = 1;
  int maxLength = 1;

  void validate() const;
  std::string lambdaText() const;
};

constexpr std::uint64_t kDefaultBudget = 1000000;

// Every path u -> v of word-metric length <= L whose subpaths q all satisfy
// length(q) <= lambda * d(ends of q). Output is in lexicographic order of
// vertex indices. Throws ResourceError (partial) when the expansion budget
// runs out and InputError when lambda * d(u,v) > L.
std::vector<Path> enumerateQuasigeodesics(const MetricGraph& ball, VertexId u, VertexId v, const QuasiParams& qp,
                                          std::uint64_t budget = kDefaultBudget);
std::vector<Path> enumerateQuasigeodesics(DistanceCache& ball, VertexId u, VertexId v, const QuasiParams& qp,
                                          std::uint64_t budget = kDefaultBudget);

// Walks all O(L^2) subpaths; independent of the enumerator's pruning.
bool isQuasigeodesic(const MetricGraph& ball, std::span<const VertexId> path, const QuasiParams& qp);

struct BcpWitness {
  Path first;
  Path second;
  std::vector<Word> firstWords;
  std::vector<Word> secondWords;
  std::string peripheral;
  Word key;
  int separation = 0;  // scaled
};

struct BcpReport {
  int radius = 0;
  std::string lambda = "1";
  std::size_t pairs = 0;
  int case1 = 0;       // scaled enter-exit distance, other path misses the coset
  int case2Enter = 0;  // scaled distance between entering vertices
  int case2Exit = 0;
  std::optional<BcpWitness> case1Witness;
  std::optional<BcpWitness> enterWitness;
  std::optional<BcpWitness> exitWitness;

  int maxSeparation() const noexcept { return std::max({case1, case2Enter, case2Exit}); }
};

// Pairs of base-ball paths sharing the initial vertex with terminal
// vertices at most one word-metric unit apart. Throws InputError when a pair
// breaks these conditions or a hat-path backtracks.
BcpReport bcpCheck(const ConedGraph& coned, std::span<const std::pair<Path, Path>> pairs);

enum class BcpVerdict { BoundednessConsistent, ViolationWitnessed };
std::string bcpVerdictName(BcpVerdict v);

struct BcpScan {
  std::vector<BcpReport> reports;
  BcpVerdict verdict = BcpVerdict::BoundednessConsistent;
};

// Rejects families where two peripherals both contain generator letters:
// their cosets can meet along a path, so one vertex would exit one coset
// and enter another.
void checkBcpFamily(const PeripheralFamily& family);

// Per radius: all quasigeodesics from the identity to every ball vertex,
// paired over terminal vertices within one word-metric unit; backtracking paths
// are dropped. Violation-witnessed needs the maximum separation to grow by
// at least one word-metric unit at every radius step.
BcpScan bcpScan(const GroupOracle& oracle, const PeripheralFamily& family, int lambdaNum, int lambdaDen,
                std::span<const int> radii, std::uint64_t budget = kDefaultBudget);

nlohmann::json bcpScanJson(const BcpScan& scan, const Alphabet& alphabet);

}  // namespace relhyp

#endif  // RELHYP_BCP_HPP
