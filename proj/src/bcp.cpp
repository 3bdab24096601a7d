#include "relhyp/bcp.hpp"

#include <map>

#include "relhyp/errors.hpp"

namespace relhyp {

void QuasiParams::validate() const {
  if (lambdaDen <= 0 || lambdaNum < lambdaDen) throw InputError("lambda must be a fraction >= 1");
  if (maxLength < 1) throw InputError("path length cap L must be >= 1");
}

std::string QuasiParams::lambdaText() const {
  return lambdaDen == 1 ? std::to_string(lambdaNum) : std::to_string(lambdaNum) + "/" + std::to_string(lambdaDen);
}

namespace {

// len and d scaled; len <= lambda * d.
bool within(const QuasiParams& qp, long long len, long long d) { return len * qp.lambdaDen <= qp.lambdaNum * d; }

Word wordAt(const MetricGraph& g, VertexId v) {
  const auto* t = std::get_if<GroupVertex>(&g.tag(v));
  return t ? t->word : Word{};
}

}  // namespace

std::vector<Path> enumerateQuasigeodesics(DistanceCache& dist, VertexId u, VertexId v, const QuasiParams& qp,
                                          std::uint64_t budget) {
  qp.validate();
  const MetricGraph& g = dist.graph();
  if (!g.contains(u) || !g.contains(v)) throw InputError("enumerateQuasigeodesics: unknown endpoint");
  const int duv = dist(u, v);
  if (duv < 0) throw InputError("enumerateQuasigeodesics: endpoints are not connected");
  if (static_cast<long long>(duv) * qp.lambdaNum > 2LL * qp.maxLength * qp.lambdaDen) {
    throw InputError("enumerateQuasigeodesics: lambda * d(u,v) exceeds L");
  }
  const auto& toV = dist.row(v);

  std::vector<Path> out;
  Path path{u};
  std::uint64_t expansions = 0;
  auto dfs = [&](auto&& self, int length) -> void {
    const VertexId at = path.back();
    if (at == v) {
      out.push_back(path);
      return;
    }
    for (const Neighbor& nb : g.neighbors(at)) {
      const int next = length + nb.weight;
      const int rest = toV[static_cast<std::size_t>(nb.vertex)];
      if (rest < 0 || next + rest > 2 * qp.maxLength) continue;
      if (!within(qp, next + rest, duv)) continue;
      if (++expansions > budget) {
        throw ResourceError("quasigeodesic enumeration exhausted its budget of " + std::to_string(budget) +
                                " expansions after " + std::to_string(out.size()) + " paths",
                            true);
      }
      // Every subpath ending at the new vertex.
      const auto& back = dist.row(nb.vertex);
      bool ok = true;
      int sub = nb.weight;
      for (std::size_t i = path.size(); i-- > 0;) {
        if (!within(qp, sub, back[static_cast<std::size_t>(path[i])])) {
          ok = false;
          break;
        }
        if (i > 0) sub += g.edgeWeight(path[i - 1], path[i]);
      }
      if (!ok) continue;
      path.push_back(nb.vertex);
      self(self, next);
      path.pop_back();
    }
  };
  dfs(dfs, 0);
  return out;
}

std::vector<Path> enumerateQuasigeodesics(const MetricGraph& ball, VertexId u, VertexId v, const QuasiParams& qp,
                                          std::uint64_t budget) {
  DistanceCache dist(ball);
  return enumerateQuasigeodesics(dist, u, v, qp, budget);
}

bool isQuasigeodesic(const MetricGraph& ball, std::span<const VertexId> path, const QuasiParams& qp) {
  if (path.empty()) return false;
  std::vector<int> prefix{0};
  for (std::size_t i = 1; i < path.size(); ++i) {
    int w = ball.edgeWeight(path[i - 1], path[i]);
    if (w == 0) return false;
    prefix.push_back(prefix.back() + w);
  }
  if (prefix.back() > 2 * qp.maxLength) return false;
  for (std::size_t i = 0; i < path.size(); ++i) {
    auto row = distancesFrom(ball, path[i]);
    for (std::size_t j = i + 1; j < path.size(); ++j) {
      if (!within(qp, prefix[j] - prefix[i], row[static_cast<std::size_t>(path[j])])) return false;
    }
  }
  return true;
}

namespace {

class Accumulator {
 public:
  Accumulator(const ConedGraph& coned, DistanceCache& base) : coned_(coned), base_(base) {}

  void add(const Path& a, const std::vector<PenetrationRecord>& ra, const Path& b,
           const std::vector<PenetrationRecord>& rb) {
    ++report.pairs;
    std::map<VertexId, const PenetrationRecord*> inB;
    for (const auto& r : rb) inB[r.cone] = &r;
    std::map<VertexId, const PenetrationRecord*> inA;
    for (const auto& r : ra) inA[r.cone] = &r;

    for (const auto& r : ra) {
      auto it = inB.find(r.cone);
      if (it == inB.end()) {
        offer(report.case1, report.case1Witness, base_(r.entering, r.exiting), a, b, r);
      } else {
        offer(report.case2Enter, report.enterWitness, base_(r.entering, it->second->entering), a, b, r);
        offer(report.case2Exit, report.exitWitness, base_(r.exiting, it->second->exiting), a, b, r);
      }
    }
    for (const auto& r : rb) {
      if (!inA.count(r.cone)) offer(report.case1, report.case1Witness, base_(r.entering, r.exiting), b, a, r);
    }
  }

  BcpReport report;

 private:
  void offer(int& best, std::optional<BcpWitness>& witness, int value, const Path& a, const Path& b,
             const PenetrationRecord& r) {
    if (witness && value <= best) return;
    best = value;
    BcpWitness w{a, b, {}, {}, r.peripheral, r.key, value};
    for (VertexId v : a) w.firstWords.push_back(wordAt(coned_.base, v));
    for (VertexId v : b) w.secondWords.push_back(wordAt(coned_.base, v));
    witness = std::move(w);
  }

  const ConedGraph& coned_;
  DistanceCache& base_;
};

std::vector<PenetrationRecord> checkedRecords(const ConedGraph& coned, const Path& p) {
  auto hat = hatPath(coned, p);
  auto records = penetrations(coned.coned, hat);
  if (!isWithoutBacktracking(records)) throw InputError("bcpCheck: hat-path backtracks");
  return records;
}

}  // namespace

BcpReport bcpCheck(const ConedGraph& coned, std::span<const std::pair<Path, Path>> pairs) {
  DistanceCache base(coned.base);
  Accumulator acc(coned, base);
  for (const auto& [a, b] : pairs) {
    if (a.empty() || b.empty() || a.front() != b.front()) throw InputError("bcpCheck: paths must share the initial vertex");
    auto ra = checkedRecords(coned, a);
    auto rb = checkedRecords(coned, b);
    if (base(a.back(), b.back()) > kUnitWeight) throw InputError("bcpCheck: terminal vertices more than 1 apart");
    acc.add(a, ra, b, rb);
  }
  return acc.report;
}

std::string bcpVerdictName(BcpVerdict v) {
  return v == BcpVerdict::ViolationWitnessed ? "violation-witnessed" : "boundedness-consistent";
}

void checkBcpFamily(const PeripheralFamily& family) {
  std::size_t withLetters = 0;
  for (const PeripheralSpec& p : family.representatives()) {
    const auto letters = static_cast<Letter>(p.oracle().alphabet().letterCount());
    for (Letter x = 0; x < letters; ++x) {
      if (p.containsLetter(x)) {
        ++withLetters;
        break;
      }
    }
  }
  if (withLetters >= 2) {
    throw InputError("bcp: two peripherals contain generators, so their cosets overlap along paths; "
                     "this family is outside the supported scope");
  }
}

BcpScan bcpScan(const GroupOracle& oracle, const PeripheralFamily& family, int lambdaNum, int lambdaDen,
                std::span<const int> radii, std::uint64_t budget) {
  QuasiParams probe{lambdaNum, lambdaDen, 1};
  probe.validate();
  checkBcpFamily(family);
  if (radii.empty()) throw InputError("bcp: no radii");
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (radii[i] <= radii[i - 1]) throw InputError("bcp: radii must be strictly increasing");
  }

  BcpScan scan;
  for (int r : radii) {
    auto [ball, index] = buildBall(oracle, r);
    ConedGraph coned = coneOff(ball, index, family);
    DistanceCache dist(coned.base);
    const auto n = static_cast<VertexId>(index.size());

    // Paths from the identity to each terminal vertex, with their records.
    std::vector<std::vector<std::pair<Path, std::vector<PenetrationRecord>>>> byEnd(static_cast<std::size_t>(n));
    for (VertexId t = 0; t < n; ++t) {
      const long long d = dist(0, t);
      QuasiParams qp{lambdaNum, lambdaDen, 1};
      qp.maxLength = std::max(1, static_cast<int>((d * lambdaNum + 2LL * lambdaDen - 1) / (2LL * lambdaDen)));
      for (Path& p : enumerateQuasigeodesics(dist, 0, t, qp, budget)) {
        auto records = penetrations(coned.coned, hatPath(coned, p));
        if (!isWithoutBacktracking(records)) continue;
        byEnd[static_cast<std::size_t>(t)].emplace_back(std::move(p), std::move(records));
      }
    }

    Accumulator acc(coned, dist);
    for (VertexId t1 = 0; t1 < n; ++t1) {
      const auto& first = byEnd[static_cast<std::size_t>(t1)];
      for (VertexId t2 = t1; t2 < n; ++t2) {
        if (dist(t1, t2) > kUnitWeight) continue;
        const auto& second = byEnd[static_cast<std::size_t>(t2)];
        for (std::size_t i = 0; i < first.size(); ++i) {
          for (std::size_t j = (t1 == t2 ? i + 1 : 0); j < second.size(); ++j) {
            acc.add(first[i].first, first[i].second, second[j].first, second[j].second);
          }
        }
      }
    }
    acc.report.radius = r;
    acc.report.lambda = probe.lambdaText();
    scan.reports.push_back(std::move(acc.report));
  }

  bool growing = scan.reports.size() >= 2;
  for (std::size_t i = 1; i < scan.reports.size(); ++i) {
    if (scan.reports[i].maxSeparation() < scan.reports[i - 1].maxSeparation() + kUnitWeight) growing = false;
  }
  scan.verdict = growing ? BcpVerdict::ViolationWitnessed : BcpVerdict::BoundednessConsistent;
  return scan;
}

namespace {

nlohmann::json witnessJson(const std::optional<BcpWitness>& w, const Alphabet& alphabet) {
  if (!w) return nullptr;
  auto words = [&](const std::vector<Word>& ws) {
    nlohmann::json out = nlohmann::json::array();
    for (const Word& x : ws) out.push_back(formatWord(alphabet, x));
    return out;
  };
  return {{"peripheral", w->peripheral},
          {"coset_key", formatWord(alphabet, w->key)},
          {"separation_scaled", w->separation},
          {"first", w->first},
          {"first_words", words(w->firstWords)},
          {"second", w->second},
          {"second_words", words(w->secondWords)}};
}

}  // namespace

nlohmann::json bcpScanJson(const BcpScan& scan, const Alphabet& alphabet) {
  nlohmann::json reports = nlohmann::json::array();
  for (const BcpReport& r : scan.reports) {
    reports.push_back({{"radius", r.radius},
                       {"lambda", r.lambda},
                       {"pairs", r.pairs},
                       {"case1_scaled", r.case1},
                       {"case2_enter_scaled", r.case2Enter},
                       {"case2_exit_scaled", r.case2Exit},
                       {"case1_witness", witnessJson(r.case1Witness, alphabet)},
                       {"enter_witness", witnessJson(r.enterWitness, alphabet)},
                       {"exit_witness", witnessJson(r.exitWitness, alphabet)}});
  }
  return {{"verdict", bcpVerdictName(scan.verdict)}, {"reports", reports}};
}

}  // namespace relhyp
