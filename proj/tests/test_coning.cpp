#include <set>

#include "doctest.h"
#include "relhyp/coning.hpp"
#include "relhyp/config.hpp"
#include "relhyp/errors.hpp"

using namespace relhyp;

namespace {

struct Fixture {
  GroupOracle oracle;
  MetricGraph ball;
  BallIndex index;
  ConedGraph coned;

  Fixture(const char* family, std::vector<PeripheralDecl> decls, int radius)
      : oracle(parseFamily(family)) {
    auto built = buildBall(oracle, radius);
    ball = std::move(built.first);
    index = std::move(built.second);
    coned = coneOff(ball, index, buildFamily(oracle, decls));
  }

  VertexId at(const char* w) const { return index.find(oracle.parseWord(w)); }
  std::vector<VertexId> path(std::initializer_list<const char*> ws) const {
    std::vector<VertexId> out;
    for (const char* w : ws) out.push_back(at(w));
    return out;
  }
};

PeripheralDecl cyclic(const char* label, const char* word) { return parsePeripheralDecl(label, std::string("cyclic:") + word); }

}  // namespace

TEST_CASE("empty family leaves the ball unchanged") {
  Fixture f("free(2)", {}, 3);
  CHECK(f.coned.coned == f.ball);
  CHECK(f.coned.coneIndex.empty());
}

TEST_CASE("Z2 relative to <a>: one cone per horizontal line") {
  Fixture f("abelian(2)", {cyclic("A", "a")}, 2);
  // Oracle: the lines y = -2..2 meet the diamond |x|+|y| <= 2.
  CHECK(f.coned.coneIndex.size() == 5);
  CHECK(f.coned.coned.vertexCount() == 13 + 5);
  CHECK(f.coned.coned.edgeCount() == 16 + 13);
  // The line y = 0 holds 5 points, y = +-2 one each.
  VertexId c0 = f.coned.coneOf[0][static_cast<std::size_t>(f.at("1"))];
  CHECK(f.coned.coned.neighbors(c0).size() == 5);
  VertexId c2 = f.coned.coneOf[0][static_cast<std::size_t>(f.at("bb"))];
  CHECK(f.coned.coned.neighbors(c2).size() == 1);
  for (auto nb : f.coned.coned.neighbors(c0)) CHECK(nb.weight == kConeWeight);
  CHECK(f.coned.isConeVertex(c0));
  CHECK_FALSE(f.coned.isConeVertex(f.at("a")));
  CHECK(f.coned.cone("A", Word{}) == c0);
  CHECK_THROWS_AS(f.coned.cone("B", Word{}), InputError);
}

TEST_CASE("F2 relative to <[a,b]>: cones at radius 2") {
  Fixture f("free(2)", {cyclic("C", "[a,b]")}, 2);
  // Oracle: g, h share a coset iff g^-1 h is a power of [a,b]; in this
  // ball only [a,b]^{+-1} is short enough.
  const Word c = f.oracle.parseWord("[a,b]");
  const Word ci = f.oracle.invert(c);
  std::size_t pairs = 0;
  for (std::size_t g = 0; g < f.index.size(); ++g) {
    for (std::size_t h = g + 1; h < f.index.size(); ++h) {
      Word q = f.oracle.multiply(f.oracle.invert(f.index.word(static_cast<VertexId>(g))),
                                 f.index.word(static_cast<VertexId>(h)));
      pairs += q == c || q == ci;
    }
  }
  CHECK(pairs == 1);
  CHECK(f.coned.coneIndex.size() == f.ball.vertexCount() - pairs);
  std::size_t shared = 0;
  for (const auto& [key, cone] : f.coned.coneIndex) shared += f.coned.coned.neighbors(cone).size() == 2;
  CHECK(shared == 1);
  CHECK(f.coned.coneOf[0][static_cast<std::size_t>(f.at("b'a'"))] ==
        f.coned.coneOf[0][static_cast<std::size_t>(f.at("a'b'"))]);
}

TEST_CASE("hatPath replaces coset runs by cone visits") {
  Fixture f("abelian(2)", {cyclic("A", "a")}, 3);
  const VertexId c0 = f.coned.cone("A", Word{});
  const VertexId cb = f.coned.coneOf[0][static_cast<std::size_t>(f.at("b"))];

  auto p = f.path({"a'", "1", "a", "aa"});
  CHECK(hatPath(f.coned, p) == std::vector<VertexId>{f.at("a'"), c0, f.at("aa")});

  // b-steps leave the coset; the run a, ab is not in one coset.
  auto q = f.path({"1", "a", "ab", "aab"});
  CHECK(hatPath(f.coned, q) == std::vector<VertexId>{f.at("1"), c0, f.at("a"), f.at("ab"), cb, f.at("aab")});

  auto single = f.path({"1"});
  CHECK(hatPath(f.coned, single) == single);
  CHECK(hatPath(f.coned, std::vector<VertexId>{}).empty());

  auto jump = f.path({"1", "aa"});
  CHECK_THROWS_AS(hatPath(f.coned, jump), InputError);
  CHECK_THROWS_AS(hatPath(f.coned, std::vector<VertexId>{c0}), InputError);
}

TEST_CASE("hatPath never lengthens a path") {
  // A 2-vertex run costs 2 either way, so equality is possible.
  Fixture f("abelian(2)", {cyclic("A", "a"), cyclic("B", "b")}, 3);
  std::vector<std::vector<VertexId>> paths = {
      f.path({"1", "a"}),
      f.path({"1", "a", "aa", "aaa"}),
      f.path({"b'", "1", "b", "ab", "aab"}),
      f.path({"a'b'", "b'", "1", "a", "ab", "abb"}),
  };
  for (const auto& p : paths) {
    auto h = hatPath(f.coned, p);
    CHECK(pathWeight(f.coned.coned, h) <= pathWeight(f.ball, p));
  }
  CHECK(pathWeight(f.coned.coned, hatPath(f.coned, paths[0])) == pathWeight(f.ball, paths[0]));
  CHECK(pathWeight(f.coned.coned, hatPath(f.coned, paths[1])) == 2);
}

TEST_CASE("penetrations and backtracking") {
  Fixture f("abelian(2)", {cyclic("A", "a")}, 3);
  const MetricGraph& g = f.coned.coned;
  const VertexId c0 = f.coned.cone("A", Word{});
  const VertexId cb = f.coned.coneOf[0][static_cast<std::size_t>(f.at("b"))];

  std::vector<VertexId> h{f.at("a'"), c0, f.at("aa"), f.at("aab"), cb, f.at("a'b")};
  auto recs = penetrations(g, h);
  REQUIRE(recs.size() == 2);
  CHECK(recs[0] == PenetrationRecord{"A", Word{}, c0, f.at("a'"), f.at("aa")});
  CHECK(recs[1].cone == cb);
  CHECK(recs[1].entering == f.at("aab"));
  CHECK(recs[1].exiting == f.at("a'b"));
  CHECK(isWithoutBacktracking(recs));
  CHECK(isWithoutBacktracking(g, h));

  // Leaving the coset and re-entering it.
  std::vector<VertexId> back{f.at("a'"), c0, f.at("a"), f.at("ab"), f.at("aab"), f.at("aa"), c0, f.at("1")};
  CHECK_FALSE(isWithoutBacktracking(g, back));

  CHECK_THROWS_AS(penetrations(g, std::vector<VertexId>{c0, f.at("a")}), MalformedPathError);
  CHECK_THROWS_AS(penetrations(g, std::vector<VertexId>{f.at("a"), c0}), MalformedPathError);
  CHECK_THROWS_AS(penetrations(g, std::vector<VertexId>{f.at("1"), f.at("aa")}), InputError);
  CHECK(penetrations(g, f.path({"1", "b", "bb"})).empty());
}

TEST_CASE("deleting the cone vertices recovers the ball") {
  for (const char* fam : {"free(2)", "abelian(2)", "surface(2)"}) {
    GroupOracle g(parseFamily(fam));
    auto [ball, index] = buildBall(g, 3);
    auto coned = coneOff(ball, index, buildFamily(g, {cyclic("A", "a"), cyclic("B", "b")}));
    std::vector<VertexId> keep;
    for (std::size_t v = 0; v < ball.vertexCount(); ++v) keep.push_back(static_cast<VertexId>(v));
    CHECK(coned.coned.restrictTo(keep) == ball);
    // Each ball vertex has exactly one cone per peripheral.
    for (VertexId v : keep) {
      std::set<VertexId> cones;
      for (auto nb : coned.coned.neighbors(v))
        if (coned.isConeVertex(nb.vertex)) cones.insert(nb.vertex);
      CHECK(cones.size() == 2);
    }
  }
}
