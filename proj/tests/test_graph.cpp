#include <random>

#include "doctest.h"
#include "relhyp/cayley.hpp"
#include "relhyp/errors.hpp"
#include "relhyp/graph.hpp"

using namespace relhyp;

namespace {

// Plain graphs for metric tests; vertices are tagged with one-letter words
// so they print as group vertices.
MetricGraph pathGraph(int n, int weight = kUnitWeight) {
  GraphBuilder b;
  for (int i = 0; i < n; ++i) b.addVertex(GroupVertex{});
  for (int i = 0; i + 1 < n; ++i) b.addEdge(i, i + 1, weight);
  return std::move(b).finalize();
}

MetricGraph cycleGraph(int n) {
  GraphBuilder b;
  for (int i = 0; i < n; ++i) b.addVertex(GroupVertex{});
  for (int i = 0; i < n; ++i) b.addEdge(i, (i + 1) % n, kUnitWeight);
  return std::move(b).finalize();
}

MetricGraph coneStar(int leaves) {
  GraphBuilder b;
  b.addVertex(ConeVertex{"P", {}});
  for (int i = 0; i < leaves; ++i) {
    VertexId v = b.addVertex(GroupVertex{Word{static_cast<Letter>(i)}});
    b.addEdge(0, v, kConeWeight);
  }
  return std::move(b).finalize();
}

// Independent oracle: Floyd-Warshall.
std::vector<std::vector<int>> floyd(const MetricGraph& g) {
  const std::size_t n = g.vertexCount();
  const int inf = 1 << 28;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (const Edge& e : g.edges()) {
    d[static_cast<std::size_t>(e.u)][static_cast<std::size_t>(e.v)] = e.weight;
    d[static_cast<std::size_t>(e.v)][static_cast<std::size_t>(e.u)] = e.weight;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

MetricGraph randomConedGraph(std::mt19937& rng, int groupVertices, int cones) {
  GraphBuilder b;
  for (int i = 0; i < groupVertices; ++i) b.addVertex(GroupVertex{});
  for (int i = 1; i < groupVertices; ++i) {
    std::uniform_int_distribution<int> parent(0, i - 1);
    b.addEdge(i, parent(rng), kUnitWeight);
  }
  std::uniform_int_distribution<int> any(0, groupVertices - 1);
  for (int extra = 0; extra < groupVertices; ++extra) {
    int u = any(rng), v = any(rng);
    if (u != v && !b.hasEdge(u, v)) b.addEdge(u, v, kUnitWeight);
  }
  for (int c = 0; c < cones; ++c) {
    VertexId cv = b.addVertex(ConeVertex{"P", Word{static_cast<Letter>(c)}});
    for (int k = 0; k < 4; ++k) {
      int u = any(rng);
      if (!b.hasEdge(cv, u)) b.addEdge(cv, u, kConeWeight);
    }
  }
  return std::move(b).finalize();
}

}  // namespace

TEST_CASE("distancesFrom: worked cases") {
  auto p = pathGraph(4);
  CHECK(distancesFrom(p, 0)[3] == 6);
  auto star = coneStar(4);
  CHECK(distancesFrom(star, 1)[2] == 2);
  CHECK_THROWS_AS(distancesFrom(p, 9), InputError);
}

TEST_CASE("allPairs: worked cases") {
  GraphBuilder b;
  for (int i = 0; i < 3; ++i) b.addVertex(GroupVertex{});
  b.addEdge(0, 1, 2);
  b.addEdge(1, 2, 2);
  b.addEdge(0, 2, 2);
  auto k3 = allPairs(std::move(b).finalize());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(k3(i, j) == (i == j ? 0 : 2));

  auto c4 = allPairs(cycleGraph(4));
  CHECK(c4(0, 2) == 4);
  CHECK(c4(1, 3) == 4);

  GroupOracle f2(Family::free(2));
  auto [ball, index] = buildBall(f2, 2);
  REQUIRE(ball.vertexCount() == 17);
  auto d = allPairs(ball);
  CHECK(d.maxEntry() == 8);
  CHECK_THROWS_AS(allPairs(ball, 10), ResourceError);
}

TEST_CASE("builder rejects malformed graphs") {
  GraphBuilder b;
  b.addVertex(GroupVertex{});
  b.addVertex(GroupVertex{});
  CHECK_THROWS_AS(b.addEdge(0, 0, 2), InputError);
  CHECK_THROWS_AS(b.addEdge(0, 1, 3), InputError);
  b.addEdge(0, 1, 1);
  CHECK_THROWS_AS(b.addEdge(1, 0, 1), InputError);
  // weight 1 between two group vertices
  CHECK_THROWS_AS(std::move(b).finalize(), InputError);

  GraphBuilder d;
  d.addVertex(GroupVertex{});
  d.addVertex(GroupVertex{});
  CHECK_THROWS_AS(std::move(d).finalize(), InputError);
}

TEST_CASE("extractGeodesic") {
  auto p = pathGraph(5);
  auto self = extractGeodesic(p, 2, 2);
  CHECK(self.vertices == std::vector<VertexId>{2});
  CHECK(self.weight == 0);
  CHECK(extractGeodesic(p, 0, 4).vertices == std::vector<VertexId>{0, 1, 2, 3, 4});

  // 4-cycle 0-1-2-3-0: from 0 to 2 both 1 and 3 lie on geodesics.
  auto c4 = cycleGraph(4);
  auto first = extractGeodesic(c4, 0, 2);
  CHECK(first.vertices == std::vector<VertexId>{0, 1, 2});
  for (int run = 0; run < 5; ++run) CHECK(extractGeodesic(c4, 0, 2).vertices == first.vertices);
  CHECK(extractGeodesic(c4, 2, 0).vertices == std::vector<VertexId>{2, 1, 0});
}

TEST_CASE("metric invariants on random coned graphs") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    auto g = randomConedGraph(rng, 40, 6);
    auto m = allPairs(g);
    auto oracle = floyd(g);
    const auto n = static_cast<VertexId>(g.vertexCount());
    for (VertexId i = 0; i < n; ++i) {
      for (VertexId j = 0; j < n; ++j) {
        REQUIRE(m(i, j) == oracle[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        REQUIRE(m(i, j) == m(j, i));
        for (VertexId k = 0; k < n; ++k) REQUIRE(m(i, k) <= m(i, j) + m(j, k));
      }
    }
    std::uniform_int_distribution<VertexId> pick(0, n - 1);
    for (int s = 0; s < 10; ++s) {
      VertexId src = pick(rng);
      auto row = distancesFrom(g, src);
      for (VertexId t = 0; t < n; ++t) REQUIRE(row[static_cast<std::size_t>(t)] == m(src, t));
    }
    for (int s = 0; s < 100; ++s) {
      VertexId u = pick(rng), v = pick(rng);
      auto path = extractGeodesic(g, u, v);
      REQUIRE(path.vertices.front() == u);
      REQUIRE(path.vertices.back() == v);
      REQUIRE(pathWeight(g, path.vertices) == m(u, v));
      REQUIRE(path.weight == m(u, v));
    }
  }
}

TEST_CASE("exportGraph formats") {
  GraphBuilder b;
  b.addVertex(GroupVertex{});
  b.addVertex(GroupVertex{Word{0}});
  b.addEdge(0, 1, kUnitWeight);
  auto single = std::move(b).finalize();
  Alphabet ab({"a", "b"});
  CHECK(exportGraph(single, GraphFormat::Csv, ab) == "0,1,2\n");
  CHECK(exportGraph(single, GraphFormat::Dot, ab) ==
        "graph G {\n  0 [label=\"1\"];\n  1 [label=\"a\"];\n  0 -- 1 [weight=2];\n}\n");

  GraphBuilder c;
  c.addVertex(GroupVertex{});
  c.addVertex(ConeVertex{"A", Word{2}});
  c.addEdge(0, 1, kConeWeight);
  auto cone = std::move(c).finalize();
  CHECK(exportGraph(cone, GraphFormat::Csv, ab) == "0,1,1\n");
  CHECK(exportGraph(cone, GraphFormat::Dot, ab).find("CONE:A:b") != std::string::npos);

  CHECK_THROWS_AS(parseGraphFormat("png"), InputError);
  CHECK(parseGraphFormat("json") == GraphFormat::Json);
}

TEST_CASE("json export round-trips") {
  GraphBuilder b;
  b.addVertex(GroupVertex{});
  b.addVertex(GroupVertex{Word{0}});
  b.addVertex(ConeVertex{"A", Word{}});
  b.addVertex(HoroVertex{Word{0}, 1, "A", Word{}});
  b.addEdge(0, 1, 2);
  b.addEdge(0, 2, 1);
  b.addEdge(1, 2, 1);
  b.addEdge(1, 3, 2);
  auto g = std::move(b).finalize();
  Alphabet ab({"a", "b"});
  auto text = exportGraph(g, GraphFormat::Json, ab);
  CHECK(importGraphJson(text, ab) == g);
  CHECK_THROWS_AS(importGraphJson("{not json", ab), InputError);

  GroupOracle z2(Family::abelian(2));
  auto [ball, index] = buildBall(z2, 3);
  CHECK(importGraphJson(exportGraph(ball, GraphFormat::Json, z2.alphabet()), z2.alphabet()) == ball);
}

TEST_CASE("restrictTo keeps induced edges") {
  auto c4 = cycleGraph(4);
  std::vector<VertexId> keep{2, 1, 0};
  auto r = c4.restrictTo(keep);
  CHECK(r.vertexCount() == 3);
  CHECK(r.edgeCount() == 2);
  CHECK(r.edgeWeight(0, 1) == 2);
  std::vector<VertexId> apart{0, 2};
  CHECK_THROWS_AS(c4.restrictTo(apart), InputError);
}
