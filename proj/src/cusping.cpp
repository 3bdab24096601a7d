#include "relhyp/cusping.hpp"

#include <map>

#include "relhyp/errors.hpp"

namespace relhyp {

namespace {

Word wordOf(const VertexTag& t) {
  if (const auto* g = std::get_if<GroupVertex>(&t)) return g->word;
  if (const auto* h = std::get_if<HoroVertex>(&t)) return h->word;
  return {};
}

// Scaled threshold for level k: word-metric distance 2^k is 2^(k+1) scaled.
long long levelReach(int k) { return 2LL << k; }

}  // namespace

HoroballGraph buildHoroball(const MetricGraph& gamma, int depth) {
  if (depth < 0 || depth > 30) throw InputError("buildHoroball: depth must be in 0..30");
  if (gamma.vertexCount() == 0 || !isConnected(gamma)) throw InputError("buildHoroball: base graph is not connected");
  const std::size_t n = gamma.vertexCount();
  HoroballGraph out;
  out.baseCount = n;
  out.depth = depth;

  std::vector<std::vector<int>> d(n);
  for (std::size_t v = 0; v < n; ++v) d[v] = distancesFrom(gamma, static_cast<VertexId>(v));

  GraphBuilder b;
  for (int k = 0; k <= depth; ++k) {
    for (std::size_t v = 0; v < n; ++v) {
      b.addVertex(HoroVertex{wordOf(gamma.tag(static_cast<VertexId>(v))), k, "", {}});
    }
  }
  for (int k = 0; k <= depth; ++k) {
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t w = v + 1; w < n; ++w) {
        if (d[v][w] <= levelReach(k)) {
          b.addEdge(out.vertex(static_cast<VertexId>(v), k), out.vertex(static_cast<VertexId>(w), k), kUnitWeight);
        }
      }
      if (k < depth) {
        b.addEdge(out.vertex(static_cast<VertexId>(v), k), out.vertex(static_cast<VertexId>(v), k + 1), kUnitWeight);
      }
    }
  }
  out.graph = std::move(b).finalize();
  return out;
}

int defaultDepth(int radius) {
  int k = 0;
  while ((1 << k) < radius) ++k;
  return k + 1;
}

CuspedGraph buildCusped(const MetricGraph& ball, const BallIndex& index, const PeripheralFamily& family, int depth) {
  if (depth < 0 || depth > 30) throw InputError("buildCusped: depth must be in 0..30");
  const std::size_t n = ball.vertexCount();
  if (index.size() != n) throw InputError("buildCusped: index does not match the ball");
  CuspedGraph out;
  out.baseCount = n;
  out.depth = depth;

  GraphBuilder b;
  for (const VertexTag& t : ball.tags()) b.addVertex(t);
  for (const Edge& e : ball.edges()) b.addEdge(e.u, e.v, e.weight);

  for (const PeripheralSpec& p : family.representatives()) {
    std::map<Word, std::size_t> slot;
    std::vector<HoroballInfo> cosets;
    for (std::size_t v = 0; v < n; ++v) {
      Word key = p.cosetKey(index.word(static_cast<VertexId>(v)));
      auto [it, fresh] = slot.try_emplace(key, cosets.size());
      if (fresh) cosets.push_back({p.label(), key, {}, 0, false});
      cosets[it->second].coset.push_back(static_cast<VertexId>(v));
    }

    for (HoroballInfo& info : cosets) {
      const auto& members = info.coset;
      const std::size_t m = members.size();
      MetricGraph induced;
      {
        GraphBuilder ib;
        for (VertexId v : members) ib.addVertex(ball.tag(v));
        for (std::size_t i = 0; i < m; ++i) {
          for (std::size_t j = i + 1; j < m; ++j) {
            if (int w = ball.edgeWeight(members[i], members[j])) ib.addEdge(static_cast<VertexId>(i), static_cast<VertexId>(j), w);
          }
        }
        induced = std::move(ib).finalize(false);
      }
      info.degenerate = induced.edgeCount() == 0;

      std::vector<std::vector<int>> d(m);
      std::vector<int> component(m, -1);
      for (std::size_t i = 0; i < m; ++i) {
        d[i] = distancesFrom(induced, static_cast<VertexId>(i));
        if (component[i] < 0) {
          for (std::size_t j = 0; j < m; ++j) {
            if (d[i][j] >= 0) component[j] = static_cast<int>(info.components);
          }
          ++info.components;
        }
      }

      // layer[k-1][i]: vertex (members[i], k) for k >= 1.
      std::vector<std::vector<VertexId>> layer(static_cast<std::size_t>(depth), std::vector<VertexId>(m));
      for (int k = 1; k <= depth; ++k) {
        for (std::size_t i = 0; i < m; ++i) {
          layer[static_cast<std::size_t>(k - 1)][i] =
              b.addVertex(HoroVertex{index.word(members[i]), k, p.label(), info.key});
        }
      }
      auto at = [&](std::size_t i, int k) { return k == 0 ? members[i] : layer[static_cast<std::size_t>(k - 1)][i]; };
      for (int k = 0; k <= depth; ++k) {
        for (std::size_t i = 0; i < m; ++i) {
          // Level 0 horizontal edges are the coset's own ball edges.
          if (k > 0) {
            for (std::size_t j = i + 1; j < m; ++j) {
              if (d[i][j] >= 0 && d[i][j] <= levelReach(k)) b.addEdge(at(i, k), at(j, k), kUnitWeight);
            }
          }
          if (k < depth) b.addEdge(at(i, k), at(i, k + 1), kUnitWeight);
        }
      }
      out.horoballs.push_back(std::move(info));
    }
  }
  out.graph = std::move(b).finalize();
  return out;
}

}  // namespace relhyp
