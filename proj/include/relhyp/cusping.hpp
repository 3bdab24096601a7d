#ifndef RELHYP_CUSPING_HPP
#define RELHYP_CUSPING_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "relhyp/cayley.hpp"
#include "relhyp/graph.hpp"
#include "relhyp/words.hpp"

namespace relhyp {

// Combinatorial horoball over gamma truncated at depth K. Vertex (v, k)
// has index k * n + v where n = |V(gamma)|.
struct HoroballGraph {
  std::size_t baseCount = 0;
  int depth = 0;
  MetricGraph graph;

  VertexId vertex(VertexId v, int k) const { return static_cast<VertexId>(k) * static_cast<VertexId>(baseCount) + v; }
};

// Horizontal edges at level k join (v,k),(w,k) with d_gamma(v,w) <= 2^k
// in word-metric units (gamma's scaled weights halved). Throws InputError if
// gamma is disconnected or K < 0.
HoroballGraph buildHoroball(const MetricGraph& gamma, int depth);

struct HoroballInfo {
  std::string peripheral;
  Word key;
  std::vector<VertexId> coset;  // ball vertices in the coset, ball order
  std::size_t components = 0;   // of the coset's induced subgraph
  bool degenerate = false;      // no intra-coset edges: vertical rays only
};

struct CuspedGraph {
  MetricGraph graph;  // ball vertices first, then horoball vertices
  std::size_t baseCount = 0;
  int depth = 0;
  std::vector<HoroballInfo> horoballs;
};

// ceil(log2 R) + 1, and 1 for R <= 1.
int defaultDepth(int radius);

// One horoball per (peripheral, coset) meeting the ball, built over the
// coset's induced subgraph and glued along level 0. Vertices in different
// components of that subgraph are at infinite distance, so they share no
// horizontal edges.
CuspedGraph buildCusped(const MetricGraph& ball, const BallIndex& index, const PeripheralFamily& family, int depth);

}  // namespace relhyp

#endif  // RELHYP_CUSPING_HPP
