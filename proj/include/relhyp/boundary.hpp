#ifndef RELHYP_BOUNDARY_HPP
#define RELHYP_BOUNDARY_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relhyp/graph.hpp"
#include "relhyp/space.hpp"

namespace relhyp {

// 2(x|y)_base in scaled units: d(b,x) + d(b,y) - d(x,y). Word-metric value is /4.
int gromovProductX2(const MetricGraph& g, VertexId base, VertexId x, VertexId y);

struct Merge {
  std::size_t left = 0;  // cluster ids: leaves 0..n-1, merge i creates n+i
  std::size_t right = 0;
  int productX2 = 0;
  double height = 0;  // visual distance exp(-eps * product)
  friend bool operator==(const Merge&, const Merge&) = default;
};

struct BoundarySample {
  VertexId basepoint = 0;
  int radius = 0;
  double epsilon = 0;
  std::vector<VertexId> sphere;
  std::vector<std::string> labels;
  std::vector<int> productX2;  // row-major |sphere|^2
  std::vector<double> rho;     // row-major, zero diagonal
  std::vector<Merge> merges;   // single linkage, heights non-decreasing
  std::vector<std::size_t> leafOrder;

  std::size_t size() const noexcept { return sphere.size(); }
  int product(std::size_t i, std::size_t j) const { return productX2[i * sphere.size() + j]; }
  double visual(std::size_t i, std::size_t j) const { return rho[i * sphere.size() + j]; }
  friend bool operator==(const BoundarySample&, const BoundarySample&) = default;
};

// Default epsilon: ln 2 per word-metric unit.
double defaultEpsilon();

// Samples the given sphere vertices. Throws InputError if empty or
// epsilon <= 0.
BoundarySample sampleBoundary(const MetricGraph& g, VertexId basepoint, int radius, std::vector<VertexId> sphere,
                              double epsilon, const Alphabet& alphabet);
// Group vertices of word length R in the space.
BoundarySample sampleBoundary(const Space& space, double epsilon, const Alphabet& alphabet);

// Cluster id per sphere point when points with product >= k word-metric units
// are joined; ids numbered by first appearance.
std::vector<std::size_t> clustersAt(const BoundarySample& s, int k);
std::size_t clusterCount(const BoundarySample& s, int k);
// Smallest k >= 1 (up to R) giving at least three clusters.
std::optional<int> calibratedThreshold(const BoundarySample& s);

// Cluster adjacency from peripheral cosets: a coset vertex h other than the
// basepoint is assigned the cluster holding its whole shadow (sphere points
// s with d(b,h) + d(h,s) = d(b,s)); two clusters are adjacent when one coset
// has vertices assigned to each.
std::vector<std::vector<std::size_t>> clusterAdjacency(const Space& space, const PeripheralFamily& family,
                                                       const BoundarySample& s, int k);
// At least three vertices, connected, every degree two.
bool isSingleCycle(const std::vector<std::vector<std::size_t>>& adjacency);

enum class BoundaryFormat { Csv, Json, SvgHeatmap, SvgDendrogram };
BoundaryFormat parseBoundaryFormat(std::string_view name);
std::string exportBoundary(const BoundarySample& s, BoundaryFormat format);
BoundarySample importBoundaryJson(std::string_view text);

}  // namespace relhyp

#endif  // RELHYP_BOUNDARY_HPP
