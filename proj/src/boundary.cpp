#include "relhyp/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"
#include "relhyp/errors.hpp"

namespace relhyp {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  // Keeps the smaller root.
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

double visualDistance(double epsilon, int productX2) { return std::exp(-epsilon * productX2 / 4.0); }

// Fills rho, merges and leaf order from the products.
void finish(BoundarySample& s) {
  const std::size_t n = s.size();
  s.rho.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s.rho[i * n + j] = visualDistance(s.epsilon, s.product(i, j));

  struct Pair {
    int product;
    std::size_t i, j;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.push_back({s.product(i, j), i, j});
  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.product > b.product; });

  UnionFind uf(n);
  std::vector<std::size_t> clusterOf(n);  // root leaf -> current cluster id
  std::iota(clusterOf.begin(), clusterOf.end(), std::size_t{0});
  std::vector<std::pair<std::size_t, std::size_t>> children;
  s.merges.clear();
  for (const Pair& p : pairs) {
    std::size_t a = uf.find(p.i);
    std::size_t b = uf.find(p.j);
    if (a == b) continue;
    std::size_t ca = clusterOf[a];
    std::size_t cb = clusterOf[b];
    uf.unite(a, b);
    s.merges.push_back({std::min(ca, cb), std::max(ca, cb), p.product, visualDistance(s.epsilon, p.product)});
    children.emplace_back(std::min(ca, cb), std::max(ca, cb));
    clusterOf[uf.find(a)] = n + s.merges.size() - 1;
  }

  s.leafOrder.clear();
  if (n == 0) return;
  std::vector<std::size_t> stack{n + s.merges.size() - 1};
  if (s.merges.empty()) stack = {0};
  while (!stack.empty()) {
    std::size_t c = stack.back();
    stack.pop_back();
    if (c < n) {
      s.leafOrder.push_back(c);
    } else {
      stack.push_back(children[c - n].second);
      stack.push_back(children[c - n].first);
    }
  }
}

}  // namespace

int gromovProductX2(const MetricGraph& g, VertexId base, VertexId x, VertexId y) {
  auto fromBase = distancesFrom(g, base);
  auto fromX = distancesFrom(g, x);
  const int bx = fromBase[static_cast<std::size_t>(x)];
  const int by = fromBase[static_cast<std::size_t>(y)];
  const int xy = fromX[static_cast<std::size_t>(y)];
  if (bx < 0 || by < 0 || xy < 0) throw InputError("gromovProduct: vertices are not connected");
  return bx + by - xy;
}

double defaultEpsilon() { return std::log(2.0); }

BoundarySample sampleBoundary(const MetricGraph& g, VertexId basepoint, int radius, std::vector<VertexId> sphere,
                              double epsilon, const Alphabet& alphabet) {
  if (sphere.empty()) throw InputError("sampleBoundary: empty sphere");
  if (!(epsilon > 0)) throw InputError("sampleBoundary: epsilon must be positive");
  BoundarySample s;
  s.basepoint = basepoint;
  s.radius = radius;
  s.epsilon = epsilon;
  const std::size_t n = sphere.size();
  const auto fromBase = distancesFrom(g, basepoint);
  s.productX2.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = distancesFrom(g, sphere[i]);
    for (std::size_t j = 0; j < n; ++j) {
      s.productX2[i * n + j] = fromBase[static_cast<std::size_t>(sphere[i])] +
                               fromBase[static_cast<std::size_t>(sphere[j])] - row[static_cast<std::size_t>(sphere[j])];
    }
    s.labels.push_back(vertexLabel(g.tag(sphere[i]), alphabet));
  }
  s.sphere = std::move(sphere);
  finish(s);
  return s;
}

BoundarySample sampleBoundary(const Space& space, double epsilon, const Alphabet& alphabet) {
  const auto& ids = space.index.sphereVertices(space.radius);
  return sampleBoundary(space.graph, 0, space.radius, ids, epsilon, alphabet);
}

std::vector<std::size_t> clustersAt(const BoundarySample& s, int k) {
  const std::size_t n = s.size();
  UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (s.product(i, j) >= 4 * k) uf.unite(i, j);
  std::map<std::size_t, std::size_t> ids;
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = ids.try_emplace(uf.find(i), ids.size()).first->second;
  return out;
}

std::size_t clusterCount(const BoundarySample& s, int k) {
  auto c = clustersAt(s, k);
  return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
}

std::optional<int> calibratedThreshold(const BoundarySample& s) {
  for (int k = 1; k <= std::max(1, s.radius); ++k) {
    if (clusterCount(s, k) >= 3) return k;
  }
  return std::nullopt;
}

std::vector<std::vector<std::size_t>> clusterAdjacency(const Space& space, const PeripheralFamily& family,
                                                       const BoundarySample& s, int k) {
  const auto clusters = clustersAt(s, k);
  const std::size_t count = clusters.empty() ? 0 : *std::max_element(clusters.begin(), clusters.end()) + 1;
  std::vector<std::set<std::size_t>> adj(count);
  const auto fromBase = distancesFrom(space.graph, s.basepoint);

  for (const PeripheralSpec& p : family.representatives()) {
    std::map<Word, std::vector<VertexId>> cosets;
    for (std::size_t v = 0; v < space.groupCount(); ++v) {
      cosets[p.cosetKey(space.index.word(static_cast<VertexId>(v)))].push_back(static_cast<VertexId>(v));
    }
    for (const auto& [key, members] : cosets) {
      if (members.size() < 2) continue;
      std::set<std::size_t> assigned;
      for (VertexId h : members) {
        if (h == s.basepoint) continue;
        auto row = distancesFrom(space.graph, h);
        std::set<std::size_t> shadow;
        for (std::size_t i = 0; i < s.size(); ++i) {
          auto x = static_cast<std::size_t>(s.sphere[i]);
          if (fromBase[static_cast<std::size_t>(h)] + row[x] == fromBase[x]) shadow.insert(clusters[i]);
        }
        if (shadow.size() == 1) assigned.insert(*shadow.begin());
      }
      for (std::size_t a : assigned)
        for (std::size_t b : assigned)
          if (a != b) adj[a].insert(b);
    }
  }
  std::vector<std::vector<std::size_t>> out;
  for (const auto& x : adj) out.emplace_back(x.begin(), x.end());
  return out;
}

bool isSingleCycle(const std::vector<std::vector<std::size_t>>& adjacency) {
  const std::size_t n = adjacency.size();
  if (n < 3) return false;
  for (const auto& nb : adjacency)
    if (nb.size() != 2) return false;
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w : adjacency[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n;
}

BoundaryFormat parseBoundaryFormat(std::string_view name) {
  if (name == "csv") return BoundaryFormat::Csv;
  if (name == "json") return BoundaryFormat::Json;
  if (name == "svg-heatmap" || name == "svg") return BoundaryFormat::SvgHeatmap;
  if (name == "svg-dendrogram") return BoundaryFormat::SvgDendrogram;
  throw InputError("unknown boundary format '" + std::string(name) + "'");
}

namespace {

std::string num(double x, const char* fmt = "%.9g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, x);
  return buf;
}

std::string heatmap(const BoundarySample& s) {
  const std::size_t n = s.size();
  const int cell = n > 200 ? 2 : n > 60 ? 4 : 8;
  const std::size_t side = n * static_cast<std::size_t>(cell);
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << side << "\" height=\"" << side << "\">\n";
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const auto level = static_cast<int>(std::lround(255.0 * s.visual(s.leafOrder[r], s.leafOrder[c])));
      os << "<rect x=\"" << c * static_cast<std::size_t>(cell) << "\" y=\"" << r * static_cast<std::size_t>(cell)
         << "\" width=\"" << cell << "\" height=\"" << cell << "\" fill=\"rgb(" << level << ',' << level << ','
         << level << ")\"/>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::string dendrogram(const BoundarySample& s) {
  const std::size_t n = s.size();
  const double step = 10.0;
  const double width = static_cast<double>(n) * step + 20.0;
  const double height = 320.0;
  // y grows downward: height 0 at the bottom, rho = 1 at the top margin.
  auto yOf = [&](double h) { return 10.0 + (1.0 - h) * (height - 20.0); };
  std::vector<double> x(n + s.merges.size());
  std::vector<double> y(n + s.merges.size(), yOf(0.0));
  for (std::size_t pos = 0; pos < n; ++pos) x[s.leafOrder[pos]] = 10.0 + step * static_cast<double>(pos);

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width, "%.0f") << "\" height=\""
     << num(height, "%.0f") << "\">\n";
  for (std::size_t m = 0; m < s.merges.size(); ++m) {
    const Merge& mg = s.merges[m];
    const std::size_t id = n + m;
    const double top = yOf(mg.height);
    x[id] = (x[mg.left] + x[mg.right]) / 2.0;
    y[id] = top;
    os << "<path d=\"M" << num(x[mg.left], "%.2f") << ' ' << num(y[mg.left], "%.2f") << " V" << num(top, "%.2f")
       << " H" << num(x[mg.right], "%.2f") << " V" << num(y[mg.right], "%.2f")
       << "\" fill=\"none\" stroke=\"black\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace

std::string exportBoundary(const BoundarySample& s, BoundaryFormat format) {
  switch (format) {
    case BoundaryFormat::Csv: {
      std::string out;
      for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = 0; j < s.size(); ++j) {
          if (j) out += ',';
          out += num(s.visual(i, j));
        }
        out += '\n';
      }
      return out;
    }
    case BoundaryFormat::Json: {
      nlohmann::json j;
      j["basepoint"] = s.basepoint;
      j["radius"] = s.radius;
      j["epsilon"] = s.epsilon;
      j["sphere"] = s.sphere;
      j["labels"] = s.labels;
      j["product_x2"] = s.productX2;
      nlohmann::json merges = nlohmann::json::array();
      for (const Merge& m : s.merges) merges.push_back({m.left, m.right, m.productX2});
      j["merges"] = merges;
      j["leaf_order"] = s.leafOrder;
      return j.dump(1) + "\n";
    }
    case BoundaryFormat::SvgHeatmap: return heatmap(s);
    case BoundaryFormat::SvgDendrogram: return dendrogram(s);
  }
  return {};
}

BoundarySample importBoundaryJson(std::string_view text) {
  try {
    auto j = nlohmann::json::parse(text);
    BoundarySample s;
    s.basepoint = j.at("basepoint").get<VertexId>();
    s.radius = j.at("radius").get<int>();
    s.epsilon = j.at("epsilon").get<double>();
    s.sphere = j.at("sphere").get<std::vector<VertexId>>();
    s.labels = j.at("labels").get<std::vector<std::string>>();
    s.productX2 = j.at("product_x2").get<std::vector<int>>();
    if (s.sphere.empty() || s.productX2.size() != s.sphere.size() * s.sphere.size() ||
        s.labels.size() != s.sphere.size()) {
      throw InputError("boundary json: inconsistent sizes");
    }
    finish(s);
    std::vector<Merge> stored;
    for (const auto& m : j.at("merges")) {
      stored.push_back({m.at(0).get<std::size_t>(), m.at(1).get<std::size_t>(), m.at(2).get<int>(),
                        visualDistance(s.epsilon, m.at(2).get<int>())});
    }
    if (stored != s.merges || j.at("leaf_order").get<std::vector<std::size_t>>() != s.leafOrder) {
      throw InputError("boundary json: dendrogram does not match the products");
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("boundary json: ") + e.what());
  }
}

}  // namespace relhyp
