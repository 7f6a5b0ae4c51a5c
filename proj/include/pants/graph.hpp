#pragma once

// Finite graphs, Cartesian products of Farey graphs, convexity and
// total-geodesy checks, and grid planes built from periodic Farey axes.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pants/farey.hpp"

namespace pants {

struct FiniteGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  FiniteGraph() = default;
  explicit FiniteGraph(int vertices) : n(vertices), adj_(static_cast<std::size_t>(vertices)) {}

  void add_edge(int u, int v) {
    if (u == v) throw std::invalid_argument("self-loops are not allowed");
    if (u < 0 || v < 0 || u >= n || v >= n) throw std::out_of_range("edge endpoint out of range");
    if (std::find(adj_[u].begin(), adj_[u].end(), v) != adj_[u].end()) return;
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    edges.emplace_back(std::min(u, v), std::max(u, v));
  }

  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }

  // Distances from s; -1 marks unreachable. If mask is given, only vertices with mask[v] are used.
  std::vector<int> bfs(int s, const std::vector<char>* mask = nullptr) const {
    std::vector<int> dist(static_cast<std::size_t>(n), -1);
    std::deque<int> queue{s};
    dist[s] = 0;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (int w : adj_[u]) {
        if (dist[w] >= 0 || (mask && !(*mask)[w])) continue;
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
    return dist;
  }

  bool connected() const {
    if (n == 0) return true;
    auto d = bfs(0);
    return std::all_of(d.begin(), d.end(), [](int x) { return x >= 0; });
  }

 private:
  std::vector<std::vector<int>> adj_;
};

struct ProductVertex {
  Slope first;
  Slope second;
  friend bool operator==(const ProductVertex&, const ProductVertex&) = default;
  friend auto operator<=>(const ProductVertex&, const ProductVertex&) = default;
};

// Cartesian product: one coordinate fixed, the other moves along a Farey edge.
inline bool product_adjacent(const ProductVertex& u, const ProductVertex& v) {
  return (u.first == v.first && is_farey_edge(u.second, v.second)) ||
         (u.second == v.second && is_farey_edge(u.first, v.first));
}

inline int product_distance(const ProductVertex& u, const ProductVertex& v) {
  return farey_distance(u.first, v.first) + farey_distance(u.second, v.second);
}

inline bool is_geodesic_path(const std::vector<Slope>& path) {
  if (path.empty()) return false;
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    if (!is_farey_edge(path[i], path[i + 1])) return false;
  return farey_distance(path.front(), path.back()) == static_cast<int>(path.size()) - 1;
}

struct GridPlane {
  FiniteGraph graph;
  std::vector<ProductVertex> labels;  // vertex i*|L2| + j is (L1[i], L2[j])
  int rows = 0, cols = 0;
};

inline GridPlane build_grid_plane(const std::vector<Slope>& l1, const std::vector<Slope>& l2) {
  if (!is_geodesic_path(l1) || !is_geodesic_path(l2)) throw std::invalid_argument("plane axes must be geodesic Farey paths");
  GridPlane g;
  g.rows = static_cast<int>(l1.size());
  g.cols = static_cast<int>(l2.size());
  g.graph = FiniteGraph(g.rows * g.cols);
  for (const auto& a : l1)
    for (const auto& b : l2) g.labels.push_back({a, b});
  for (int u = 0; u < g.graph.n; ++u)
    for (int v = u + 1; v < g.graph.n; ++v)
      if (product_adjacent(g.labels[u], g.labels[v])) g.graph.add_edge(u, v);
  return g;
}

struct ConvexityReport {
  bool convex = true;
  std::optional<std::pair<int, int>> witness;
  std::size_t pairs_checked = 0;
};

// S is convex when every pair of S is joined by a G-geodesic inside S, i.e.
// the induced-subgraph distance equals the G distance.
inline ConvexityReport check_convex(const FiniteGraph& g, const std::vector<int>& subset) {
  ConvexityReport rep;
  std::vector<char> mask(static_cast<std::size_t>(g.n), 0);
  for (int v : subset) mask[v] = 1;
  std::vector<int> sorted = subset;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    auto dg = g.bfs(sorted[i]);
    auto ds = g.bfs(sorted[i], &mask);
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      ++rep.pairs_checked;
      int v = sorted[j];
      if (ds[v] != dg[v]) {
        rep.convex = false;
        rep.witness = {sorted[i], v};
        return rep;
      }
    }
  }
  return rep;
}

struct TotalGeodesyReport {
  bool totally_geodesic = true;
  bool budget_exceeded = false;
  std::uint64_t geodesics_counted = 0;
  std::optional<std::pair<int, int>> witness_pair;
  std::vector<int> witness_path;  // a geodesic leaving S
  std::size_t pairs_checked = 0;
};

// Geodesics between u and v are the paths in the BFS predecessor DAG. Every
// such path stays in S iff every DAG vertex does, so the verdict is exact even
// when the path count exceeds the budget; the count is reported separately.
inline TotalGeodesyReport check_totally_geodesic(const FiniteGraph& g, const std::vector<int>& subset,
                                                 std::uint64_t budget = 1000000) {
  TotalGeodesyReport rep;
  std::vector<char> mask(static_cast<std::size_t>(g.n), 0);
  for (int v : subset) mask[v] = 1;
  std::vector<int> sorted = subset;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::vector<int>> dist(static_cast<std::size_t>(g.n));
  for (int s : sorted) dist[s] = g.bfs(s);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      int u = sorted[i], v = sorted[j];
      ++rep.pairs_checked;
      const auto& du = dist[u];
      const auto& dv = dist[v];
      int d = du[v];
      if (d < 0) continue;
      // Count geodesics by layers of the DAG.
      std::vector<std::uint64_t> count(static_cast<std::size_t>(g.n), 0);
      std::vector<std::vector<int>> layers(static_cast<std::size_t>(d + 1));
      for (int x = 0; x < g.n; ++x)
        if (du[x] >= 0 && dv[x] >= 0 && du[x] + dv[x] == d) layers[du[x]].push_back(x);
      count[u] = 1;
      for (int k = 1; k <= d; ++k)
        for (int x : layers[k])
          for (int w : g.neighbors(x))
            if (du[w] == k - 1 && dv[w] == d - k + 1) count[x] = std::min<std::uint64_t>(budget + 1, count[x] + count[w]);
      rep.geodesics_counted = std::min<std::uint64_t>(budget + 1, rep.geodesics_counted + count[v]);
      if (count[v] > budget || rep.geodesics_counted > budget) rep.budget_exceeded = true;
      for (int k = 0; k <= d && rep.totally_geodesic; ++k)
        for (int x : layers[k]) {
          if (mask[x]) continue;
          rep.totally_geodesic = false;
          rep.witness_pair = {u, v};
          // Walk back to u and forward to v through x.
          std::vector<int> back{x}, fwd;
          int cur = x;
          while (cur != u)
            for (int w : g.neighbors(cur))
              if (du[w] == du[cur] - 1 && dv[w] == dv[cur] + 1) {
                cur = w;
                back.push_back(w);
                break;
              }
          cur = x;
          while (cur != v)
            for (int w : g.neighbors(cur))
              if (dv[w] == dv[cur] - 1 && du[w] == du[cur] + 1) {
                cur = w;
                fwd.push_back(w);
                break;
              }
          std::reverse(back.begin(), back.end());
          back.insert(back.end(), fwd.begin(), fwd.end());
          rep.witness_path = back;
          break;
        }
      if (!rep.totally_geodesic) return rep;
    }
  }
  return rep;
}

inline FiniteGraph cartesian_product(const FiniteGraph& a, const FiniteGraph& b) {
  FiniteGraph g(a.n * b.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < b.n; ++j) {
      for (int k : a.neighbors(i))
        if (k > i) g.add_edge(i * b.n + j, k * b.n + j);
      for (int k : b.neighbors(j))
        if (k > j) g.add_edge(i * b.n + j, i * b.n + k);
    }
  return g;
}

struct PlaneWindow {
  ProductVertex origin;
  std::vector<Slope> axis1, axis2;
  int extent = 0;
};

struct PlaneVerification {
  PlaneWindow window;
  std::pair<int, int> shift;         // index shift of one application of (M1, M2)
  std::pair<int, int> square_shift;  // index shift of (M1^2, M2^2)
  bool translation_ok = true;
};

inline PlaneVerification invariant_plane_window(const UnimodularMatrix& m1, const UnimodularMatrix& m2, int extent) {
  if (extent < 0) throw std::invalid_argument("extent must be non-negative");
  PeriodicAxis a1(m1), a2(m2);
  PlaneVerification out;
  out.window.extent = extent;
  out.window.axis1 = a1.segment(-extent, extent);
  out.window.axis2 = a2.segment(-extent, extent);
  out.window.origin = {a1.at(0), a2.at(0)};
  // The shift is read off by locating images on a wider stretch of each axis,
  // so it is defined even for a single-vertex window.
  auto locate = [](const PeriodicAxis& ax, const UnimodularMatrix& m, int ext, int power, bool& ok) {
    int reach = ext + power * ax.shift() + 2;
    std::vector<Slope> wide = ax.segment(-reach, reach);
    std::optional<int> shift;
    for (int i = -ext; i <= ext; ++i) {
      Slope img = ax.at(i);
      for (int p = 0; p < power; ++p) img = mobius_apply(m, img);
      auto it = std::find(wide.begin(), wide.end(), img);
      if (it == wide.end()) {
        ok = false;
        continue;
      }
      int k = static_cast<int>(it - wide.begin()) - reach;
      if (shift && *shift != k - i) ok = false;
      if (!shift) shift = k - i;
    }
    return shift.value_or(0);
  };
  bool ok = true;
  out.shift = {locate(a1, m1, extent, 1, ok), locate(a2, m2, extent, 1, ok)};
  out.square_shift = {locate(a1, m1, extent, 2, ok), locate(a2, m2, extent, 2, ok)};
  out.translation_ok = ok;
  return out;
}

}  // namespace pants
