#include <gtest/gtest.h>

#include "pants/audit.hpp"

using namespace pants;

namespace {

FiniteGraph path_graph(int n) {
  FiniteGraph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

FiniteGraph cycle(int n) {
  FiniteGraph g = path_graph(n);
  g.add_edge(n - 1, 0);
  return g;
}

}  // namespace

TEST(Product, Adjacency) {
  ProductVertex o{{0, 1}, {0, 1}};
  EXPECT_TRUE(product_adjacent(o, {{1, 0}, {0, 1}}));
  EXPECT_FALSE(product_adjacent(o, {{1, 0}, {1, 0}}));
  EXPECT_FALSE(product_adjacent(o, o));
}

TEST(Product, Distance) {
  ProductVertex u{{1, 0}, {0, 1}};
  EXPECT_EQ(product_distance(u, u), 0);
  EXPECT_EQ(product_distance({{0, 1}, {0, 1}}, {{1, 0}, {0, 1}}), 1);
  EXPECT_EQ(product_distance(u, {{5, 2}, {1, 1}}), 3);
}

TEST(FiniteGraphs, EdgesAndErrors) {
  FiniteGraph g(3);
  g.add_edge(0, 1);
  g.add_edge(1, 0);
  EXPECT_EQ(g.edges.size(), 1u);
  EXPECT_THROW(g.add_edge(2, 2), std::invalid_argument);
  EXPECT_THROW(g.add_edge(0, 3), std::out_of_range);
  EXPECT_FALSE(g.connected());
}

TEST(Grid, Shapes) {
  Slope a{0, 1}, b{1, 0};
  GridPlane one = build_grid_plane({a}, {a});
  EXPECT_EQ(one.graph.n, 1);
  EXPECT_TRUE(one.graph.edges.empty());
  GridPlane sq = build_grid_plane({a, b}, {a, b});
  EXPECT_EQ(sq.graph.n, 4);
  EXPECT_EQ(sq.graph.edges.size(), 4u);
  for (int v = 0; v < 4; ++v) EXPECT_EQ(sq.graph.degree(v), 2);
  UnimodularMatrix m = UnimodularMatrix::make(3, -1, 1, 0);
  auto axis = periodic_axis(m, 5);
  GridPlane big = build_grid_plane(axis, axis);
  EXPECT_EQ(big.graph.n, 121);
  EXPECT_EQ(big.graph.edges.size(), 220u);
  for (int i = 1; i < 10; ++i)
    for (int j = 1; j < 10; ++j) EXPECT_EQ(big.graph.degree(i * 11 + j), 4);
  EXPECT_THROW(build_grid_plane({a, {2, 3}}, {a}), std::invalid_argument);
}

TEST(Convexity, SmallCases) {
  FiniteGraph p = path_graph(3);
  EXPECT_TRUE(check_convex(p, {0, 1, 2}).convex);
  auto r = check_convex(p, {0, 2});
  EXPECT_FALSE(r.convex);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(*r.witness, std::make_pair(0, 2));
  EXPECT_TRUE(check_convex(cycle(4), {0, 1}).convex);
  // Weak convexity: on a 4-cycle one of the two geodesics is enough.
  EXPECT_TRUE(check_convex(cycle(4), {0, 1, 2}).convex);
}

TEST(TotalGeodesy, SmallCases) {
  EXPECT_TRUE(check_totally_geodesic(cycle(4), {0, 1, 2, 3}).totally_geodesic);
  auto r = check_totally_geodesic(cycle(4), {0, 2});
  EXPECT_FALSE(r.totally_geodesic);
  ASSERT_EQ(r.witness_path.size(), 3u);
  EXPECT_EQ(r.witness_path.front(), 0);
  EXPECT_EQ(r.witness_path.back(), 2);
  EXPECT_FALSE(check_totally_geodesic(path_graph(3), {0, 2}).totally_geodesic);
  EXPECT_TRUE(check_totally_geodesic(path_graph(2), {0, 1}).totally_geodesic);
  // The three-vertex set on a 4-cycle is convex but not totally geodesic.
  EXPECT_FALSE(check_totally_geodesic(cycle(4), {0, 1, 2}).totally_geodesic);
}

TEST(TotalGeodesy, BudgetIsReported) {
  // A 6x6 grid has C(10,5) = 252 corner-to-corner geodesics.
  FiniteGraph line = path_graph(6);
  FiniteGraph grid = cartesian_product(line, line);
  std::vector<int> all(36);
  for (int i = 0; i < 36; ++i) all[i] = i;
  auto r = check_totally_geodesic(grid, all, 100);
  EXPECT_TRUE(r.totally_geodesic);
  EXPECT_TRUE(r.budget_exceeded);
}

TEST(Cartesian, ProductMetricIsSum) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    FiniteGraph a = random_connected_graph(rng, 5, 2), b = random_connected_graph(rng, 4, 1);
    FiniteGraph g = cartesian_product(a, b);
    EXPECT_EQ(g.edges.size(), a.edges.size() * 4 + b.edges.size() * 5);
    for (int u = 0; u < g.n; ++u) {
      auto d = g.bfs(u), da = a.bfs(u / 4), db = b.bfs(u % 4);
      for (int v = 0; v < g.n; ++v) EXPECT_EQ(d[v], da[v / 4] + db[v % 4]);
    }
  }
}

TEST(Planes, TranslationShift) {
  UnimodularMatrix m = UnimodularMatrix::make(3, -1, 1, 0);
  PlaneVerification v = invariant_plane_window(m, m, 3);
  EXPECT_TRUE(v.translation_ok);
  EXPECT_EQ(v.shift, std::make_pair(1, 1));
  EXPECT_EQ(v.square_shift, std::make_pair(2, 2));
  PlaneVerification zero = invariant_plane_window(m, m, 0);
  EXPECT_EQ(zero.window.axis1.size(), 1u);
  EXPECT_EQ(zero.shift, std::make_pair(1, 1));
  EXPECT_THROW(invariant_plane_window(UnimodularMatrix::make(1, 1, 0, 1), m, 2), std::invalid_argument);
}

TEST(Planes, GridMetricIsL1) {
  UnimodularMatrix m = UnimodularMatrix::make(3, -1, 1, 0), n = UnimodularMatrix::make(2, 1, 1, 1);
  AuditReport r = audit_plane_grid(m, n, 3);
  EXPECT_TRUE(r.pass()) << (r.witnesses.empty() ? "" : r.witnesses[0]);
}
