#include <gtest/gtest.h>

#include <algorithm>

#include "pants/pants.hpp"

using namespace pants;

namespace {

const SurfaceModel& M() { return SurfaceModel::get(); }

// P0 with the curve in window i moved to chart slope s of the standard window.
PantsVertex moved(const PantsVertex& base, int i, Vec2 s) {
  const StdWindow& sw = std_window(base.type, i);
  PantsVertex v = base;
  v.curves[i] = M().apply(base.marking, std_curve_at(sw, s));
  v.marked = false;
  return v;
}

}  // namespace

TEST(Pants, BaseDecompositionValidates) {
  PantsVertex p0 = base_vertex();
  EXPECT_EQ(p0.curves[0], M().chain[0]);
  EXPECT_EQ(p0.curves[1], M().q);
  EXPECT_EQ(p0.curves[2], M().chain[4]);
  EXPECT_NO_THROW(validate_pants(std::vector<Weights>{M().q, M().chain[0], M().chain[4]}));
  EXPECT_NO_THROW(validate_pants(std::vector<Weights>{M().chain[0], M().chain[2], M().chain[4]}));
  EXPECT_THROW(validate_pants(std::vector<Weights>{M().q, M().chain[0]}), std::invalid_argument);
  EXPECT_THROW(validate_pants(std::vector<Weights>{M().q, M().chain[0], M().chain[0]}), std::invalid_argument);
}

TEST(Pants, ElementaryMoveCertificates) {
  PantsVertex p0 = base_vertex();
  PantsVertex b1 = moved(p0, 0, {1, 0});
  auto c = is_elementary_move(p0, b1);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->window, WindowKind::Torus);
  EXPECT_EQ(c->intersection, 1);
  EXPECT_EQ(c->removed, M().chain[0]);
  EXPECT_EQ(c->added, M().chain[1]);
  EXPECT_TRUE(is_elementary_move(b1, p0));
  EXPECT_FALSE(is_elementary_move(p0, p0));
  // Slope 3/1 meets the removed curve three times.
  PantsVertex far = moved(p0, 0, {3, 1});
  EXPECT_EQ(closed_intersection(far.curves[0], M().chain[0]), 3);
  EXPECT_FALSE(is_elementary_move(p0, far));
  // Sphere window: replacing q.
  PantsVertex sq = moved(p0, 1, {0, 1});
  auto cs = is_elementary_move(p0, sq);
  ASSERT_TRUE(cs);
  EXPECT_EQ(cs->window, WindowKind::Sphere);
  EXPECT_EQ(cs->intersection, 2);
}

TEST(Pants, MovesMatchFareyNeighbours) {
  for (i64 bound : {1, 2, 5}) {
    PantsVertex p0 = base_vertex();
    BoundedPantsGraph g(bound);
    int id = g.intern(p0);
    std::size_t expect = 0;
    for (int i = 0; i < 3; ++i) {
      Slope s = g.own_slope(id, i);
      EXPECT_EQ(g.window_moves(id, i).size(), farey_neighbors(s, bound).size());
      expect += farey_neighbors(s, bound).size();
    }
    EXPECT_EQ(enumerate_moves(p0, bound).size(), expect);
  }
  bool has_b1 = false;
  for (const auto& m : enumerate_moves(base_vertex(), 1))
    has_b1 |= m.certificate.removed == M().chain[0] && m.certificate.added == M().chain[1];
  EXPECT_TRUE(has_b1);
}

TEST(Pants, MovesAreMonotoneInBound) {
  PantsVertex v = random_walk_path(base_vertex(), 4, 4, 3).back();
  auto small = enumerate_moves(v, 2), large = enumerate_moves(v, 5);
  std::set<VertexKey> big;
  for (const auto& m : large) big.insert(m.vertex.key());
  for (const auto& m : small) EXPECT_TRUE(big.count(m.vertex.key()));
  EXPECT_LE(small.size(), large.size());
}

// Every enumerated move is certified independently by intersection numbers,
// and the bounded graph is symmetric.
TEST(Pants, EnumeratedMovesValidateAndAreSymmetric) {
  BoundedPantsGraph g(4);
  auto walk = random_walk_ids(g, g.intern(base_vertex()), 5, 17);
  for (int x : walk) {
    const PantsVertex vx = g.vertex(x);
    EXPECT_NO_THROW(validate_pants(vx.sorted_curves()));
    for (const auto& m : enumerate_moves(vx, 4)) {
      auto c = is_elementary_move(vx, m.vertex);
      ASSERT_TRUE(c);
      EXPECT_EQ(c->intersection, m.certificate.intersection);
      EXPECT_EQ(c->window, m.certificate.window);
    }
    for (int y : g.neighbors(x)) {
      auto back = g.neighbors(y);
      EXPECT_TRUE(std::find(back.begin(), back.end(), x) != back.end());
    }
  }
}

TEST(Pants, MarkedCurvesMatchMarking) {
  BoundedPantsGraph g(3);
  auto walk = random_walk_ids(g, g.intern(base_vertex()), 6, 5);
  for (int x : walk) {
    const PantsVertex& v = g.vertex(x);
    PantsVertex fresh = marked_vertex(v.type, v.marking);
    EXPECT_EQ(fresh.curves, v.curves);
  }
}

TEST(Pants, BoundedDistances) {
  PantsVertex p0 = base_vertex();
  EXPECT_EQ(bounded_pants_distance(p0, p0, 2, 4), 0);
  // Marked copies of the targets are found among bounded neighbours.
  BoundedPantsGraph g(2);
  auto find_neighbor = [&](int from, const PantsVertex& target) {
    for (int y : g.neighbors(from))
      if (g.vertex(y).key() == target.key()) return y;
    return -1;
  };
  int id0 = g.intern(p0);
  PantsVertex one = moved(p0, 0, {1, 0});
  int id1 = find_neighbor(id0, one);
  ASSERT_GE(id1, 0);
  PantsVertex two = moved(one, 2, {0, 1});
  EXPECT_EQ(two.curves[2], M().chain[3]);
  int id2 = find_neighbor(id1, two);
  ASSERT_GE(id2, 0);
  EXPECT_EQ(bounded_pants_distance(p0, g.vertex(id1), 2, 4), 1);
  EXPECT_EQ(bounded_pants_distance(p0, g.vertex(id2), 2, 4), 2);
  EXPECT_EQ(bounded_pants_distance(g.vertex(id2), p0, 2, 4), 2);
  auto s = bounded_geodesics(g, id0, id2, 1);
  ASSERT_TRUE(s.distance);
  EXPECT_EQ(*s.distance, 2);
  // Two windows change independently: exactly two geodesics.
  EXPECT_EQ(s.geodesic_count, 2u);
}

TEST(Pants, RandomWalksAreDeterministic) {
  PantsVertex p0 = base_vertex();
  auto a = random_walk_path(p0, 6, 8, 99), b = random_walk_path(p0, 6, 8, 99);
  ASSERT_EQ(a.size(), 7u);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].key(), b[i].key());
  EXPECT_EQ(random_walk_path(p0, 0, 8, 1).size(), 1u);
  for (std::size_t i = 0; i + 1 < a.size(); ++i) EXPECT_TRUE(is_elementary_move(a[i], a[i + 1]));
}
