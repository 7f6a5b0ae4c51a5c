#include <gtest/gtest.h>

#include <algorithm>

#include "pants/surface.hpp"

using namespace pants;

namespace {

const SurfaceModel& M() { return SurfaceModel::get(); }

int euler_sum(const std::vector<Piece>& pieces) {
  int s = 0;
  for (const auto& p : pieces) s += p.euler();
  return s;
}

}  // namespace

TEST(SurfaceModel, ValidatesAsGenusTwoCover) {
  ModelReport r = validate_surface_model(SurfaceModel::triangle_table());
  EXPECT_TRUE(r.ok) << (r.failures.empty() ? "" : r.failures[0]);
  EXPECT_EQ(r.euler, 2);
  EXPECT_EQ(r.cover_euler, -2);
  EXPECT_EQ(r.cover_genus, 2);
}

TEST(SurfaceModel, RejectsBrokenTables) {
  auto tris = SurfaceModel::triangle_table();
  // Reusing an edge label with the same orientation twice breaks the gluing.
  auto bad = tris;
  bad[0][0] = ~bad[0][0];
  EXPECT_FALSE(validate_surface_model(bad).ok);
  // Dropping triangles leaves unpaired edges.
  auto half = std::vector<std::array<int, 3>>(tris.begin(), tris.begin() + 4);
  EXPECT_FALSE(validate_surface_model(half).ok);
  // Two disjoint copies of a doubled triangle are disconnected.
  std::vector<std::array<int, 3>> two = {{0, 1, 2}, {~0, ~2, ~1}, {3, 4, 5}, {~3, ~5, ~4}};
  EXPECT_FALSE(validate_surface_model(two).ok);
}

TEST(SurfaceModel, ChainCurvesAndPartitions) {
  const Weights c0 = {1, 1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0};
  const Weights q = {1, 1, 1, 0, 1, 1, 0, 0, 0, 0, 1, 0};
  EXPECT_EQ(M().chain[0], c0);
  EXPECT_EQ(M().q, q);
  for (int i = 0; i < 6; ++i) {
    EXPECT_EQ(curve_kind(M().chain[i]), CurveKind::Nonseparating);
    EXPECT_EQ(std::popcount(curve_side(M().chain[i])) % 2, 0);
  }
  EXPECT_EQ(curve_kind(q), CurveKind::Separating);
  EXPECT_EQ(curve_side(q), PunctureSet{0b000111});
  EXPECT_EQ(curve_side(M().chain[0]), PunctureSet{0b000011});
}

TEST(SurfaceModel, RotationShiftsChain) {
  for (int k = 0; k < 5; ++k) EXPECT_EQ(M().apply(SurfaceModel::rotation(), M().chain[k]), M().chain[k + 1]);
}

TEST(SurfaceModel, ChainIntersections) {
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      // The arcs close up into a hexagon, so adjacency is cyclic.
      int expect = (i == j) ? 0 : ((std::abs(i - j) == 1 || std::abs(i - j) == 5) ? 1 : 0);
      EXPECT_EQ(closed_intersection(M().chain[i], M().chain[j]), expect) << i << "," << j;
    }
  // q meets only c2 and c5 among the chain, twice each on the closed surface.
  std::vector<i64> expect = {0, 0, 2, 0, 0, 2};
  for (int k = 0; k < 6; ++k) EXPECT_EQ(closed_intersection(M().q, M().chain[k]), expect[k]);
}

TEST(Multicurve, NormalizeEmptyAndStandardPants) {
  Weights zero(12, 0);
  EXPECT_TRUE(normalize_multicurve(zero).components.empty());
  NormalMulticurve p0 = multicurve_of({M().q, M().chain[0], M().chain[4]});
  ASSERT_EQ(p0.components.size(), 3u);
  std::vector<Weights> got;
  for (const auto& c : p0.components) got.push_back(c.weights);
  std::vector<Weights> want = {M().q, M().chain[0], M().chain[4]};
  std::sort(want.begin(), want.end());
  EXPECT_EQ(got, want);
}

TEST(Multicurve, RejectsInvalidInput) {
  Weights doubled = M().chain[0];
  for (auto& x : doubled) x *= 2;
  EXPECT_THROW(normalize_multicurve(doubled), std::invalid_argument);
  Weights odd = M().chain[0];
  odd[0] += 1;
  EXPECT_THROW(normalize_multicurve(odd), std::invalid_argument);
  Weights shortv(11, 0);
  EXPECT_THROW(normalize_multicurve(shortv), std::invalid_argument);
  Weights neg(12, 0);
  neg[3] = -2;
  EXPECT_THROW(normalize_multicurve(neg), std::invalid_argument);
  // The link of a branch point bounds a disc upstairs.
  for (const auto& cycle : M().tri->vertices()) {
    Weights link(12, 0);
    for (int l : cycle) link[edge_index(l)] += 1;
    EXPECT_EQ(curve_kind(link), CurveKind::Peripheral);
    EXPECT_THROW(normalize_multicurve(link), std::invalid_argument);
  }
}

TEST(Cut, SeparatingCurveGivesTwoHandles) {
  auto pieces = cut_along(multicurve_of({M().q}));
  ASSERT_EQ(pieces.size(), 2u);
  for (const auto& p : pieces) {
    EXPECT_EQ(p.genus, 1);
    EXPECT_EQ(p.boundaries, 1);
    EXPECT_EQ(p.complexity, 1);
  }
  EXPECT_EQ(euler_sum(pieces), -2);
}

TEST(Cut, TwoNonseparatingCurvesGiveFourHoledSphere) {
  auto pieces = cut_along(multicurve_of({M().chain[0], M().chain[4]}));
  ASSERT_EQ(pieces.size(), 1u);
  EXPECT_EQ(pieces[0].genus, 0);
  EXPECT_EQ(pieces[0].boundaries, 4);
  EXPECT_EQ(pieces[0].complexity, 1);
}

TEST(Cut, NonseparatingCurveGivesGenusOneTwoHoles) {
  auto pieces = cut_along(multicurve_of({M().chain[2]}));
  ASSERT_EQ(pieces.size(), 1u);
  EXPECT_EQ(pieces[0].genus, 1);
  EXPECT_EQ(pieces[0].boundaries, 2);
}

TEST(Cut, PantsDecompositionsGivePants) {
  for (const auto& curves : {std::vector<Weights>{M().q, M().chain[0], M().chain[4]},
                             std::vector<Weights>{M().chain[0], M().chain[2], M().chain[4]}}) {
    auto pieces = cut_along(multicurve_of(curves));
    ASSERT_EQ(pieces.size(), 2u);
    for (const auto& p : pieces) {
      EXPECT_EQ(p.genus, 0);
      EXPECT_EQ(p.boundaries, 3);
      EXPECT_EQ(p.complexity, 0);
    }
    EXPECT_EQ(euler_sum(pieces), -2);
  }
}

TEST(Cut, EulerCharacteristicIsAdditive) {
  // Every sub-multicurve of the two standard decompositions.
  for (const auto& base : {std::vector<Weights>{M().q, M().chain[0], M().chain[4]},
                           std::vector<Weights>{M().chain[0], M().chain[2], M().chain[4]}}) {
    for (int mask = 1; mask < 8; ++mask) {
      std::vector<Weights> sub;
      for (int i = 0; i < 3; ++i)
        if (mask >> i & 1) sub.push_back(base[i]);
      EXPECT_EQ(euler_sum(cut_along(multicurve_of(sub))), -2) << mask;
    }
  }
}
