#include <gtest/gtest.h>

#include <fstream>
#include <json.hpp>

#include "pants/triangulation.hpp"

using namespace pants;

namespace {

nlohmann::json load_oracle() {
  std::ifstream in(std::string(PANTS_FIXTURE_DIR) + "/curver_oracle.json");
  return nlohmann::json::parse(in);
}

struct Fixture {
  nlohmann::json j = load_oracle();
  TriPtr tri;
  std::vector<Encoding> twists;
  Fixture() {
    std::vector<std::array<int, 3>> tris;
    for (const auto& t : j["triangles"]) tris.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>()});
    tri = std::make_shared<const Triangulation>(tris);
    for (const auto& a : j["arcs"]) twists.push_back(half_twist_about_edge(tri, a.get<int>()));
  }
};

const Fixture& fixture() {
  static Fixture f;
  return f;
}

}  // namespace

TEST(Triangulation, SixPuncturedSphere) {
  const auto& t = *fixture().tri;
  EXPECT_EQ(t.zeta(), 12);
  EXPECT_EQ(t.num_vertices(), 6);
  EXPECT_EQ(static_cast<int>(t.triangles().size()), 8);
}

TEST(Triangulation, FlipIsInvolutiveUpToRelabel) {
  const auto& f = fixture();
  for (int e = 0; e < 12; ++e) {
    if (!f.tri->is_flippable(e)) continue;
    Move m = make_flip(f.tri, e);
    Triangulation back = m.target->flip(~e);
    EXPECT_EQ(back, *f.tri);
  }
}

TEST(Triangulation, BaseCurvesAreArcBoundaries) {
  const auto& f = fixture();
  for (std::size_t i = 0; i < 5; ++i) {
    Weights w = edge_curve(*f.tri, f.j["arcs"][i].get<int>());
    EXPECT_EQ(w, f.j["base_curves"][i].get<Weights>());
  }
}

TEST(Triangulation, HalfTwistsMatchOracle) {
  const auto& f = fixture();
  for (const auto& c : f.j["cases"]) {
    Weights a = c["a"].get<Weights>();
    for (int i = 0; i < 5; ++i) {
      EXPECT_EQ(f.twists[i](a), c["twists"][i][0].get<Weights>()) << "s_" << i;
      EXPECT_EQ(f.twists[i].inverse()(a), c["twists"][i][1].get<Weights>()) << "S_" << i;
    }
  }
}

TEST(Triangulation, IntersectionMatchesOracle) {
  const auto& f = fixture();
  for (const auto& c : f.j["cases"])
    EXPECT_EQ(intersection(f.tri, c["a"].get<Weights>(), c["b"].get<Weights>()), c["intersection"].get<i64>());
}

TEST(Triangulation, BraidRelations) {
  const auto& f = fixture();
  Weights c = f.j["cases"][3]["a"].get<Weights>();
  for (int i = 0; i + 1 < 5; ++i) {
    const auto& x = f.twists[i];
    const auto& y = f.twists[i + 1];
    EXPECT_EQ(x.then(y).then(x)(c), y.then(x).then(y)(c));
  }
  EXPECT_EQ(f.twists[0].then(f.twists[2])(c), f.twists[2].then(f.twists[0])(c));
}
