#include <gtest/gtest.h>

#include "pants/audit.hpp"

using namespace pants;

namespace {

std::string first(const AuditReport& r) { return r.witnesses.empty() ? "" : r.witnesses.front(); }

i64 param(const AuditReport& r, const std::string& key) {
  for (const auto& [k, v] : r.params)
    if (k == key) return v;
  return -1;
}

}  // namespace

TEST(Audits, SmallRunsPass) {
  for (const AuditReport& r : {audit_farey_geodesics(200, 16, 3), audit_model(3), audit_projection_identity(20, 5, 3),
                               audit_lemma4(40, 6, 3), audit_lemma8(20, 3)})
    EXPECT_TRUE(r.pass()) << r.name << ": " << first(r);
}

TEST(Audits, ReportsCarryProvenance) {
  AuditReport r = audit_theorem2(10, 4, 6, 99);
  EXPECT_EQ(param(r, "seed"), 99);
  EXPECT_EQ(param(r, "bound"), 6);
  EXPECT_EQ(param(r, "max_len"), 4);
  EXPECT_EQ(r.samples, 10u);
  EXPECT_TRUE(r.pass()) << first(r);
}

TEST(Audits, WorkerCountDoesNotChangeResults) {
  auto stats = [](const AuditReport& r) { return std::make_tuple(r.samples, r.failures, r.stats); };
  EXPECT_EQ(stats(audit_theorem2(12, 5, 6, 4, 1)), stats(audit_theorem2(12, 5, 6, 4, 3)));
  EXPECT_EQ(stats(audit_shortening(6, 6, 4, 1)), stats(audit_shortening(6, 6, 4, 2)));
}

TEST(Audits, SameSeedSameReport) {
  AuditReport a = audit_lemma4(30, 6, 12), b = audit_lemma4(30, 6, 12);
  EXPECT_EQ(a.stats, b.stats);
}

TEST(TotalGeodesy, PairsAtDistanceOne) {
  // Adjacent subgraph vertices are adjacent in the ambient graph, and the only
  // geodesic is the edge itself.
  PairOutcome o = check_pair({{0, 1}, {0, 1}}, {{1, 0}, {0, 1}}, 8, 1000);
  EXPECT_EQ(o.dq, 1);
  ASSERT_TRUE(o.ambient);
  EXPECT_EQ(*o.ambient, 1);
  EXPECT_EQ(o.geodesics, 1u);
  EXPECT_TRUE(o.falsifications.empty());
}

TEST(TotalGeodesy, SampledPairsRespectTheTarget) {
  auto pairs = sample_handle_pairs(10, 4, 8, 5);
  ASSERT_EQ(pairs.size(), 10u);
  for (std::size_t k = 0; k < pairs.size(); ++k) EXPECT_EQ(handle_distance(pairs[k].first, pairs[k].second), 1 + static_cast<int>(k % 4));
}

TEST(TotalGeodesy, SmallAudit) {
  AuditReport r = audit_total_geodesy(6, 3, 8, 2);
  EXPECT_TRUE(r.pass()) << first(r);
  EXPECT_THROW(audit_total_geodesy(1, 6, 8, 2), std::invalid_argument);
}

TEST(Shortening, ConstructedDetoursLeaveAndReturn) {
  BoundedPantsGraph g(8);
  const HandleSystem& h = HandleSystem::standard();
  for (std::uint64_t k = 0; k < 4; ++k) {
    auto rng = instance_rng(21, k);
    auto path = build_detour(g, rng);
    ASSERT_GE(path.size(), 3u);
    EXPECT_TRUE(h.in_subgraph(path.front()));
    EXPECT_TRUE(h.in_subgraph(path.back()));
    bool leaves = false;
    for (std::size_t i = 1; i + 1 < path.size(); ++i) leaves = leaves || !h.in_subgraph(path[i]);
    EXPECT_TRUE(leaves);
    DetourOutcome o = check_detour(path);
    EXPECT_TRUE(o.failures.empty()) << o.failures.front();
    EXPECT_LE(o.output_length, o.input_length - 1);
  }
}

TEST(TwoStep, SmallAudit) {
  AuditReport r = audit_two_step(3, 8, 7);
  EXPECT_TRUE(r.pass()) << first(r);
}

TEST(Convexity, HullIsConvex) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 30; ++t) {
    FiniteGraph g = random_connected_graph(rng, 7, 3);
    auto s = random_convex_subset(g, rng);
    EXPECT_FALSE(s.empty());
    EXPECT_TRUE(check_convex(g, s).convex);
  }
}

TEST(Planes, SmallEmbedding) {
  const UnimodularMatrix& m = default_plane_matrix();
  AuditReport r = audit_plane_embedding(m, m, 2, 8);
  EXPECT_TRUE(r.pass()) << first(r);
  EXPECT_EQ(r.samples, 6u);
  EXPECT_TRUE(audit_plane_translation(m, m, 2).pass());
}
