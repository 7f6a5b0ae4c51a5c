#pragma once

// Seeded randomized audits. Each audit returns a report with its sampling
// parameters, a failure count and the first few witnesses.

#include <array>
#include <chrono>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pants/graph.hpp"
#include "pants/handle.hpp"

namespace pants {

struct AuditReport {
  std::string name;
  std::vector<std::pair<std::string, i64>> params;
  std::vector<std::pair<std::string, i64>> stats;
  std::size_t samples = 0;
  std::size_t failures = 0;
  std::vector<std::string> witnesses;
  bool budget_exceeded = false;
  double seconds = 0;

  bool pass() const { return failures == 0 && samples > 0; }
  void fail(std::string w) {
    ++failures;
    if (witnesses.size() < 10) witnesses.push_back(std::move(w));
  }
  void stat(const std::string& key, i64 value) {
    for (auto& [k, v] : stats)
      if (k == key) {
        v = value;
        return;
      }
    stats.emplace_back(key, value);
  }
};

// Instance k of an audit draws from its own stream, so results do not depend
// on how instances are split across workers.
inline std::mt19937_64 instance_rng(std::uint64_t seed, std::uint64_t k) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(k),
                    static_cast<std::uint32_t>(k >> 32)};
  return std::mt19937_64(seq);
}

// Runs fn(state, k) for k < count; one State per worker.
template <class State, class R>
std::vector<R> run_instances(std::size_t count, int workers, const std::function<State()>& make_state,
                             const std::function<R(State&, std::size_t)>& fn) {
  std::vector<R> out(count);
  workers = std::max(1, std::min<int>(workers, static_cast<int>(std::max<std::size_t>(count, 1))));
  auto body = [&](int w) {
    State st = make_state();
    for (std::size_t k = static_cast<std::size_t>(w); k < count; k += static_cast<std::size_t>(workers)) out[k] = fn(st, k);
  };
  if (workers == 1) {
    body(0);
    return out;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(body, w);
  for (auto& t : pool) t.join();
  return out;
}

class Stopwatch {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

inline Slope random_slope(std::mt19937_64& rng, i64 h) {
  while (true) {
    i64 p = static_cast<i64>(pick(rng, static_cast<std::size_t>(2 * h + 1))) - h;
    i64 q = static_cast<i64>(pick(rng, static_cast<std::size_t>(h + 1)));
    if (gcd(p, q) == 1 && (q > 0 || p == 1)) return Slope{p, q};
  }
}

inline HandleVertex random_handle_vertex(std::mt19937_64& rng, i64 h) { return {random_slope(rng, h), random_slope(rng, h)}; }

// ---------------------------------------------------------------------------
// Farey BFS oracle. Brute force over all slopes of height at most D, with
// edges found by testing every pair for determinant +-1.

class FareyOracle {
 public:
  explicit FareyOracle(i64 bound) : bound_(bound) {
    slopes_.push_back({1, 0});
    for (i64 q = 1; q <= bound; ++q)
      for (i64 p = -bound; p <= bound; ++p)
        if (gcd(p, q) == 1) slopes_.push_back({p, q});
    for (std::size_t i = 0; i < slopes_.size(); ++i) index_[slopes_[i]] = static_cast<int>(i);
    adj_.resize(slopes_.size());
    for (std::size_t i = 0; i < slopes_.size(); ++i)
      for (std::size_t j = i + 1; j < slopes_.size(); ++j) {
        i64 d = slopes_[i].p * slopes_[j].q - slopes_[i].q * slopes_[j].p;
        if (d == 1 || d == -1) {
          adj_[i].push_back(static_cast<int>(j));
          adj_[j].push_back(static_cast<int>(i));
        }
      }
  }

  i64 bound() const { return bound_; }
  std::size_t size() const { return slopes_.size(); }
  bool has(const Slope& s) const { return index_.count(s) > 0; }

  // BFS parents from a; dist -1 when unreachable.
  struct Tree {
    std::vector<int> dist, parent;
  };
  Tree bfs(const Slope& a) const {
    Tree t{std::vector<int>(slopes_.size(), -1), std::vector<int>(slopes_.size(), -1)};
    int s = index_.at(a);
    t.dist[s] = 0;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (int w : adj_[u])
        if (t.dist[w] < 0) {
          t.dist[w] = t.dist[u] + 1;
          t.parent[w] = u;
          queue.push_back(w);
        }
    }
    return t;
  }

  std::optional<int> distance(const Tree& t, const Slope& b) const {
    int d = t.dist[index_.at(b)];
    if (d < 0) return std::nullopt;
    return d;
  }

  std::vector<Slope> path(const Tree& t, const Slope& b) const {
    std::vector<Slope> out;
    for (int v = index_.at(b); v >= 0; v = t.parent[v]) out.push_back(slopes_[v]);
    std::reverse(out.begin(), out.end());
    return out;
  }

 private:
  i64 bound_;
  std::vector<Slope> slopes_;
  std::map<Slope, int> index_;
  std::vector<std::vector<int>> adj_;
};

inline bool path_within(const std::vector<Slope>& path, const Slope& a, const Slope& b, i64 bound) {
  if (path.empty() || path.front() != a || path.back() != b) return false;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (path[i].height() > bound) return false;
    if (i > 0) {
      i64 d = path[i - 1].p * path[i].q - path[i - 1].q * path[i].p;
      if (d != 1 && d != -1) return false;
    }
  }
  return true;
}

// Certified pairs: the BFS at D gives a checked path, and the BFS at 4D finds
// nothing shorter.
inline AuditReport audit_farey_oracle(i64 pair_bound = 8, i64 oracle_bound = 32) {
  Stopwatch sw;
  AuditReport r;
  r.name = "farey-oracle";
  r.params = {{"pair_bound", pair_bound}, {"oracle_bound", oracle_bound}, {"margin_bound", 4 * oracle_bound}};
  FareyOracle near(oracle_bound), wide(4 * oracle_bound);
  std::vector<Slope> pts;
  pts.push_back({1, 0});
  for (i64 q = 1; q <= pair_bound; ++q)
    for (i64 p = -pair_bound; p <= pair_bound; ++p)
      if (gcd(p, q) == 1) pts.push_back({p, q});
  std::size_t uncertified = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto tn = near.bfs(pts[i]), tw = wide.bfs(pts[i]);
    for (std::size_t j = i; j < pts.size(); ++j) {
      ++r.samples;
      auto dn = near.distance(tn, pts[j]);
      auto dw = wide.distance(tw, pts[j]);
      bool certified = dn && dw && *dw == *dn &&
                       path_within(near.path(tn, pts[j]), pts[i], pts[j], oracle_bound) &&
                       static_cast<int>(near.path(tn, pts[j]).size()) == *dn + 1;
      if (!certified) {
        ++uncertified;
        r.fail("uncertified pair " + pts[i].str() + " " + pts[j].str());
        continue;
      }
      int got = farey_distance(pts[i], pts[j]);
      if (got != *dn)
        r.fail(pts[i].str() + " " + pts[j].str() + ": farey_distance " + std::to_string(got) + ", oracle " + std::to_string(*dn));
    }
  }
  r.stat("points", static_cast<i64>(pts.size()));
  r.stat("uncertified", static_cast<i64>(uncertified));
  r.seconds = sw.seconds();
  return r;
}

inline AuditReport audit_farey_geodesics(std::size_t pairs = 1000, i64 bound = 32, std::uint64_t seed = 7) {
  Stopwatch sw;
  AuditReport r;
  r.name = "farey-geodesics";
  r.params = {{"pairs", static_cast<i64>(pairs)}, {"bound", bound}, {"seed", static_cast<i64>(seed)}};
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < pairs; ++k) {
    Slope a = random_slope(rng, bound), b = random_slope(rng, bound);
    ++r.samples;
    auto path = farey_geodesic(a, b);
    bool ok = !path.empty() && path.front() == a && path.back() == b &&
              static_cast<int>(path.size()) - 1 == farey_distance(a, b);
    for (std::size_t i = 0; ok && i + 1 < path.size(); ++i) ok = is_farey_edge(path[i], path[i + 1]);
    if (!ok) r.fail("geodesic " + a.str() + " -> " + b.str());
  }
  r.seconds = sw.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// Surface model fixtures.

inline AuditReport audit_model(i64 chart_bound = 5) {
  Stopwatch sw;
  AuditReport r;
  r.name = "model";
  r.params = {{"chart_bound", chart_bound}};
  const SurfaceModel& m = SurfaceModel::get();
  const HandleSystem& h = HandleSystem::standard();
  ++r.samples;
  ModelReport mr = validate_surface_model(SurfaceModel::triangle_table());
  if (!mr.ok || mr.cover_genus != 2) r.fail("surface model does not validate");
  ++r.samples;
  PantsVertex p0 = base_vertex();
  Weights total(m.q.size(), 0);
  for (const auto& c : p0.curves)
    for (std::size_t i = 0; i < c.size(); ++i) total[i] += c[i];
  if (normalize_multicurve(total).components.size() != 3) r.fail("base decomposition does not trace to 3 components");
  ++r.samples;
  auto pieces = cut_along(multicurve_of({h.q()}));
  bool handles = pieces.size() == 2;
  for (const auto& p : pieces) handles = handles && p.genus == 1 && p.boundaries == 1 && p.complexity == 1;
  if (!handles) r.fail("cutting along q does not give two handles");
  for (int j : {1, 2})
    for (i64 q = 0; q <= chart_bound; ++q)
      for (i64 p = -chart_bound; p <= chart_bound; ++p) {
        if (gcd(p, q) != 1 || (q == 0 && p != 1)) continue;
        ++r.samples;
        Slope s{p, q};
        if (h.window(j).slope_of(h.curve(j, s)) != s) r.fail("chart round trip fails at " + s.str() + " in window " + std::to_string(j));
      }
  r.seconds = sw.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// Projection audits.

inline AuditReport audit_projection_identity(std::size_t count = 200, i64 height = 8, std::uint64_t seed = 7) {
  Stopwatch sw;
  AuditReport r;
  r.name = "projection-identity";
  r.params = {{"vertices", static_cast<i64>(count)}, {"height", height}, {"seed", static_cast<i64>(seed)}};
  const HandleSystem& h = HandleSystem::standard();
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < count; ++k) {
    HandleVertex hv = random_handle_vertex(rng, height);
    ++r.samples;
    auto pi = project_to_handle(h.vertex(hv).sorted_curves(), h);
    if (pi.size() != 1 || pi[0] != hv) r.fail("projection of " + hv.str() + " is not itself");
  }
  r.seconds = sw.seconds();
  return r;
}

// Disjoint footprint pairs come from single pants decompositions met along
// random walks.
inline AuditReport audit_lemma4(std::size_t samples = 500, i64 bound = 8, std::uint64_t seed = 7) {
  Stopwatch sw;
  AuditReport r;
  r.name = "lemma4";
  r.params = {{"samples_per_window", static_cast<i64>(samples)}, {"bound", bound}, {"seed", static_cast<i64>(seed)}};
  const HandleSystem& h = HandleSystem::standard();
  BoundedPantsGraph g(bound);
  int base = g.intern(base_vertex());
  i64 waves_pairs = 0, adjacent = 0;
  for (int j : {1, 2}) {
    std::size_t taken = 0;
    std::set<int> seen;
    for (std::uint64_t walk = 0; taken < samples && walk < 10000; ++walk) {
      auto ids = random_walk_ids(g, base, 8, seed * 1000 + walk);
      for (int id : ids) {
        if (taken >= samples || !seen.insert(id).second) continue;
        auto fp = footprints(g.vertex(id).sorted_curves(), j, h);
        for (std::size_t a = 0; a < fp.size() && taken < samples; ++a)
          for (std::size_t b = a + 1; b < fp.size() && taken < samples; ++b) {
            ++taken;
            ++r.samples;
            const Footprint &x = fp[a], &y = fp[b];
            if (!x.is_curve && !y.is_curve) ++waves_pairs;
            std::string where = "window " + std::to_string(j) + " " + x.projection.str() + " " + y.projection.str();
            int gap = lemma4_gap(x, y);
            if (gap != 0 && gap != 1) {
              r.fail("gap " + std::to_string(gap) + " at " + where);
              continue;
            }
            if (gap == 0 && x.projection != y.projection) r.fail("gap 0 with distinct projections at " + where);
            if (gap == 1) {
              ++adjacent;
              if (!is_farey_edge(x.projection, y.projection)) r.fail("gap 1 without Farey adjacency at " + where);
              if (closed_intersection(h.curve(j, x.projection), h.curve(j, y.projection)) != 1)
                r.fail("gap 1 but curves do not meet once at " + where);
            }
            if ((x.is_curve || y.is_curve) && gap != 0) r.fail("curve footprint with nonzero gap at " + where);
          }
      }
    }
    if (taken < samples) r.fail("only " + std::to_string(taken) + " pairs found in window " + std::to_string(j));
  }
  r.stat("wave_pairs", waves_pairs);
  r.stat("adjacent_pairs", adjacent);
  r.seconds = sw.seconds();
  return r;
}

// Paths are random walks from a subgraph vertex, reversed so they end there.
inline std::vector<PantsVertex> reversed_walk(BoundedPantsGraph& g, std::mt19937_64& rng, int max_len, i64 height) {
  const HandleSystem& h = HandleSystem::standard();
  HandleVertex hv = random_handle_vertex(rng, height);
  int len = 1 + static_cast<int>(pick(rng, static_cast<std::size_t>(max_len)));
  auto ids = random_walk_ids(g, g.intern(h.vertex(hv)), len, rng());
  std::reverse(ids.begin(), ids.end());
  std::vector<PantsVertex> path;
  for (int id : ids) path.push_back(g.vertex(id));
  return path;
}

struct Theorem2Outcome {
  std::vector<std::string> failures;
  int length = 0, total = 0;
  int two_steps = 0, flagged = 0;
  std::array<int, 3> branches{};
};

inline Theorem2Outcome check_trace(const std::vector<PantsVertex>& path) {
  Theorem2Outcome o;
  o.length = static_cast<int>(path.size()) - 1;
  WaypointTrace t = theorem2_project_path(path);
  o.failures = t.falsifications;
  o.total = t.total();
  int prev = t.start;
  for (std::size_t s = 0; s < t.steps.size(); ++s) {
    const TraceStep& st = t.steps[s];
    if (st.j != 1 && st.j != 2) o.failures.push_back("step length " + std::to_string(st.j));
    if (st.from != prev || st.to - st.from != st.j) o.failures.push_back("step indices do not chain");
    if (st.dq > st.j) o.failures.push_back("step bound " + std::to_string(st.dq) + " > " + std::to_string(st.j));
    if (handle_distance(t.waypoints[s], t.waypoints[s + 1]) != st.dq) o.failures.push_back("recorded step bound is not the product distance");
    if (st.j == 2) ++o.two_steps;
    ++o.branches[static_cast<std::size_t>(st.branch)];
    if (st.intermediate && !st.intermediate_in_projection) ++o.flagged;
    prev = st.to;
  }
  if (prev != o.length) o.failures.push_back("trace does not reach the end of the path");
  if (o.total > o.length) o.failures.push_back("telescoped total exceeds path length");
  return o;
}

inline AuditReport audit_theorem2(std::size_t paths = 1000, int max_len = 8, i64 bound = 8, std::uint64_t seed = 7, int workers = 1) {
  Stopwatch sw;
  AuditReport r;
  r.name = "theorem2";
  r.params = {{"paths", static_cast<i64>(paths)}, {"max_len", max_len}, {"bound", bound}, {"seed", static_cast<i64>(seed)}};
  auto out = run_instances<BoundedPantsGraph, Theorem2Outcome>(
      paths, workers, [&] { return BoundedPantsGraph(bound); },
      [&](BoundedPantsGraph& g, std::size_t k) {
        auto rng = instance_rng(seed, k);
        return check_trace(reversed_walk(g, rng, max_len, 3));
      });
  i64 two = 0, flagged = 0;
  std::array<i64, 3> branches{};
  for (std::size_t k = 0; k < out.size(); ++k) {
    ++r.samples;
    two += out[k].two_steps;
    for (std::size_t b = 0; b < 3; ++b) branches[b] += out[k].branches[b];
    flagged += out[k].flagged;
    for (const auto& f : out[k].failures) r.fail("path " + std::to_string(k) + ": " + f);
  }
  r.stat("two_steps", two);
  r.stat("flagged_intermediates", flagged);
  for (StepBranch b : {StepBranch::Lemma5, StepBranch::Lemma6, StepBranch::Direct})
    r.stat(std::string("steps_") + branch_name(b), branches[static_cast<std::size_t>(b)]);
  r.seconds = sw.seconds();
  return r;
}

// Random walks almost never trigger the two-step branch, so this audit hunts
// for moves nu0 -> nu1 where every projection of nu1 differs from some w0 in
// both handles, extends them by a geodesic third vertex, and traces the triple.
inline AuditReport audit_two_step(std::size_t triples = 40, i64 bound = 8, std::uint64_t seed = 7) {
  Stopwatch sw;
  AuditReport r;
  r.name = "two-step";
  r.params = {{"triples", static_cast<i64>(triples)}, {"bound", bound}, {"seed", static_cast<i64>(seed)}};
  BoundedPantsGraph g(bound);
  ProjectionCache cache;
  std::set<int> seen;
  i64 flagged = 0, walks = 0;
  for (std::uint64_t w = 0; r.samples < triples && w < 2000; ++w) {
    ++walks;
    for (int v : random_walk_ids(g, g.intern(base_vertex()), 6, seed * 1000 + w)) {
      if (r.samples >= triples || !seen.insert(v).second) continue;
      const auto pi0 = cache.of(g.vertex(v));
      for (int u : g.neighbors(v)) {
        if (r.samples >= triples) break;
        const auto pi1 = cache.of(g.vertex(u));
        std::optional<HandleVertex> w0;
        for (const auto& a : pi0) {
          bool apart = std::none_of(pi1.begin(), pi1.end(), [&](const HandleVertex& b) { return b.s1 == a.s1 || b.s2 == a.s2; });
          if (apart) {
            w0 = a;
            break;
          }
        }
        if (!w0) continue;
        for (int x : g.neighbors(u)) {
          if (x == v || g.adjacent(v, x)) continue;
          ++r.samples;
          std::vector<PantsVertex> path{g.vertex(v), g.vertex(u), g.vertex(x)};
          WaypointTrace t = trace_from(path, 0, *w0, cache);
          std::string tag = "triple " + std::to_string(r.samples) + " from " + w0->str();
          for (const auto& f : t.falsifications) r.fail(tag + ": " + f);
          if (!t.ok()) break;
          if (t.steps.size() != 1 || t.steps[0].branch != StepBranch::Lemma6) r.fail(tag + ": two-step branch not taken");
          else if (!t.steps[0].intermediate_in_projection) ++flagged;
          break;
        }
      }
    }
  }
  if (r.samples < triples) r.fail("only " + std::to_string(r.samples) + " triples found");
  r.stat("walks", walks);
  r.stat("flagged_intermediates", flagged);
  r.seconds = sw.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// Total geodesy, bounded.

// Distance in the Farey graph restricted to slopes of height <= bound.
inline std::optional<int> bounded_farey_distance(const Slope& a, const Slope& b, i64 bound, int cap) {
  if (a == b) return 0;
  std::map<Slope, int> dist{{a, 0}};
  std::deque<Slope> queue{a};
  while (!queue.empty()) {
    Slope u = queue.front();
    queue.pop_front();
    if (dist[u] >= cap) continue;
    for (const Slope& w : farey_neighbors(u, bound)) {
      if (!dist.emplace(w, dist[u] + 1).second) continue;
      if (w == b) return dist[u] + 1;
      queue.push_back(w);
    }
  }
  return std::nullopt;
}

struct PairOutcome {
  HandleVertex a, b;
  int dq = 0;
  std::optional<int> ambient;
  std::vector<std::string> falsifications, inconsistencies;
  std::uint64_t geodesics = 0;
  bool budget_exceeded = false;
};

inline PairOutcome check_pair(const HandleVertex& a, const HandleVertex& b, i64 bound, std::uint64_t budget) {
  const HandleSystem& h = HandleSystem::standard();
  PairOutcome o{a, b, handle_distance(a, b), {}, {}, {}, 0, false};
  BoundedPantsGraph g(bound);
  int x = g.intern(h.vertex(a)), y = g.intern(h.vertex(b));
  const int radius = 2;
  GeodesicSummary s = bounded_geodesics(g, x, y, radius, budget);
  o.ambient = s.distance;
  o.geodesics = s.geodesic_count;
  o.budget_exceeded = s.budget_exceeded;
  std::string tag = a.str() + " " + b.str();
  if (s.distance && *s.distance < o.dq) o.falsifications.push_back("shortcut of length " + std::to_string(*s.distance) + " for " + tag);
  if (!s.distance || *s.distance > o.dq) o.inconsistencies.push_back("product path not seen in the bounded graph for " + tag);
  for (const auto& layer : s.layers)
    for (int id : layer)
      if (!h.in_subgraph(g.vertex(id))) {
        o.falsifications.push_back("geodesic leaves the subgraph for " + tag);
        return o;
      }
  return o;
}

// Pairs come from random walks in the product of bounded Farey graphs; a walk
// of k steps is kept when it lands at product distance k and the bounded
// product distance agrees.
inline std::vector<std::pair<HandleVertex, HandleVertex>> sample_handle_pairs(std::size_t count, int dq_max, i64 bound,
                                                                               std::uint64_t seed) {
  std::vector<std::pair<HandleVertex, HandleVertex>> out;
  std::mt19937_64 rng(seed);
  while (out.size() < count) {
    // Stratified by target distance so large d_Q is not swamped.
    int steps = 1 + static_cast<int>(out.size() % static_cast<std::size_t>(dq_max));
    HandleVertex a = random_handle_vertex(rng, 2), b = a;
    for (int s = 0; s < steps; ++s) {
      Slope& c = pick(rng, 2) == 0 ? b.s1 : b.s2;
      auto nb = farey_neighbors(c, bound);
      c = nb[pick(rng, nb.size())];
    }
    int dq = handle_distance(a, b);
    if (dq != steps) continue;
    auto d1 = bounded_farey_distance(a.s1, b.s1, bound, dq_max), d2 = bounded_farey_distance(a.s2, b.s2, bound, dq_max);
    if (!d1 || !d2 || *d1 + *d2 != dq) continue;
    out.emplace_back(a, b);
  }
  return out;
}

inline AuditReport audit_total_geodesy(std::size_t pairs = 100, int dq_max = 5, i64 bound = 8, std::uint64_t seed = 7,
                                       std::uint64_t budget = 1000000, int workers = 1) {
  Stopwatch sw;
  AuditReport r;
  r.name = "total-geodesy";
  r.params = {{"pairs", static_cast<i64>(pairs)}, {"dq_max", dq_max}, {"bound", bound}, {"seed", static_cast<i64>(seed)},
              {"budget", static_cast<i64>(budget)}, {"exact_up_to", 5}};
  if (dq_max > 5) throw std::invalid_argument("bounded search is exact only up to distance 5");
  auto sample = sample_handle_pairs(pairs, dq_max, bound, seed);
  struct None {};
  auto out = run_instances<None, PairOutcome>(
      sample.size(), workers, [] { return None{}; },
      [&](None&, std::size_t k) { return check_pair(sample[k].first, sample[k].second, bound, budget); });
  std::map<int, i64> by_dq;
  for (const auto& o : out) {
    ++r.samples;
    ++by_dq[o.dq];
    r.budget_exceeded = r.budget_exceeded || o.budget_exceeded;
    for (const auto& f : o.falsifications) r.fail(f);
    for (const auto& f : o.inconsistencies) r.fail(f);
  }
  for (auto [d, c] : by_dq) r.stat("pairs_at_dq_" + std::to_string(d), c);
  r.seconds = sw.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// Detours: endpoints in the subgraph, an interior excursion, then shortened.

struct DetourOutcome {
  int input_length = 0, output_length = 0;
  std::vector<std::string> failures;
};

inline std::vector<int> path_back_to_center(BoundedPantsGraph& g, const Ball& ball, int target) {
  std::vector<int> out{target};
  while (out.back() != ball.center) {
    int here = out.back(), d = *ball.distance_to(here);
    for (int y : g.neighbors(here)) {
      auto dy = ball.distance_to(y);
      if (dy && *dy == d - 1) {
        out.push_back(y);
        break;
      }
    }
  }
  return out;
}

inline std::vector<PantsVertex> build_detour(BoundedPantsGraph& g, std::mt19937_64& rng) {
  const HandleSystem& h = HandleSystem::standard();
  auto inside = [&](int id) { return h.in_subgraph(g.vertex(id)); };
  std::vector<int> ids{g.intern(h.vertex(random_handle_vertex(rng, 2)))};
  int prefix = static_cast<int>(pick(rng, 3));
  for (int s = 0; s < prefix; ++s) {
    std::vector<int> in;
    for (int y : g.neighbors(ids.back()))
      if (inside(y)) in.push_back(y);
    ids.push_back(in[pick(rng, in.size())]);
  }
  std::vector<int> out;
  for (int y : g.neighbors(ids.back()))
    if (!inside(y)) out.push_back(y);
  ids.push_back(out[pick(rng, out.size())]);
  int extra = static_cast<int>(pick(rng, 3));
  for (int s = 0; s < extra; ++s) {
    auto nb = g.neighbors(ids.back());
    ids.push_back(nb[pick(rng, nb.size())]);
  }
  // Return to the subgraph through a ball of radius 2, backing up if needed.
  while (true) {
    Ball ball = grow_ball(g, ids.back(), 2);
    std::vector<int> targets;
    for (const auto& layer : ball.layers)
      for (int y : layer)
        if (inside(y)) targets.push_back(y);
    if (!targets.empty()) {
      auto back = path_back_to_center(g, ball, targets[pick(rng, targets.size())]);
      for (auto it = back.rbegin() + 1; it != back.rend(); ++it) ids.push_back(*it);
      break;
    }
    ids.push_back(ids[ids.size() - 2]);
  }
  std::vector<PantsVertex> path;
  for (int id : ids) path.push_back(g.vertex(id));
  return path;
}

inline DetourOutcome check_detour(const std::vector<PantsVertex>& path) {
  DetourOutcome o;
  o.input_length = static_cast<int>(path.size()) - 1;
  ShortenResult s = theorem1_shorten_path(path);
  o.failures = s.trace.falsifications;
  if (!o.failures.empty()) return o;
  o.output_length = static_cast<int>(s.path.size()) - 1;
  if (o.output_length >= o.input_length) o.failures.push_back("not strictly shorter");
  if (s.path.front().key() != path.front().key() || s.path.back().key() != path.back().key())
    o.failures.push_back("endpoints changed");
  for (std::size_t i = 0; i + 1 < s.path.size(); ++i)
    if (!is_elementary_move(s.path[i], s.path[i + 1])) {
      o.failures.push_back("step " + std::to_string(i) + " is not an elementary move");
      break;
    }
  return o;
}

inline AuditReport audit_shortening(std::size_t detours = 200, i64 bound = 8, std::uint64_t seed = 7, int workers = 1) {
  Stopwatch sw;
  AuditReport r;
  r.name = "shortening";
  r.params = {{"detours", static_cast<i64>(detours)}, {"bound", bound}, {"seed", static_cast<i64>(seed)}};
  auto out = run_instances<BoundedPantsGraph, DetourOutcome>(
      detours, workers, [&] { return BoundedPantsGraph(bound); },
      [&](BoundedPantsGraph& g, std::size_t k) {
        auto rng = instance_rng(seed, k);
        return check_detour(build_detour(g, rng));
      });
  i64 longest = 0, saved = 0;
  for (std::size_t k = 0; k < out.size(); ++k) {
    ++r.samples;
    longest = std::max<i64>(longest, out[k].input_length);
    if (out[k].failures.empty()) saved += out[k].input_length - out[k].output_length;
    for (const auto& f : out[k].failures) r.fail("detour " + std::to_string(k) + ": " + f);
  }
  r.stat("longest_detour", longest);
  r.stat("edges_saved", saved);
  r.seconds = sw.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// Products of convex subsets.

inline FiniteGraph random_connected_graph(std::mt19937_64& rng, int n, int extra) {
  FiniteGraph g(n);
  for (int v = 1; v < n; ++v) g.add_edge(v, static_cast<int>(pick(rng, static_cast<std::size_t>(v))));
  for (int e = 0; e < extra; ++e) {
    int u = static_cast<int>(pick(rng, static_cast<std::size_t>(n))), v = static_cast<int>(pick(rng, static_cast<std::size_t>(n)));
    if (u != v) g.add_edge(u, v);
  }
  return g;
}

// Closure under adding every vertex on a geodesic between two members.
inline std::vector<int> geodesic_hull(const FiniteGraph& g, std::vector<int> s) {
  std::vector<std::vector<int>> d;
  for (int v = 0; v < g.n; ++v) d.push_back(g.bfs(v));
  std::vector<char> in(static_cast<std::size_t>(g.n), 0);
  for (int v : s) in[v] = 1;
  for (bool grew = true; grew;) {
    grew = false;
    for (int a = 0; a < g.n; ++a)
      for (int b = 0; b < g.n; ++b) {
        if (!in[a] || !in[b]) continue;
        for (int v = 0; v < g.n; ++v)
          if (!in[v] && d[a][v] + d[v][b] == d[a][b]) in[v] = 1, grew = true;
      }
  }
  s.clear();
  for (int v = 0; v < g.n; ++v)
    if (in[v]) s.push_back(v);
  return s;
}

inline std::vector<int> random_convex_subset(const FiniteGraph& g, std::mt19937_64& rng) {
  // Half the time a random subset that happens to be convex, else a hull.
  for (int t = 0; t < 20 && pick(rng, 2) == 0; ++t) {
    std::vector<int> s;
    for (int v = 0; v < g.n; ++v)
      if (pick(rng, 2)) s.push_back(v);
    if (!s.empty() && check_convex(g, s).convex) return s;
  }
  std::vector<int> seed{static_cast<int>(pick(rng, static_cast<std::size_t>(g.n))), static_cast<int>(pick(rng, static_cast<std::size_t>(g.n)))};
  return geodesic_hull(g, seed);
}

inline AuditReport audit_lemma8(std::size_t trials = 100, std::uint64_t seed = 7) {
  Stopwatch sw;
  AuditReport r;
  r.name = "lemma8";
  r.params = {{"trials", static_cast<i64>(trials)}, {"seed", static_cast<i64>(seed)}};
  i64 proper = 0;
  for (std::size_t k = 0; k < trials; ++k) {
    auto rng = instance_rng(seed, k);
    int n1 = 3 + static_cast<int>(pick(rng, 6)), n2 = 3 + static_cast<int>(pick(rng, 6));
    FiniteGraph g1 = random_connected_graph(rng, n1, static_cast<int>(pick(rng, 4)));
    FiniteGraph g2 = random_connected_graph(rng, n2, static_cast<int>(pick(rng, 4)));
    auto s1 = random_convex_subset(g1, rng), s2 = random_convex_subset(g2, rng);
    ++r.samples;
    if (!check_convex(g1, s1).convex || !check_convex(g2, s2).convex) {
      r.fail("trial " + std::to_string(k) + ": factor subset not convex");
      continue;
    }
    if (static_cast<int>(s1.size()) < n1 || static_cast<int>(s2.size()) < n2) ++proper;
    FiniteGraph prod = cartesian_product(g1, g2);
    std::vector<int> s;
    for (int a : s1)
      for (int b : s2) s.push_back(a * n2 + b);
    auto rep = check_convex(prod, s);
    if (!rep.convex) r.fail("trial " + std::to_string(k) + ": product subset not convex");
  }
  r.stat("proper_subsets", proper);
  r.seconds = sw.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// Planes.

inline const UnimodularMatrix& default_plane_matrix() {
  static const UnimodularMatrix m = UnimodularMatrix::make(3, -1, 1, 0);
  return m;
}

// Grid metric against both the l1 formula and the product of Farey distances.
inline AuditReport audit_plane_grid(const UnimodularMatrix& m1, const UnimodularMatrix& m2, int extent) {
  Stopwatch sw;
  AuditReport r;
  r.name = "plane-grid";
  r.params = {{"extent", extent}};
  GridPlane plane = build_grid_plane(periodic_axis(m1, extent), periodic_axis(m2, extent));
  for (int u = 0; u < plane.graph.n; ++u) {
    auto d = plane.graph.bfs(u);
    for (int v = u; v < plane.graph.n; ++v) {
      ++r.samples;
      int l1 = std::abs(u / plane.cols - v / plane.cols) + std::abs(u % plane.cols - v % plane.cols);
      if (d[v] != l1 || product_distance(plane.labels[u], plane.labels[v]) != l1)
        r.fail("grid distance mismatch at " + std::to_string(u) + "," + std::to_string(v));
    }
  }
  r.stat("vertices", plane.graph.n);
  r.stat("edges", static_cast<i64>(plane.graph.edges.size()));
  r.seconds = sw.seconds();
  return r;
}

inline AuditReport audit_plane_translation(const UnimodularMatrix& m1, const UnimodularMatrix& m2, int extent) {
  Stopwatch sw;
  AuditReport r;
  r.name = "plane-translation";
  r.params = {{"extent", extent}};
  PlaneVerification pv = invariant_plane_window(m1, m2, extent);
  ++r.samples;
  if (!pv.translation_ok) r.fail("action is not a translation of the window");
  if (pv.square_shift != std::pair(2 * pv.shift.first, 2 * pv.shift.second)) r.fail("square shift is not twice the shift");
  if (pv.shift.first == 0 || pv.shift.second == 0) r.fail("zero shift");
  r.stat("shift_1", pv.shift.first);
  r.stat("shift_2", pv.shift.second);
  r.stat("square_shift_1", pv.square_shift.first);
  r.stat("square_shift_2", pv.square_shift.second);
  r.seconds = sw.seconds();
  return r;
}

// A side x side block of the plane realized in the subgraph; distances in the
// bounded pants graph must equal the l1 distance. Pairs at l1 distance beyond
// the exact range only need the absence of shorter paths.
inline AuditReport audit_plane_embedding(const UnimodularMatrix& m1, const UnimodularMatrix& m2, int side = 4, i64 bound = 8) {
  Stopwatch sw;
  AuditReport r;
  r.name = "plane-embedding";
  r.params = {{"side", side}, {"bound", bound}};
  const HandleSystem& h = HandleSystem::standard();
  // The block with the smallest slope heights among all windows of the axes.
  auto block = [&](const UnimodularMatrix& m) {
    PeriodicAxis ax(m);
    std::vector<Slope> best;
    i64 best_h = 0;
    for (int start = -side - 2; start <= 2; ++start) {
      auto seg = ax.segment(start, start + side - 1);
      i64 hmax = 0;
      for (const auto& s : seg) hmax = std::max(hmax, s.height());
      if (best.empty() || hmax < best_h) best = seg, best_h = hmax;
    }
    return best;
  };
  auto a1 = block(m1), a2 = block(m2);
  i64 hmax = 0;
  for (const auto& s : a1) hmax = std::max(hmax, s.height());
  for (const auto& s : a2) hmax = std::max(hmax, s.height());
  r.stat("max_height", hmax);
  if (hmax > bound) {
    r.fail("axis block does not fit in the bound");
    return r;
  }
  BoundedPantsGraph g(bound);
  std::vector<int> ids;
  std::vector<std::pair<int, int>> pos;
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j) {
      ids.push_back(g.intern(h.vertex({a1[i], a2[j]})));
      pos.emplace_back(i, j);
    }
  const int radius = 2, exact = 2 * radius + 1;
  for (std::size_t u = 0; u < ids.size(); ++u)
    for (std::size_t v = u + 1; v < ids.size(); ++v) {
      ++r.samples;
      int l1 = std::abs(pos[u].first - pos[v].first) + std::abs(pos[u].second - pos[v].second);
      GeodesicSummary s = bounded_geodesics(g, ids[u], ids[v], radius);
      std::string tag = std::to_string(u) + "," + std::to_string(v);
      if (l1 <= exact) {
        if (!s.distance || *s.distance != l1) r.fail("distance differs from l1 at " + tag);
      } else if (s.distance) {
        r.fail("path shorter than " + std::to_string(exact + 1) + " at " + tag);
      }
    }
  r.stat("vertices", static_cast<i64>(ids.size()));
  r.stat("graph_vertices", static_cast<i64>(g.size()));
  r.seconds = sw.seconds();
  return r;
}

}  // namespace pants
