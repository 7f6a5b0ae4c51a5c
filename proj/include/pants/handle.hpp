#pragma once

// Projections to the two handles cut off by the separating curve q, and the
// path projection and shortening built from them.
//
// Y1 contains P0, P1, P2 in the quotient and Y2 contains P3, P4, P5. Chart of
// Y1: a1 = c0 at 0/1, b1 = c1 at 1/0. Chart of Y2: a2 = c4 at 0/1, b2 = c3 at
// 1/0. Vertices of the subgraph of decompositions containing q are pairs of
// slopes, and its metric is the Cartesian product metric.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "pants/graph.hpp"
#include "pants/pants.hpp"

namespace pants {

inline bool slope_less(const Slope& a, const Slope& b) { return std::pair(a.q, a.p) < std::pair(b.q, b.p); }

struct HandleVertex {
  Slope s1{0, 1}, s2{0, 1};
  friend bool operator==(const HandleVertex&, const HandleVertex&) = default;
  friend bool operator<(const HandleVertex& a, const HandleVertex& b) {
    return std::tuple(a.s1.q, a.s1.p, a.s2.q, a.s2.p) < std::tuple(b.s1.q, b.s1.p, b.s2.q, b.s2.p);
  }
  ProductVertex product() const { return {s1, s2}; }
  std::string str() const { return "(" + s1.str() + ", " + s2.str() + ")"; }
};

inline int handle_distance(const HandleVertex& a, const HandleVertex& b) { return product_distance(a.product(), b.product()); }

class HandleSystem {
 public:
  static const HandleSystem& standard() {
    static const HandleSystem h;
    return h;
  }

  const Weights& q() const { return q_; }
  const Window& window(int j) const { return j == 1 ? y1_ : y2_; }
  Weights curve(int j, const Slope& s) const { return window(j).curve(s); }

  bool in_subgraph(const PantsVertex& v) const { return v.contains(q_); }

  // The marked decomposition {curve(s1), q, curve(s2)}.
  PantsVertex vertex(const HandleVertex& h) const {
    auto part = [](const Window& w, const Slope& s) {
      Realization r = realize(*w.std, apply_mat(w.chart, quotient_vec(w.kind(), s)));
      BraidWord word = r.word;
      if (r.seed != w.std->removed_seed) word = concat(word, w.std->psi);
      return word;
    };
    return marked_vertex(PantsType::S, concat(part(y1_, h.s1), part(y2_, h.s2)));
  }

  std::optional<HandleVertex> handle_vertex_of(const PantsVertex& v) const {
    if (!in_subgraph(v)) return std::nullopt;
    std::optional<Slope> a, b;
    for (const auto& c : v.curves) {
      if (c == q_) continue;
      if (y1_.contains(c)) a = y1_.slope_of(c);
      else if (y2_.contains(c)) b = y2_.slope_of(c);
    }
    if (!a || !b) throw std::logic_error("decomposition containing q without a curve in each handle");
    return HandleVertex{*a, *b};
  }

 private:
  HandleSystem() {
    const auto& m = SurfaceModel::get();
    q_ = m.q;
    y1_ = Window{&std_window(PantsType::S, 0), {}, {}, {q_}, PunctureSet{0b000111}};
    y2_ = Window{&std_window(PantsType::S, 2), {}, UnimodularMatrix{0, -1, 1, 0}, {q_}, PunctureSet{0b111000}};
  }
  Weights q_;
  Window y1_, y2_;
};

// One footprint of a curve on a handle, with its projection.
struct Footprint {
  Weights source;
  int window = 1;
  bool is_curve = false;
  Slope projection;
  std::optional<WaveDescriptor> wave;
  friend bool operator<(const Footprint& a, const Footprint& b) {
    return std::tuple(a.window, a.projection.q, a.projection.p, a.is_curve, a.source) <
           std::tuple(b.window, b.projection.q, b.projection.p, b.is_curve, b.source);
  }
};

inline std::vector<Footprint> footprints(const std::vector<Weights>& curves, int j, const HandleSystem& h = HandleSystem::standard()) {
  std::vector<Footprint> out;
  for (const auto& c : curves) {
    FootprintSet fs = footprints_of_curve(c, h.window(j), j);
    if (fs.inside) out.push_back({c, j, true, *fs.slope, std::nullopt});
    for (const auto& w : fs.waves) out.push_back({c, j, false, w.projection, w});
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Slope wave_projection(const WaveDescriptor& d) { return d.projection; }

using SlopeSet = std::vector<Slope>;  // sorted by slope_less, unique

inline SlopeSet project_to_window(const std::vector<Weights>& curves, int j, const HandleSystem& h = HandleSystem::standard()) {
  SlopeSet out;
  for (const auto& f : footprints(curves, j, h)) out.push_back(f.projection);
  std::sort(out.begin(), out.end(), slope_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// The displayed comprehension: empty as soon as either factor is empty.
inline std::vector<HandleVertex> combine(const SlopeSet& a, const SlopeSet& b) {
  std::vector<HandleVertex> out;
  for (const auto& x : a)
    for (const auto& y : b) out.push_back({x, y});
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<HandleVertex> project_to_handle(const std::vector<Weights>& curves, const HandleSystem& h = HandleSystem::standard()) {
  return combine(project_to_window(curves, 1, h), project_to_window(curves, 2, h));
}

// Projections of decompositions, memoised by curve set.
class ProjectionCache {
 public:
  explicit ProjectionCache(const HandleSystem& h = HandleSystem::standard()) : h_(h) {}
  const std::vector<HandleVertex>& of(const PantsVertex& v) {
    VertexKey k = v.key();
    auto it = memo_.find(k);
    if (it != memo_.end()) return it->second;
    return memo_.emplace(std::move(k), project_to_handle(v.sorted_curves(), h_)).first->second;
  }
  const HandleSystem& system() const { return h_; }

 private:
  const HandleSystem& h_;
  std::map<VertexKey, std::vector<HandleVertex>> memo_;
};

inline std::vector<Weights> common_curves(const std::vector<const PantsVertex*>& vs) {
  std::vector<Weights> out = vs.front()->sorted_curves();
  for (std::size_t i = 1; i < vs.size(); ++i) {
    auto other = vs[i]->sorted_curves();
    std::vector<Weights> keep;
    std::set_intersection(out.begin(), out.end(), other.begin(), other.end(), std::back_inserter(keep));
    out = std::move(keep);
  }
  return out;
}

// Farey distance between the projections of two disjoint footprints on one
// handle; the expected values are 0 and 1.
inline int lemma4_gap(const Footprint& a, const Footprint& b) {
  if (a.window != b.window) throw std::invalid_argument("footprints lie on different handles");
  if (a.source != b.source && closed_intersection(a.source, b.source) != 0)
    throw std::invalid_argument("footprints come from intersecting curves");
  return farey_distance(a.projection, b.projection);
}

struct Lemma5Result {
  bool hypothesis = false;              // some element shares a handle curve with w0
  std::optional<HandleVertex> refined;  // nearest element of the projection of nu1
  int distance = -1;
  bool shared_route_checked = false;    // the witness was at distance >= 2
  bool shared_route_ok = true;          // projection of nu0 n nu1 has an element within 1
};

inline Lemma5Result lemma5_core(const HandleVertex& w0, const std::vector<HandleVertex>& pi1,
                                const std::vector<Weights>& shared, const HandleSystem& h) {
  Lemma5Result r;
  std::optional<HandleVertex> witness;
  for (const auto& w : pi1)
    if (w.s1 == w0.s1 || w.s2 == w0.s2) {
      r.hypothesis = true;
      if (!witness || handle_distance(w0, w) < handle_distance(w0, *witness)) witness = w;
    }
  if (!r.hypothesis) return r;
  for (const auto& w : pi1) {
    int d = handle_distance(w0, w);
    if (!r.refined || d < r.distance) {
      r.refined = w;
      r.distance = d;
    }
  }
  if (handle_distance(w0, *witness) >= 2) {
    r.shared_route_checked = true;
    r.shared_route_ok = false;
    for (const auto& w : project_to_handle(shared, h))
      if (handle_distance(w0, w) <= 1) r.shared_route_ok = true;
  }
  return r;
}

inline Lemma5Result lemma5_refine(const HandleVertex& w0, const PantsVertex& nu0, const PantsVertex& nu1,
                                  const HandleSystem& h = HandleSystem::standard()) {
  if (!is_elementary_move(nu0, nu1)) throw std::invalid_argument("nu0 and nu1 are not one elementary move apart");
  auto pi0 = project_to_handle(nu0.sorted_curves(), h);
  if (!std::binary_search(pi0.begin(), pi0.end(), w0)) throw std::invalid_argument("w0 is not a projection of nu0");
  return lemma5_core(w0, project_to_handle(nu1.sorted_curves(), h), common_curves({&nu0, &nu1}), h);
}

struct Lemma6Result {
  std::vector<Weights> common;  // R
  std::vector<Footprint> on_y1, on_y2;
  bool ok = false;
  std::string failure;
};

inline Lemma6Result lemma6_core(const std::vector<Weights>& R, const HandleSystem& h) {
  Lemma6Result r;
  r.common = R;
  if (R.empty()) {
    r.failure = "the three decompositions share no curve";
    return r;
  }
  r.on_y1 = footprints(R, 1, h);
  r.on_y2 = footprints(R, 2, h);
  if (r.on_y1.empty()) r.failure = "common multicurve misses Y1";
  else if (r.on_y2.empty()) r.failure = "common multicurve misses Y2";
  else r.ok = true;
  return r;
}

inline bool is_length_two_geodesic(const PantsVertex& a, const PantsVertex& /*middle*/, const PantsVertex& c) {
  return a.key() != c.key() && !is_elementary_move(a, c);
}

inline Lemma6Result lemma6_witness(const PantsVertex& nu0, const PantsVertex& nu1, const PantsVertex& nu2,
                                   const HandleVertex& w0, const HandleSystem& h = HandleSystem::standard()) {
  if (!is_elementary_move(nu0, nu1) || !is_elementary_move(nu1, nu2))
    throw std::invalid_argument("consecutive decompositions are not elementary moves");
  if (!is_length_two_geodesic(nu0, nu1, nu2)) throw std::invalid_argument("triple is not a geodesic of length 2");
  auto pi0 = project_to_handle(nu0.sorted_curves(), h);
  if (!std::binary_search(pi0.begin(), pi0.end(), w0)) throw std::invalid_argument("w0 is not a projection of nu0");
  for (const auto& w : project_to_handle(nu1.sorted_curves(), h))
    if (w.s1 == w0.s1 || w.s2 == w0.s2) throw std::invalid_argument("some projection of nu1 shares a handle curve with w0");
  return lemma6_core(common_curves({&nu0, &nu1, &nu2}), h);
}

enum class StepBranch { Lemma5, Lemma6, Direct };

inline const char* branch_name(StepBranch b) {
  switch (b) {
    case StepBranch::Lemma5: return "lemma5";
    case StepBranch::Lemma6: return "lemma6";
    default: return "direct";
  }
}

struct TraceStep {
  int from = 0, to = 0;  // path indices
  int j = 1;
  int dq = 0;
  StepBranch branch = StepBranch::Lemma5;
  std::optional<HandleVertex> intermediate;  // proof-level vertex for two-step moves
  bool intermediate_in_projection = false;
  bool shared_route_checked = false;
};

struct WaypointTrace {
  int start = 0;
  std::vector<int> indices;
  std::vector<HandleVertex> waypoints;
  std::vector<TraceStep> steps;
  std::vector<std::string> falsifications;

  bool ok() const { return falsifications.empty(); }
  int total() const {
    int t = 0;
    for (const auto& s : steps) t += s.dq;
    return t;
  }
};

// Path validation shared by the trace and the shortening.
inline void require_path(const std::vector<PantsVertex>& path) {
  if (path.empty()) throw std::invalid_argument("path is empty");
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    if (!is_elementary_move(path[i], path[i + 1]))
      throw std::invalid_argument("path step " + std::to_string(i) + " is not an elementary move");
}

inline std::optional<HandleVertex> nearest(const HandleVertex& from, const std::vector<HandleVertex>& set, int limit) {
  std::optional<HandleVertex> best;
  int bd = limit + 1;
  for (const auto& w : set) {
    int d = handle_distance(from, w);
    if (d < bd) {
      best = w;
      bd = d;
    }
  }
  return best;
}

// Waypoints w_k in the projection of nu_k following the induction: a Lemma 5
// step when some projection of nu_{k+1} shares a handle curve with w_k,
// otherwise a two-step move through footprints of the common multicurve of
// three consecutive decompositions. If that triple is not a geodesic the
// statement is checked directly by searching the projection of nu_{k+2}.
inline WaypointTrace trace_from(const std::vector<PantsVertex>& path, int start, const HandleVertex& w_start,
                                ProjectionCache& cache) {
  const HandleSystem& h = cache.system();
  const int n = static_cast<int>(path.size()) - 1;
  WaypointTrace t;
  t.start = start;
  t.indices.push_back(start);
  t.waypoints.push_back(w_start);
  int k = start;
  HandleVertex wk = w_start;
  while (k < n) {
    const auto& pi1 = cache.of(path[k + 1]);
    Lemma5Result l5 = lemma5_core(wk, pi1, common_curves({&path[k], &path[k + 1]}), h);
    if (l5.shared_route_checked && !l5.shared_route_ok)
      t.falsifications.push_back("step " + std::to_string(k) + ": no projection of the shared multicurve within distance 1");
    if (l5.hypothesis) {
      if (l5.distance > 1) {
        t.falsifications.push_back("step " + std::to_string(k) + ": shared handle curve but nearest projection at distance " +
                                   std::to_string(l5.distance));
        return t;
      }
      TraceStep s{k, k + 1, 1, l5.distance, StepBranch::Lemma5, std::nullopt, false, l5.shared_route_checked};
      t.steps.push_back(s);
      wk = *l5.refined;
      ++k;
      t.indices.push_back(k);
      t.waypoints.push_back(wk);
      continue;
    }
    if (k == n - 1) {
      t.falsifications.push_back("step " + std::to_string(k) + ": no projection of the last decomposition within distance 1");
      return t;
    }
    const auto& pi2 = cache.of(path[k + 2]);
    TraceStep s{k, k + 2, 2, 0, StepBranch::Lemma6, std::nullopt, false, false};
    HandleVertex next;
    if (is_length_two_geodesic(path[k], path[k + 1], path[k + 2])) {
      Lemma6Result l6 = lemma6_core(common_curves({&path[k], &path[k + 1], &path[k + 2]}), h);
      if (!l6.ok) {
        t.falsifications.push_back("step " + std::to_string(k) + ": " + l6.failure);
        return t;
      }
      HandleVertex mid{l6.on_y1.front().projection, wk.s2};
      next = HandleVertex{l6.on_y1.front().projection, l6.on_y2.front().projection};
      s.intermediate = mid;
      s.intermediate_in_projection = std::binary_search(pi1.begin(), pi1.end(), mid);
      if (handle_distance(wk, mid) > 1 || handle_distance(mid, next) > 1)
        t.falsifications.push_back("step " + std::to_string(k) + ": footprint of the common multicurve is not adjacent");
      if (!std::binary_search(pi2.begin(), pi2.end(), next))
        t.falsifications.push_back("step " + std::to_string(k) + ": two-step waypoint is not a projection of its decomposition");
    } else {
      s.branch = StepBranch::Direct;
      auto found = nearest(wk, pi2, 2);
      if (!found) {
        t.falsifications.push_back("step " + std::to_string(k) + ": no projection within distance 2 two steps ahead");
        return t;
      }
      next = *found;
    }
    s.dq = handle_distance(wk, next);
    if (s.dq > 2) t.falsifications.push_back("step " + std::to_string(k) + ": two-step distance exceeds 2");
    t.steps.push_back(s);
    wk = next;
    k += 2;
    t.indices.push_back(k);
    t.waypoints.push_back(wk);
  }
  if (t.total() > n - start) t.falsifications.push_back("telescoped distance exceeds the path length");
  return t;
}

inline WaypointTrace theorem2_project_path(const std::vector<PantsVertex>& path, const HandleSystem& h = HandleSystem::standard()) {
  require_path(path);
  if (!h.in_subgraph(path.back())) throw std::invalid_argument("path must end at a decomposition containing q");
  ProjectionCache cache(h);
  const auto& pi0 = cache.of(path.front());
  if (pi0.empty()) throw std::logic_error("empty projection of a pants decomposition");
  return trace_from(path, 0, pi0.front(), cache);
}

// Product-metric geodesic: first handle coordinate, then the second.
inline std::vector<HandleVertex> handle_geodesic(const HandleVertex& a, const HandleVertex& b) {
  std::vector<HandleVertex> out;
  for (const Slope& s : farey_geodesic(a.s1, b.s1)) out.push_back({s, a.s2});
  auto second = farey_geodesic(a.s2, b.s2);
  for (std::size_t i = 1; i < second.size(); ++i) out.push_back({b.s1, second[i]});
  return out;
}

struct ShortenResult {
  std::vector<PantsVertex> path;
  int exit_index = 0;
  WaypointTrace trace;
};

// Keep the path up to the last vertex before it first leaves the subgraph,
// then follow product geodesics through the waypoints of the rest.
inline ShortenResult theorem1_shorten_path(const std::vector<PantsVertex>& path, const HandleSystem& h = HandleSystem::standard()) {
  require_path(path);
  const int n = static_cast<int>(path.size()) - 1;
  if (n < 2) throw std::invalid_argument("path too short to leave the subgraph");
  if (!h.in_subgraph(path.front()) || !h.in_subgraph(path.back())) throw std::invalid_argument("endpoints must contain q");
  int i = 1;
  while (i < n && h.in_subgraph(path[i])) ++i;
  if (i == n) throw std::invalid_argument("path never leaves the subgraph");
  ProjectionCache cache(h);
  const auto& pi = cache.of(path[i]);
  HandleVertex before = *h.handle_vertex_of(path[i - 1]);
  ShortenResult r;
  r.exit_index = i;
  if (pi.size() != 1 || pi.front() != before) {
    r.trace.falsifications.push_back("projection of the first exit is not the previous vertex");
    return r;
  }
  r.trace = trace_from(path, i, before, cache);
  if (!r.trace.ok()) return r;
  for (int k = 0; k < i; ++k) r.path.push_back(path[k]);
  for (std::size_t j = 0; j + 1 < r.trace.waypoints.size(); ++j) {
    auto seg = handle_geodesic(r.trace.waypoints[j], r.trace.waypoints[j + 1]);
    for (std::size_t m = 1; m < seg.size(); ++m) r.path.push_back(h.vertex(seg[m]));
  }
  if (r.path.back().key() != path.back().key()) r.trace.falsifications.push_back("shortened path does not end at the original endpoint");
  return r;
}

}  // namespace pants
