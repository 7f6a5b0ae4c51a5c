#pragma once

// Complexity-one windows and their slope charts.
//
// A window is the complement of two curves of a pants decomposition, either a
// one-holed torus or a four-holed sphere on the closed surface. Each window is
// presented as the image under a braid word (its marking) of one of six
// standard windows. In the quotient a window is a sphere with four holes, and
// its curves correspond to slopes p/q with the seed curves at 0/1 and 1/0.
//
// Torus windows: the closed-surface slope is the quotient slope and
// intersections are |det|. Sphere windows: the quotient slope (p, q) has
// closed-surface slope reduce(p, 2q) and intersections are 2|det|; quotient
// slopes with p even are the nonseparating curves.

#include <algorithm>
#include <bit>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pants/farey.hpp"
#include "pants/surface.hpp"

namespace pants {

enum class WindowKind { Torus, Sphere };

inline const char* window_kind_name(WindowKind k) { return k == WindowKind::Torus ? "one-holed torus" : "four-holed sphere"; }

enum class PantsType : int { S = 0, N = 1 };

// Integer vector (p, q), not reduced to canonical slope sign.
struct Vec2 {
  i64 p = 0, q = 0;
  friend bool operator==(const Vec2&, const Vec2&) = default;
  friend auto operator<=>(const Vec2&, const Vec2&) = default;
  Vec2 operator+(const Vec2& o) const { return {add(p, o.p), add(q, o.q)}; }
  Vec2 operator-(const Vec2& o) const { return {sub(p, o.p), sub(q, o.q)}; }
  Vec2 scaled(i64 k) const { return {mul(k, p), mul(k, q)}; }
  Slope slope() const { return canonical_slope(p, q); }
};

inline i64 vdet(const Vec2& a, const Vec2& b) { return sub(mul(a.p, b.q), mul(a.q, b.p)); }
inline Vec2 apply_mat(const UnimodularMatrix& m, const Vec2& v) {
  return {add(mul(m.a, v.p), mul(m.b, v.q)), add(mul(m.c, v.p), mul(m.d, v.q))};
}
inline Vec2 vec_of(const Slope& s) { return {s.p, s.q}; }

inline Slope lift_slope(WindowKind k, const Vec2& quotient) {
  if (k == WindowKind::Torus) return quotient.slope();
  return canonical_slope(quotient.p, mul(2, quotient.q));
}

inline Vec2 quotient_vec(WindowKind k, const Slope& lifted) {
  if (k == WindowKind::Torus) return vec_of(lifted);
  if (lifted.q % 2 != 0) return {mul(2, lifted.p), lifted.q};
  return {lifted.p, lifted.q / 2};
}

inline i64 intersection_in_window(WindowKind k, const Slope& s, const Slope& t) {
  i64 d = iabs(slope_det(s, t));
  return k == WindowKind::Torus ? d : mul(2, d);
}

struct StdWindow {
  WindowKind kind = WindowKind::Torus;
  PantsType type = PantsType::S;
  int index = 0;              // which standard curve of the type is removed
  std::array<Weights, 2> seed;  // quotient slopes 0/1 and 1/0
  int removed_seed = 0;       // which seed is the removed curve
  BraidWord x, y;             // x fixes seed 0 as [[1,0],[-1,1]]; y fixes seed 1 as [[1,ys],[0,1]]
  i64 ys = 1;
  // Marking change for a move landing on the other seed: the new vertex is
  // marking * word * psi of type psi_type.
  BraidWord psi;
  PantsType psi_type = PantsType::S;
};

inline const std::array<Weights, 3>& std_curves(PantsType t) {
  static const std::array<std::array<Weights, 3>, 2> table = [] {
    const auto& m = SurfaceModel::get();
    return std::array<std::array<Weights, 3>, 2>{
        std::array<Weights, 3>{m.chain[0], m.q, m.chain[4]},
        std::array<Weights, 3>{m.chain[0], m.chain[2], m.chain[4]}};
  }();
  return table[static_cast<int>(t)];
}

inline const StdWindow& std_window(PantsType type, int index) {
  static const std::array<StdWindow, 6> table = [] {
    const auto& m = SurfaceModel::get();
    const BraidWord rot = SurfaceModel::rotation();
    const BraidWord rot2 = concat(rot, rot), rot2inv = inverse_word(rot2);
    const BraidWord tq = {1, 2, 1, 2, 1, 2}, tq1 = {2, 3, 2, 3, 2, 3}, tq2 = {3, 4, 3, 4, 3, 4};
    const Weights q1 = m.apply(rot2inv, m.q), q2 = m.apply(rot2, m.q);
    std::array<StdWindow, 6> w;
    // Type S = {c0, q, c4}.
    w[0] = {WindowKind::Torus, PantsType::S, 0, {m.chain[0], m.chain[1]}, 0, {1}, {2}, 1, {1, 2}, PantsType::S};
    w[1] = {WindowKind::Sphere, PantsType::S, 1, {m.chain[2], m.q}, 1, {3}, tq, 2, {}, PantsType::N};
    w[2] = {WindowKind::Torus, PantsType::S, 2, {m.chain[3], m.chain[4]}, 1, {4}, {5}, 1, {5, 4}, PantsType::S};
    // Type N = {c0, c2, c4}.
    w[3] = {WindowKind::Sphere, PantsType::N, 0, {m.chain[0], q1}, 0, {1}, tq1, 2, rot2inv, PantsType::S};
    w[4] = {WindowKind::Sphere, PantsType::N, 1, {m.chain[2], m.q}, 0, {3}, tq, 2, {}, PantsType::S};
    w[5] = {WindowKind::Sphere, PantsType::N, 2, {m.chain[4], q2}, 0, {5}, tq2, 2, rot2, PantsType::S};
    return w;
  }();
  return table[static_cast<int>(type) * 3 + index];
}

struct Realization {
  BraidWord word;  // curve = word(seed)
  int seed = 0;
};

// Writes the quotient slope as an image of a seed under the window generators.
inline Realization realize(const StdWindow& w, Vec2 v) {
  if (v.p == 0 && v.q == 0) throw std::invalid_argument("zero vector is not a slope");
  if (gcd(v.p, v.q) != 1) throw std::invalid_argument("slope vector is not primitive");
  std::vector<std::pair<bool, i64>> steps;  // (is_y, exponent) applied in order
  auto nearest = [](i64 a, i64 b) {         // integer nearest to a / b, b != 0
    return floor_div(add(mul(2, a), b < 0 ? -b : b), mul(2, b < 0 ? -b : b)) * (b < 0 ? -1 : 1);
  };
  while (v.p != 0 && v.q != 0) {
    if (iabs(v.p) > iabs(v.q)) {
      // y^k: p -> p + ys k q
      i64 k = -nearest(v.p, mul(w.ys, v.q));
      if (k == 0) throw std::logic_error("realize: no progress");
      v.p = add(v.p, mul(mul(w.ys, k), v.q));
      steps.emplace_back(true, k);
    } else {
      // x^k: q -> q - k p
      i64 k = nearest(v.q, v.p);
      if (k == 0) throw std::logic_error("realize: no progress");
      v.q = sub(v.q, mul(k, v.p));
      steps.emplace_back(false, k);
    }
  }
  Realization r;
  r.seed = v.p == 0 ? 0 : 1;
  for (const auto& [is_y, k] : steps) {
    BraidWord part = power_word(is_y ? w.y : w.x, -k);
    r.word.insert(r.word.end(), part.begin(), part.end());
  }
  return r;
}

inline Weights std_curve_at(const StdWindow& w, const Vec2& v) {
  Realization r = realize(w, v);
  return SurfaceModel::get().apply(r.word, w.seed[r.seed]);
}

// Answers many intersection queries against one fixed curve.
class IntersectionProbe {
 public:
  explicit IntersectionProbe(const Weights& curve)
      : curve_(curve), kind_(curve_kind(curve)), shortened_(shorten(SurfaceModel::get().tri, curve)) {}
  i64 sphere(const Weights& other) const {
    return intersection_short(*shortened_.conjugator.target(), shortened_.short_weights, shortened_.conjugator(other));
  }
  i64 closed(const Weights& other) const {
    i64 num = mul(2, sphere(other));
    int d = lift_count(kind_) * lift_count(curve_kind(other));
    if (num % d != 0) throw std::logic_error("lifted intersection is not integral");
    return num / d;
  }
  const Weights& curve() const { return curve_; }
  CurveKind kind() const { return kind_; }

 private:
  Weights curve_;
  CurveKind kind_;
  Shortened shortened_;
};

inline i64 total_weight(const Weights& w) {
  i64 s = 0;
  for (i64 x : w) s = add(s, x);
  return s;
}

// A window with a chart: chart-quotient coordinates t map to standard
// coordinates chart * t, and the curve is marking(std_curve_at(...)).
struct Window {
  const StdWindow* std = nullptr;
  BraidWord marking;
  UnimodularMatrix chart;  // identity by default
  std::vector<Weights> boundary;
  std::optional<PunctureSet> region;  // for fixed windows with one boundary curve

  WindowKind kind() const { return std->kind; }

  Weights curve_at_vec(const Vec2& chart_quotient) const {
    return SurfaceModel::get().apply(marking, std_curve_at(*std, apply_mat(chart, chart_quotient)));
  }
  Weights curve(const Slope& s) const { return curve_at_vec(quotient_vec(kind(), s)); }

  bool contains(const Weights& c) const {
    for (const auto& b : boundary)
      if (b == c || sphere_intersection(c, b) != 0) return false;
    if (region) {
      PunctureSet side = curve_side(c);
      PunctureSet small = std::popcount(side) <= 3 ? side : (kAllPunctures & ~side);
      if (curve_kind(c) != CurveKind::Nonseparating || (small & ~*region) != 0) return false;
    }
    return true;
  }

  // Chart slope of a curve in the window, read from intersections with the
  // curves at 0/1, 1/0 and 1/1, then confirmed by rebuilding the curve.
  Slope slope_of(const Weights& c) const {
    if (!contains(c)) throw std::invalid_argument("curve is not contained in the window");
    IntersectionProbe probe(c);
    i64 scale = kind() == WindowKind::Torus ? 1 : 2;
    i64 a = probe.closed(curve(Slope{0, 1})), b = probe.closed(curve(Slope{1, 0})), d = probe.closed(curve(Slope{1, 1}));
    if (a % scale || b % scale || d % scale) throw std::logic_error("window intersection has wrong parity");
    i64 p = a / scale, q = b / scale, pq = d / scale;
    if (iabs(p - q) != pq) p = -p;
    if (iabs(p - q) != pq) throw std::logic_error("window intersections are not those of a slope");
    Slope s = canonical_slope(p, q);
    if (curve(s) != c) throw std::logic_error("window slope does not rebuild the curve");
    return s;
  }
};

// Lexicographic-least canonical chart of a window: the chart basis is a
// shortest curve (for sphere windows a shortest nonseparating curve) and a
// shortest curve adjacent to it, length being the total edge weight; ties are
// broken by weight vectors. The result does not depend on the marking.
inline UnimodularMatrix canonical_chart(const StdWindow& sw, const BraidWord& marking) {
  const auto& model = SurfaceModel::get();
  std::map<Vec2, Weights> cache;
  auto norm_key = [](Vec2 v) {
    if (v.q < 0 || (v.q == 0 && v.p < 0)) v = {-v.p, -v.q};
    return v;
  };
  auto curve = [&](const Vec2& v) -> const Weights& {
    Vec2 k = norm_key(v);
    auto it = cache.find(k);
    if (it == cache.end()) it = cache.emplace(k, model.apply(marking, std_curve_at(sw, k))).first;
    return it->second;
  };
  auto f = [&](const Vec2& v) { return total_weight(curve(v)); };
  auto better = [&](const Vec2& a, const Vec2& b) {  // a strictly preferred to b
    i64 fa = f(a), fb = f(b);
    if (fa != fb) return fa < fb;
    return curve(a) < curve(b);
  };
  // Minimise f along w + k u over integers k (f is convex in k); returns the
  // preferred minimiser.
  auto line_min = [&](const Vec2& u, const Vec2& w) {
    i64 k = 0;
    auto val = [&](i64 j) { return f(w + u.scaled(j)); };
    i64 dir = val(1) < val(0) ? 1 : (val(-1) < val(0) ? -1 : 0);
    if (dir != 0) {
      i64 step = 1;
      while (val(k + dir * step * 2) < val(k + dir * step)) step *= 2;
      i64 lo = k, hi = k + dir * step * 2;
      if (lo > hi) std::swap(lo, hi);
      while (hi - lo > 2) {
        i64 m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
        if (val(m1) <= val(m2)) hi = m2;
        else lo = m1;
      }
      k = lo;
      for (i64 j = lo; j <= hi; ++j)
        if (val(j) < val(k)) k = j;
    }
    i64 best = val(k);
    i64 lo = k, hi = k;
    while (val(lo - 1) == best) --lo;
    while (val(hi + 1) == best) ++hi;
    Vec2 choice = w + u.scaled(lo);
    for (i64 j = lo + 1; j <= hi; ++j)
      if (better(w + u.scaled(j), choice)) choice = w + u.scaled(j);
    return choice;
  };
  // Gauss reduction for the norm f.
  Vec2 a{0, 1}, b{1, 0};
  for (int guard = 0; guard < 200; ++guard) {
    if (f(b) < f(a)) std::swap(a, b);
    Vec2 nb = line_min(a, b);
    if (f(nb) >= f(b)) break;
    b = nb;
  }
  // Candidates around the reduced basis.
  std::vector<Vec2> cands;
  for (i64 i = -2; i <= 2; ++i)
    for (i64 j = 0; j <= 2; ++j) {
      if (j == 0 && i <= 0) continue;
      if (gcd(i, j) != 1) continue;
      cands.push_back(a.scaled(i) + b.scaled(j));
    }
  std::optional<Vec2> u;
  for (const auto& c : cands) {
    if (sw.kind == WindowKind::Sphere && c.p % 2 != 0) continue;
    if (!u || better(c, *u)) u = c;
  }
  if (!u) throw std::logic_error("canonical chart: no candidate first vector");
  // A vector w0 with det(u, w0) = 1, then the best w0 + k u.
  Vec2 w0;
  {
    UnimodularMatrix back = normalizer(Slope{u->p, u->q}).inverse();  // columns: u-ish
    w0 = {back.b, back.d};
    if (vdet(*u, w0) == -1) w0 = {-w0.p, -w0.q};
    if (vdet(*u, w0) != 1) {
      w0 = {back.a, back.c};
      if (vdet(*u, w0) == -1) w0 = {-w0.p, -w0.q};
    }
    if (vdet(*u, w0) != 1) throw std::logic_error("canonical chart: no complement vector");
  }
  Vec2 w = line_min(*u, w0);
  if (vdet(*u, w) < 0) w = {-w.p, -w.q};
  // Chart 0/1 -> u and 1/0 -> w; orientation follows the standard chart.
  UnimodularMatrix m{w.p, u->p, w.q, u->q};
  if (m.det() != -1 && m.det() != 1) throw std::logic_error("canonical chart is not unimodular");
  if (m.det() == -1) m = {-w.p, u->p, -w.q, u->q};
  return m;
}

// Closed-surface pieces of the handle windows: footprints of curves that cross
// a one-holed torus window are waves, each disjoint from exactly one window
// curve. The intersection of a crossing curve with the window curve of slope t
// is sum_j n_j |det(t, t_j)| over at most three pairwise adjacent projection
// slopes t_j; they are recovered by reducing that function.
struct WaveDescriptor {
  int window = 0;       // 1 or 2
  Slope projection;     // the window curve disjoint from the wave
  i64 multiplicity = 1; // parallel copies among the footprints
  i64 meets_a = 0;      // intersection with the chart curve at 0/1
  i64 meets_b = 0;      // intersection with the chart curve at 1/0
  friend bool operator==(const WaveDescriptor&, const WaveDescriptor&) = default;
  friend auto operator<=>(const WaveDescriptor& x, const WaveDescriptor& y) {
    return std::tuple(x.window, x.projection.q, x.projection.p, x.multiplicity) <=>
           std::tuple(y.window, y.projection.q, y.projection.p, y.multiplicity);
  }
};

struct FootprintSet {
  bool inside = false;          // the curve lies in the window
  std::optional<Slope> slope;   // its slope when inside
  std::vector<WaveDescriptor> waves;
  i64 wave_count() const {
    i64 n = 0;
    for (const auto& w : waves) n += w.multiplicity;
    return n;
  }
  bool empty() const { return !inside && waves.empty(); }
};

inline FootprintSet footprints_of_curve(const Weights& c, const Window& win, int window_id) {
  if (win.kind() != WindowKind::Torus || win.boundary.size() != 1)
    throw std::invalid_argument("footprints are computed for one-holed torus handle windows");
  FootprintSet out;
  IntersectionProbe probe(c);
  i64 across = probe.closed(win.boundary[0]);
  if (across == 0) {
    if (win.contains(c)) {
      out.inside = true;
      out.slope = win.slope_of(c);
    }
    return out;
  }
  std::map<Vec2, i64> cache;
  auto g = [&](Vec2 v) {
    if (v.q < 0 || (v.q == 0 && v.p < 0)) v = {-v.p, -v.q};
    auto it = cache.find(v);
    if (it != cache.end()) return it->second;
    i64 val = probe.closed(win.curve(v.slope()));
    cache.emplace(v, val);
    return val;
  };
  // Reduce g.
  Vec2 a{0, 1}, b{1, 0};
  for (int guard = 0; guard < 200; ++guard) {
    if (g(b) < g(a)) std::swap(a, b);
    if (g(a) == 0) break;
    i64 best = g(b);
    Vec2 nb = b;
    for (i64 s : {1, -1}) {
      Vec2 cur = b;
      while (true) {
        Vec2 nx = cur + a.scaled(s);
        if (g(nx) >= g(cur)) break;
        cur = nx;
      }
      if (g(cur) < best) {
        best = g(cur);
        nb = cur;
      }
    }
    if (nb == b) break;
    b = nb;
  }
  std::array<Vec2, 3> tri;
  std::array<i64, 3> n{};
  if (g(a) == 0) {
    tri = {a, b, a + b};
    n = {g(b), 0, 0};
  } else {
    Vec2 c3 = g(a + b) <= g(a - b) ? a + b : a - b;
    tri = {a, b, c3};
    i64 ga = g(a), gb = g(b), gc = g(c3);
    n = {gb + gc - ga, ga + gc - gb, ga + gb - gc};
    for (auto& x : n) {
      if (x < 0 || x % 2) throw std::logic_error("footprint reconstruction failed");
      x /= 2;
    }
  }
  auto model = [&](const Vec2& t) {
    i64 s = 0;
    for (int j = 0; j < 3; ++j) s = add(s, mul(n[j], iabs(vdet(t, tri[j]))));
    return s;
  };
  for (const Vec2& t : {a, b, tri[2], a - b, a + b, a.scaled(2) + b, a + b.scaled(2), a.scaled(2) - b, a - b.scaled(2),
                        a.scaled(3) + b.scaled(2)})
    if (model(t) != g(t)) throw std::logic_error("footprint reconstruction does not match intersections");
  i64 total = n[0] + n[1] + n[2];
  if (mul(2, total) != across) throw std::logic_error("wave count disagrees with boundary intersection");
  for (int j = 0; j < 3; ++j) {
    if (n[j] == 0) continue;
    Slope s = tri[j].slope();
    out.waves.push_back({window_id, s, n[j], iabs(s.p), s.q});
  }
  std::sort(out.waves.begin(), out.waves.end());
  return out;
}

}  // namespace pants
