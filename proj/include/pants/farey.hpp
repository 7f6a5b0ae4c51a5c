#pragma once

// The Farey graph: slopes p/q (with 1/0) joined when |p s - q r| = 1.
//
// Distances use the nearest-integer "minus" continued fraction
//   r = a0 - 1/(a1 - 1/(a2 - ...))
// after moving one endpoint to 1/0. The first digit may be any integer, later
// digits have |a_i| >= 2, and the number of digits is the distance.

#include <algorithm>
#include <compare>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pants/arith.hpp"

namespace pants {

struct Slope {
  i64 p = 1;
  i64 q = 0;

  friend bool operator==(const Slope&, const Slope&) = default;
  friend auto operator<=>(const Slope&, const Slope&) = default;

  bool is_infinity() const { return q == 0; }
  i64 height() const { return std::max(iabs(p), q); }
  std::string str() const { return std::to_string(p) + "/" + std::to_string(q); }
};

inline std::ostream& operator<<(std::ostream& os, const Slope& s) { return os << s.str(); }

inline Slope canonical_slope(i64 p, i64 q) {
  if (p == 0 && q == 0) throw std::invalid_argument("slope 0/0 is undefined");
  i64 g = gcd(p, q);
  p /= g;
  q /= g;
  if (q < 0 || (q == 0 && p < 0)) {
    p = -p;
    q = -q;
  }
  return Slope{p, q};
}

// Parses "p/q" or a bare integer "p".
inline Slope parse_slope(const std::string& text) {
  auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      i64 p = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument("");
      return canonical_slope(p, 1);
    }
    std::string a = text.substr(0, slash), b = text.substr(slash + 1);
    i64 p = std::stoll(a, &used);
    if (used != a.size()) throw std::invalid_argument("");
    i64 q = std::stoll(b, &used);
    if (used != b.size()) throw std::invalid_argument("");
    return canonical_slope(p, q);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("cannot parse slope '" + text + "'");
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("slope out of range '" + text + "'");
  }
}

inline i64 slope_det(const Slope& a, const Slope& b) { return sub(mul(a.p, b.q), mul(a.q, b.p)); }

inline bool is_farey_edge(const Slope& a, const Slope& b) { return iabs(slope_det(a, b)) == 1; }

struct UnimodularMatrix {
  i64 a = 1, b = 0, c = 0, d = 1;

  friend bool operator==(const UnimodularMatrix&, const UnimodularMatrix&) = default;

  i64 det() const { return sub(mul(a, d), mul(b, c)); }
  i64 trace() const { return add(a, d); }

  UnimodularMatrix operator*(const UnimodularMatrix& o) const {
    return {add(mul(a, o.a), mul(b, o.c)), add(mul(a, o.b), mul(b, o.d)), add(mul(c, o.a), mul(d, o.c)),
            add(mul(c, o.b), mul(d, o.d))};
  }

  UnimodularMatrix inverse() const {
    i64 e = det();
    if (e == 1) return {d, -b, -c, a};
    return {-d, b, c, -a};
  }

  static UnimodularMatrix make(i64 a, i64 b, i64 c, i64 d) {
    UnimodularMatrix m{a, b, c, d};
    if (iabs(m.det()) != 1) throw std::invalid_argument("matrix is not unimodular");
    return m;
  }
};

inline std::ostream& operator<<(std::ostream& os, const UnimodularMatrix& m) {
  return os << "[[" << m.a << "," << m.b << "],[" << m.c << "," << m.d << "]]";
}

inline Slope mobius_apply(const UnimodularMatrix& m, const Slope& s) {
  return canonical_slope(add(mul(m.a, s.p), mul(m.b, s.q)), add(mul(m.c, s.p), mul(m.d, s.q)));
}

// A matrix of determinant 1 taking s to 1/0.
inline UnimodularMatrix normalizer(const Slope& s) {
  // Extended Euclid for p*y - q*x = 1.
  i64 old_r = s.p, r = s.q, old_u = 1, u = 0, old_v = 0, v = 1;
  while (r != 0) {
    i64 k = floor_div(old_r, r);
    i64 t = sub(old_r, mul(k, r));
    old_r = r;
    r = t;
    t = sub(old_u, mul(k, u));
    old_u = u;
    u = t;
    t = sub(old_v, mul(k, v));
    old_v = v;
    v = t;
  }
  // old_r = gcd = +-1 and old_u*p + old_v*q = old_r.
  i64 y = old_u * old_r, x = -old_v * old_r;
  return {y, -x, -s.q, s.p};
}

// Digits of the nearest-integer minus continued fraction of x/y, y > 0.
inline std::vector<i64> nearest_integer_digits(i64 x, i64 y) {
  std::vector<i64> digits;
  while (true) {
    if (y == 1) {
      digits.push_back(x);
      return digits;
    }
    i64 a = floor_div(add(mul(2, x), y), mul(2, y));
    digits.push_back(a);
    i64 nx = y, ny = sub(mul(a, y), x);
    if (ny < 0) {
      nx = -nx;
      ny = -ny;
    }
    x = nx;
    y = ny;
  }
}

inline int farey_distance(const Slope& a, const Slope& b) {
  if (a == b) return 0;
  Slope r = mobius_apply(normalizer(a), b);
  return static_cast<int>(nearest_integer_digits(r.p, r.q).size());
}

inline std::vector<Slope> farey_geodesic(const Slope& a, const Slope& b) {
  std::vector<Slope> path{a};
  Slope cur = a;
  int left = farey_distance(a, b);
  while (left > 0) {
    if (left == 1) {
      path.push_back(b);
      break;
    }
    UnimodularMatrix n = normalizer(cur);
    UnimodularMatrix back = n.inverse();
    Slope r = mobius_apply(n, b);
    i64 lo = floor_div(r.p, r.q);
    std::optional<Slope> best;
    for (i64 k : {lo, lo + 1}) {
      Slope cand = mobius_apply(back, Slope{k, 1});
      if (farey_distance(cand, b) != left - 1) continue;
      if (!best || std::pair(cand.q, cand.p) < std::pair(best->q, best->p)) best = cand;
    }
    if (!best) throw std::logic_error("farey_geodesic: no geodesic step found");
    cur = *best;
    path.push_back(cur);
    --left;
  }
  return path;
}

// Neighbours of a with height at most bound, sorted by (q, p).
inline std::vector<Slope> farey_neighbors(const Slope& a, i64 bound) {
  std::vector<Slope> out;
  if (bound < 1) return out;
  // All neighbours are r0 + k*a for one neighbour r0 (as vectors, with sign).
  UnimodularMatrix back = normalizer(a).inverse();
  Slope r0 = mobius_apply(back, Slope{0, 1});  // a neighbour of a
  // Vector of r0 chosen so that det(a, r0) = 1.
  i64 rp = r0.p, rq = r0.q;
  if (sub(mul(a.p, rq), mul(a.q, rp)) != 1) {
    rp = -rp;
    rq = -rq;
  }
  // |y| <= bound (or |x| <= bound when a = 1/0) confines k to a finite range.
  i64 lead = a.q != 0 ? a.q : a.p, off = a.q != 0 ? rq : rp;
  if (lead < 0) {
    lead = -lead;
    off = -off;
  }
  i64 klo = floor_div(sub(-bound, off), lead) - 1, khi = floor_div(sub(bound, off), lead) + 1;
  for (i64 k = klo; k <= khi; ++k) {
    i64 x = add(rp, mul(k, a.p)), y = add(rq, mul(k, a.q));
    if (std::max(iabs(x), iabs(y)) <= bound) out.push_back(canonical_slope(x, y));
  }
  std::sort(out.begin(), out.end(), [](const Slope& x, const Slope& y) { return std::pair(x.q, x.p) < std::pair(y.q, y.p); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline bool is_hyperbolic(const UnimodularMatrix& m) { return iabs(m.trace()) >= 3; }

// A bi-infinite Farey path invariant under a hyperbolic matrix. Vertex k of the
// axis is M^m(base_path[j]) where k = m * shift + j.
class PeriodicAxis {
 public:
  explicit PeriodicAxis(const UnimodularMatrix& m) : m_(m), inv_(m.inverse()) {
    if (iabs(m.det()) != 1) throw std::invalid_argument("matrix is not unimodular");
    if (!is_hyperbolic(m)) throw std::invalid_argument("matrix is not hyperbolic (|trace| < 3)");
    for (i64 h = 1; h <= 12 && base_.empty(); ++h) {
      for (const Slope& v : slopes_of_height(h)) {
        if (try_base(v)) break;
      }
    }
    if (base_.empty()) throw std::runtime_error("no locally geodesic invariant path found");
  }

  int shift() const { return static_cast<int>(base_.size()); }
  const UnimodularMatrix& matrix() const { return m_; }

  Slope at(i64 k) const {
    i64 L = shift();
    i64 rep = floor_div(k, L);
    i64 j = k - rep * L;
    Slope s = base_[static_cast<std::size_t>(j)];
    const UnimodularMatrix& g = rep >= 0 ? m_ : inv_;
    for (i64 i = 0; i < iabs(rep); ++i) s = mobius_apply(g, s);
    return s;
  }

  std::vector<Slope> segment(i64 lo, i64 hi) const {
    std::vector<Slope> out;
    for (i64 k = lo; k <= hi; ++k) out.push_back(at(k));
    return out;
  }

 private:
  static std::vector<Slope> slopes_of_height(i64 h) {
    std::vector<Slope> out;
    if (h == 1) out.push_back(Slope{1, 0});
    for (i64 q = 1; q <= h; ++q)
      for (i64 p = -h; p <= h; ++p) {
        if (std::max(iabs(p), q) != h || gcd(p, q) != 1) continue;
        out.push_back(Slope{p, q});
      }
    if (h == 1) out.push_back(Slope{0, 1});
    std::stable_sort(out.begin(), out.end(), [](const Slope& x, const Slope& y) {
      auto key = [](const Slope& s) { return std::pair(s.q == 0 ? -1 : s.q, iabs(s.p)); };
      return key(x) < key(y);
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  bool try_base(const Slope& v) {
    std::vector<Slope> path = farey_geodesic(v, mobius_apply(m_, v));
    path.pop_back();
    base_ = path;
    // Periodicity means checking every start in one period suffices.
    const int L = shift();
    for (int start = 0; start < L; ++start) {
      std::vector<Slope> seg = segment(start, start + 8);
      for (std::size_t i = 0; i < seg.size(); ++i)
        for (std::size_t j = i + 1; j < seg.size(); ++j)
          if (farey_distance(seg[i], seg[j]) != static_cast<int>(j - i)) {
            base_.clear();
            return false;
          }
    }
    return true;
  }

  UnimodularMatrix m_, inv_;
  std::vector<Slope> base_;
};

// The (2*window+1)-term segment of the invariant axis centred on its base vertex.
inline std::vector<Slope> periodic_axis(const UnimodularMatrix& m, int window) {
  if (window < 0) throw std::invalid_argument("window must be non-negative");
  PeriodicAxis axis(m);
  return axis.segment(-window, window);
}

}  // namespace pants
