#pragma once

// The bundled closed genus-2 surface, presented as the hyperelliptic double
// cover of the sphere branched over six points P0..P5. Curves on the closed
// surface are stored by their images on the six-punctured sphere, in normal
// coordinates on a fixed 12-edge ideal triangulation. The branch points lie
// on a chain of arcs s0..s5 (s_i joins P_i and P_{i+1}, indices mod 6) and the
// half twists sigma_0..sigma_4 about s0..s4 lift to Dehn twists.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pants/triangulation.hpp"

namespace pants {

// Letter k > 0 is sigma_{k-1}, k < 0 its inverse. As a mapping class a word is
// the composition of its letters, so the rightmost letter acts first.
using BraidWord = std::vector<int>;

inline BraidWord inverse_word(const BraidWord& w) {
  BraidWord out(w.rbegin(), w.rend());
  for (int& l : out) l = -l;
  return out;
}

inline BraidWord concat(const BraidWord& a, const BraidWord& b) {
  BraidWord out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline BraidWord power_word(const BraidWord& w, i64 k) {
  BraidWord base = k >= 0 ? w : inverse_word(w);
  BraidWord out;
  for (i64 i = 0; i < iabs(k); ++i) out.insert(out.end(), base.begin(), base.end());
  return out;
}

using PunctureSet = std::uint32_t;  // bit i is P_i
constexpr int kPunctures = 6;
constexpr PunctureSet kAllPunctures = (1u << kPunctures) - 1;

enum class CurveKind { Peripheral, Nonseparating, Separating };

inline const char* kind_name(CurveKind k) {
  switch (k) {
    case CurveKind::Peripheral: return "peripheral";
    case CurveKind::Nonseparating: return "nonseparating";
    default: return "separating";
  }
}

struct ModelReport {
  bool ok = true;
  std::vector<std::string> failures;
  int vertices = 0, edges = 0, faces = 0;
  int euler = 0;        // of the quotient sphere
  int cover_euler = 0;  // of the branched double cover
  int cover_genus = 0;
};

// Checks a triangle list of signed edge labels (i and ~i are the two sides of
// edge i) describing the quotient sphere.
inline ModelReport validate_surface_model(const std::vector<std::array<int, 3>>& triangles) {
  ModelReport rep;
  auto fail = [&](std::string s) {
    rep.ok = false;
    rep.failures.push_back(std::move(s));
  };
  rep.faces = static_cast<int>(triangles.size());
  if (rep.faces == 0 || (rep.faces * 3) % 2 != 0) {
    fail("triangle sides cannot be paired into edges");
    return rep;
  }
  int zeta = rep.faces * 3 / 2;
  rep.edges = zeta;
  std::vector<int> pos(static_cast<std::size_t>(zeta), 0), neg(static_cast<std::size_t>(zeta), 0);
  for (const auto& t : triangles)
    for (int l : t) {
      int e = edge_index(l);
      if (e >= zeta) {
        fail("edge label " + std::to_string(l) + " out of range");
        return rep;
      }
      (l >= 0 ? pos : neg)[static_cast<std::size_t>(e)]++;
    }
  for (int e = 0; e < zeta; ++e) {
    if (pos[e] + neg[e] != 2) {
      fail("edge " + std::to_string(e) + " is not glued to exactly two triangle sides");
      return rep;
    }
    if (pos[e] != 1) fail("edge " + std::to_string(e) + " glued with matching orientations: not orientable");
  }
  if (!rep.ok) return rep;
  // Connectivity of the dual graph.
  std::vector<int> comp(triangles.size());
  std::iota(comp.begin(), comp.end(), 0);
  auto find = [&](int x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  std::vector<int> owner(static_cast<std::size_t>(2 * zeta), -1);
  for (std::size_t i = 0; i < triangles.size(); ++i)
    for (int l : triangles[i]) owner[static_cast<std::size_t>(l + zeta)] = static_cast<int>(i);
  for (int e = 0; e < zeta; ++e) comp[find(owner[e + zeta])] = find(owner[~e + zeta]);
  int roots = 0;
  for (std::size_t i = 0; i < triangles.size(); ++i) roots += find(static_cast<int>(i)) == static_cast<int>(i);
  if (roots != 1) {
    fail("surface is not connected (" + std::to_string(roots) + " components)");
    return rep;
  }
  Triangulation t(triangles);
  rep.vertices = t.num_vertices();
  rep.euler = rep.vertices - rep.edges + rep.faces;
  if (rep.euler != 2) fail("quotient is not a sphere (Euler characteristic " + std::to_string(rep.euler) + ")");
  if (rep.vertices != kPunctures) fail("quotient must have exactly 6 branch points");
  rep.cover_euler = 2 * rep.euler - rep.vertices;
  rep.cover_genus = (2 - rep.cover_euler) / 2;
  if (rep.cover_euler != -2) fail("branched cover does not have Euler characteristic -2");
  return rep;
}

class SurfaceModel {
 public:
  static const SurfaceModel& get() {
    static const SurfaceModel m;
    return m;
  }

  static std::vector<std::array<int, 3>> triangle_table() {
    return {{~11, 6, ~7}, {~10, 5, ~6}, {~9, 4, ~5}, {~8, ~0, ~4}, {~3, 2, 10}, {~2, 1, 9}, {~1, 0, 8}, {3, 11, 7}};
  }

  TriPtr tri;
  std::array<int, 6> arc_edge{8, 9, 10, 11, 7, 0};  // s_i
  std::array<int, 6> puncture_vertex{};              // P_i -> triangulation vertex
  std::array<Encoding, 5> sigma, sigma_inv;
  std::array<Weights, 6> chain;  // c_i = boundary of a neighbourhood of s_i
  Weights q;                     // boundary of the disc containing P0, P1, P2

  int zeta() const { return tri->zeta(); }

  Weights apply(const BraidWord& w, Weights x) const {
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      int l = *it;
      if (l == 0 || l > 5 || l < -5) throw std::invalid_argument("braid letter out of range");
      x = l > 0 ? sigma[l - 1](x) : sigma_inv[-l - 1](x);
    }
    return x;
  }

  // Rotation taking s_i to s_{i+1}.
  static BraidWord rotation() { return {1, 2, 3, 4, 5}; }

 private:
  SurfaceModel() {
    auto table = triangle_table();
    auto rep = validate_surface_model(table);
    if (!rep.ok) throw std::logic_error("bundled surface model is invalid: " + rep.failures.front());
    tri = std::make_shared<const Triangulation>(table);
    for (int i = 0; i < 6; ++i) {
      int a = arc_edge[(i + 5) % 6], b = arc_edge[i];
      int va[2] = {tri->vertex_id(a), tri->vertex_id(~a)}, vb[2] = {tri->vertex_id(b), tri->vertex_id(~b)};
      int common = -1;
      for (int x : va)
        for (int y : vb)
          if (x == y) common = x;
      if (common < 0) throw std::logic_error("arc chain is broken");
      puncture_vertex[i] = common;
    }
    for (int k = 0; k < 5; ++k) {
      sigma[k] = half_twist_about_edge(tri, arc_edge[k]);
      sigma_inv[k] = sigma[k].inverse();
    }
    for (int k = 0; k < 6; ++k) chain[k] = edge_curve(*tri, arc_edge[k]);
    q = {1, 1, 1, 0, 1, 1, 0, 0, 0, 0, 1, 0};
  }
};

// Branch points on either side of each component, read off from the parity of
// the weights: the two ends of an edge lie on the same side iff the edge
// meets the multicurve an even number of times. Returns one class label per
// puncture.
inline std::array<int, kPunctures> puncture_classes(const Weights& w) {
  const auto& m = SurfaceModel::get();
  const auto& t = *m.tri;
  std::vector<int> parent(static_cast<std::size_t>(t.num_vertices()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int e = 0; e < t.zeta(); ++e)
    if (w[static_cast<std::size_t>(e)] % 2 == 0) parent[find(t.vertex_id(e))] = find(t.vertex_id(~e));
  std::array<int, kPunctures> out{};
  for (int i = 0; i < kPunctures; ++i) out[i] = find(m.puncture_vertex[i]);
  return out;
}

// For a single curve: the side not containing P5.
inline PunctureSet curve_side(const Weights& w) {
  auto cls = puncture_classes(w);
  PunctureSet s = 0;
  for (int i = 0; i < kPunctures; ++i)
    if (cls[i] != cls[5]) s |= 1u << i;
  return s;
}

inline CurveKind curve_kind(const Weights& w) {
  int k = std::popcount(curve_side(w));
  int small = std::min(k, kPunctures - k);
  if (small <= 1) return CurveKind::Peripheral;
  return small == 2 ? CurveKind::Nonseparating : CurveKind::Separating;
}

// Number of components of the preimage of the curve in the closed surface.
inline int lift_count(CurveKind k) { return k == CurveKind::Nonseparating ? 2 : 1; }

// Intersection number on the six-punctured sphere.
inline i64 sphere_intersection(const Weights& a, const Weights& b) {
  return intersection(SurfaceModel::get().tri, a, b);
}

// Intersection number of the lifted curves on the closed surface.
inline i64 closed_intersection(const Weights& a, const Weights& b) {
  i64 i = sphere_intersection(a, b);
  int d = lift_count(curve_kind(a)) * lift_count(curve_kind(b));
  i64 num = mul(2, i);
  if (num % d != 0) throw std::logic_error("lifted intersection is not integral");
  return num / d;
}

inline std::string weights_str(const Weights& w) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
  os << "]";
  return os.str();
}

struct CurveComponent {
  Weights weights;
  CurveKind kind = CurveKind::Nonseparating;
  PunctureSet side = 0;
};

struct NormalMulticurve {
  Weights weights;
  std::vector<CurveComponent> components;  // sorted by weight vector
};

// Normal-coordinate conditions in every triangle.
inline std::optional<std::string> normality_violation(const Weights& w) {
  const auto& t = *SurfaceModel::get().tri;
  if (static_cast<int>(w.size()) != t.zeta())
    return "expected " + std::to_string(t.zeta()) + " weights, got " + std::to_string(w.size());
  for (i64 x : w)
    if (x < 0) return "negative weight";
  for (const auto& tr : t.triangles()) {
    i64 a = weight_of(w, tr[0]), b = weight_of(w, tr[1]), c = weight_of(w, tr[2]);
    if ((a + b + c) % 2 != 0) return "odd weight sum in a triangle";
    if (a > b + c || b > a + c || c > a + b) return "triangle inequality fails";
  }
  return std::nullopt;
}

inline NormalMulticurve normalize_multicurve(const Weights& w) {
  if (auto v = normality_violation(w)) throw std::invalid_argument("non-normal weights: " + *v);
  NormalMulticurve out;
  out.weights = w;
  if (is_zero(w)) return out;
  for (auto& [cw, mult] : components(SurfaceModel::get().tri, w)) {
    CurveKind k = curve_kind(cw);
    if (k == CurveKind::Peripheral) throw std::invalid_argument("trivial component (bounds a disc on the closed surface)");
    if (mult != 1) throw std::invalid_argument("component of multiplicity " + std::to_string(mult) + ": curves are not distinct");
    out.components.push_back({cw, k, curve_side(cw)});
  }
  std::sort(out.components.begin(), out.components.end(),
            [](const CurveComponent& a, const CurveComponent& b) { return a.weights < b.weights; });
  return out;
}

inline Weights sum_weights(const std::vector<Weights>& curves) {
  Weights out(static_cast<std::size_t>(SurfaceModel::get().zeta()), 0);
  for (const auto& c : curves)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = add(out[i], c[i]);
  return out;
}

inline NormalMulticurve multicurve_of(const std::vector<Weights>& curves) { return normalize_multicurve(sum_weights(curves)); }

struct Piece {
  int genus = 0;
  int boundaries = 0;
  int complexity = 0;
  PunctureSet punctures = 0;               // branch points in the quotient region
  std::vector<std::size_t> boundary_curves;  // component indices bounding the region
  int euler() const { return 2 - 2 * genus - boundaries; }
};

// Complementary pieces on the closed surface. Regions of the quotient are read
// off from the nested family of puncture sides; each lifts to one piece or two
// copies, and twice-punctured discs lift to collars between the two preimages
// of a nonseparating curve and are dropped.
inline std::vector<Piece> cut_along(const NormalMulticurve& c) {
  std::vector<Piece> out;
  const auto& comps = c.components;
  std::size_t n = comps.size();
  auto inside = [](PunctureSet a, PunctureSet b) { return (a & ~b) == 0 && a != b; };
  auto children_of = [&](std::optional<std::size_t> parent) {
    std::vector<std::size_t> kids;
    for (std::size_t j = 0; j < n; ++j) {
      if (parent && !inside(comps[j].side, comps[*parent].side)) continue;
      bool maximal = true;
      for (std::size_t k = 0; k < n && maximal; ++k) {
        if (k == j || (parent && k == *parent)) continue;
        if (parent && !inside(comps[k].side, comps[*parent].side)) continue;
        if (inside(comps[j].side, comps[k].side)) maximal = false;
      }
      if (maximal) kids.push_back(j);
    }
    return kids;
  };
  auto region = [&](std::optional<std::size_t> self) {
    PunctureSet pts = self ? comps[*self].side : kAllPunctures;
    auto kids = children_of(self);
    std::vector<std::size_t> bnd;
    std::vector<int> far;
    if (self) {
      bnd.push_back(*self);
      far.push_back(kPunctures - std::popcount(comps[*self].side));
    }
    for (auto k : kids) {
      pts &= ~comps[k].side;
      bnd.push_back(k);
      far.push_back(std::popcount(comps[k].side));
    }
    int k = std::popcount(pts), b = static_cast<int>(bnd.size());
    if (k == 2 && b == 1) return;  // collar
    int circles = 0;
    bool all_even = true;
    for (int f : far) {
      circles += f % 2 ? 1 : 2;
      all_even = all_even && f % 2 == 0;
    }
    Piece p;
    p.punctures = pts;
    p.boundary_curves = bnd;
    if (k == 0 && all_even) {
      p.genus = 0;
      p.boundaries = b;
      p.complexity = b - 3;
      out.push_back(p);
      out.push_back(p);
      return;
    }
    int chi = 4 - 2 * b - k;
    p.boundaries = circles;
    p.genus = (2 - chi - circles) / 2;
    p.complexity = 3 * p.genus + p.boundaries - 3;
    out.push_back(p);
  };
  for (std::size_t j = 0; j < n; ++j) region(j);
  region(std::nullopt);
  return out;
}

}  // namespace pants
