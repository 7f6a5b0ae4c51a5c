#pragma once

// Ideal triangulations of punctured surfaces and integral laminations in
// normal coordinates, with edge flips, isometries and the shortening
// procedure that puts a lamination into a position where its components are
// read off edge by edge. The flip formula and the shortening / half-twist
// constructions follow the algorithms of Mark Bell's curver package.
//
// Edge labels: edge i has orientations i and ~i = -i - 1. A negative weight
// -k on an edge means k arcs parallel to that edge.

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "pants/arith.hpp"

namespace pants {

inline int edge_index(int label) { return label >= 0 ? label : ~label; }

using Weights = std::vector<i64>;

class Triangulation {
 public:
  explicit Triangulation(std::vector<std::array<int, 3>> triangles) {
    zeta_ = static_cast<int>(triangles.size()) * 3 / 2;
    for (auto& t : triangles) {
      int best = 0;
      for (int i = 1; i < 3; ++i)
        if (t[i] < t[best]) best = i;
      std::rotate(t.begin(), t.begin() + best, t.end());
    }
    std::sort(triangles.begin(), triangles.end());
    triangles_ = std::move(triangles);
    std::vector<int> seen(static_cast<std::size_t>(2 * zeta_), 0);
    corner_.assign(static_cast<std::size_t>(2 * zeta_), {0, 0, 0});
    triangle_of_.assign(static_cast<std::size_t>(2 * zeta_), -1);
    for (std::size_t ti = 0; ti < triangles_.size(); ++ti) {
      const auto& t = triangles_[ti];
      for (int i = 0; i < 3; ++i) {
        int l = t[i];
        if (l < -zeta_ || l >= zeta_) throw std::invalid_argument("edge label out of range");
        if (seen[slot(l)]++) throw std::invalid_argument("edge label used twice");
        corner_[slot(l)] = {t[i], t[(i + 1) % 3], t[(i + 2) % 3]};
        triangle_of_[slot(l)] = static_cast<int>(ti);
      }
    }
    for (int l = -zeta_; l < zeta_; ++l)
      if (!seen[slot(l)]) throw std::invalid_argument("missing edge label");
    // Vertices: cycles of outgoing labels, anticlockwise.
    std::set<int> unused;
    for (int l = -zeta_; l < zeta_; ++l) unused.insert(l);
    vertex_of_.assign(static_cast<std::size_t>(2 * zeta_), -1);
    while (!unused.empty()) {
      std::vector<int> cycle{*unused.begin()};
      unused.erase(unused.begin());
      while (true) {
        int next = ~corner(cycle.back())[2];
        auto it = unused.find(next);
        if (it == unused.end()) break;
        cycle.push_back(next);
        unused.erase(it);
      }
      vertices_.push_back(cycle);
    }
    std::sort(vertices_.begin(), vertices_.end());
    for (std::size_t v = 0; v < vertices_.size(); ++v)
      for (int l : vertices_[v]) vertex_of_[slot(l)] = static_cast<int>(v);
  }

  int zeta() const { return zeta_; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  const std::array<int, 3>& corner(int label) const { return corner_[slot(label)]; }
  int triangle_of(int label) const { return triangle_of_[slot(label)]; }
  const std::vector<std::vector<int>>& vertices() const { return vertices_; }
  int vertex_id(int label) const { return vertex_of_[slot(label)]; }
  const std::vector<int>& vertex(int label) const { return vertices_[vertex_of_[slot(label)]]; }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }

  std::vector<int> labels() const {
    std::vector<int> out;
    for (int l = -zeta_; l < zeta_; ++l) out.push_back(l);
    return out;
  }

  bool is_flippable(int e) const { return triangle_of(e) != triangle_of(~e); }

  // Edges a, b, c, d around e and e itself (a, b in e's triangle; c, d across).
  std::array<int, 5> square(int e) const {
    const auto& A = corner(e);
    const auto& B = corner(~e);
    return {A[1], A[2], B[1], B[2], e};
  }

  Triangulation flip(int e) const {
    if (!is_flippable(e)) throw std::invalid_argument("edge is not flippable");
    auto [a, b, c, d, ee] = square(e);
    std::vector<std::array<int, 3>> out;
    int ta = triangle_of(e), tb = triangle_of(~e);
    for (std::size_t i = 0; i < triangles_.size(); ++i)
      if (static_cast<int>(i) != ta && static_cast<int>(i) != tb) out.push_back(triangles_[i]);
    if (ee >= 0) {
      out.push_back({ee, d, a});
      out.push_back({~ee, b, c});
    } else {
      out.push_back({~ee, d, a});
      out.push_back({ee, b, c});
    }
    return Triangulation(std::move(out));
  }

  friend bool operator==(const Triangulation& x, const Triangulation& y) { return x.triangles_ == y.triangles_; }

  // The unique isometry to other extending the given partial label map, as a
  // full label map (indexed by label + zeta), or nullopt if none exists.
  std::optional<std::vector<int>> find_isometry(const Triangulation& other, const std::map<int, int>& seed) const {
    if (other.zeta_ != zeta_) return std::nullopt;
    std::map<int, int> m = seed;
    std::vector<std::pair<int, int>> stack(m.begin(), m.end());
    while (!stack.empty()) {
      auto [f, t] = stack.back();
      stack.pop_back();
      std::pair<int, int> nb[2] = {{~f, ~t}, {corner(f)[1], other.corner(t)[1]}};
      for (auto [nf, nt] : nb) {
        auto it = m.find(nf);
        if (it != m.end()) {
          if (it->second != nt) return std::nullopt;
        } else {
          if (vertex(nf).size() != other.vertex(nt).size()) return std::nullopt;
          m[nf] = nt;
          stack.emplace_back(nf, nt);
        }
      }
    }
    if (static_cast<int>(m.size()) != 2 * zeta_) return std::nullopt;  // single component surfaces only
    std::vector<int> out(static_cast<std::size_t>(2 * zeta_));
    std::set<int> image;
    for (auto [f, t] : m) {
      out[slot(f)] = t;
      image.insert(t);
    }
    if (static_cast<int>(image.size()) != 2 * zeta_) return std::nullopt;
    // Corners must match, otherwise the map is not simplicial.
    for (int l = -zeta_; l < zeta_; ++l) {
      const auto& c = corner(l);
      const auto& oc = other.corner(out[slot(l)]);
      for (int i = 0; i < 3; ++i)
        if (out[slot(c[i])] != oc[i]) return std::nullopt;
    }
    return out;
  }

  std::size_t slot(int label) const { return static_cast<std::size_t>(label + zeta_); }

 private:
  int zeta_ = 0;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<std::array<int, 3>> corner_;
  std::vector<int> triangle_of_;
  std::vector<int> vertex_of_;
  std::vector<std::vector<int>> vertices_;
};

using TriPtr = std::shared_ptr<const Triangulation>;

// Sublist of a cycle from x (inclusive) to y (exclusive); y absent means the whole rotation.
inline std::vector<int> cyclic_slice(const std::vector<int>& cycle, int x, std::optional<int> y = std::nullopt) {
  auto it = std::find(cycle.begin(), cycle.end(), x);
  std::vector<int> rot(it, cycle.end());
  rot.insert(rot.end(), cycle.begin(), it);
  if (y) {
    auto jt = std::find(rot.begin(), rot.end(), *y);
    rot.erase(jt, rot.end());
  }
  return rot;
}

inline i64 weight_of(const Weights& w, int label) { return w[static_cast<std::size_t>(edge_index(label))]; }

// Number of normal arcs dual to the corner opposite the given edge (doubled if requested).
inline i64 dual_weight(const Triangulation& t, const Weights& w, int edge, bool doubled = false) {
  const auto& c = t.corner(edge);
  i64 a = weight_of(w, c[0]), b = weight_of(w, c[1]), cc = weight_of(w, c[2]);
  i64 af = std::max<i64>(a, 0), bf = std::max<i64>(b, 0), cf = std::max<i64>(cc, 0);
  i64 corr = std::min({add(af, bf) - cf, add(bf, cf) - af, add(cf, af) - bf, i64{0}});
  i64 dual = add(bf, cf) - af + corr;
  return doubled ? dual : half(dual);
}

inline i64 left_weight(const Triangulation& t, const Weights& w, int edge, bool doubled = false) {
  return dual_weight(t, w, t.corner(edge)[1], doubled);
}
inline i64 right_weight(const Triangulation& t, const Weights& w, int edge, bool doubled = false) {
  return dual_weight(t, w, t.corner(edge)[2], doubled);
}

struct Move {
  enum class Kind { Flip, Isometry };
  Kind kind = Kind::Flip;
  int edge = 0;                 // flip
  std::array<int, 5> sq{};      // flip: square in the source triangulation
  std::vector<int> index_map;   // isometry: new[index_map[i]] = old[i]
  std::vector<int> label_map;   // isometry: full label map (label + zeta)
  TriPtr source, target;

  void apply(Weights& w) const {
    if (kind == Kind::Isometry) {
      Weights out(w.size());
      for (std::size_t i = 0; i < w.size(); ++i) out[static_cast<std::size_t>(index_map[i])] = w[i];
      w.swap(out);
      return;
    }
    const i64 ei = weight_of(w, sq[4]);
    i64 a = std::max<i64>(weight_of(w, sq[0]), 0), b = std::max<i64>(weight_of(w, sq[1]), 0);
    i64 c = std::max<i64>(weight_of(w, sq[2]), 0), d = std::max<i64>(weight_of(w, sq[3]), 0);
    i64 r;
    if (ei >= add(a, b) && a >= d && b >= c) r = add(a, b) - ei;
    else if (ei >= add(c, d) && d >= a && c >= b) r = add(c, d) - ei;
    else if (ei <= 0 && a >= b && d >= c) r = add(a, d) - ei;
    else if (ei <= 0 && b >= a && c >= d) r = add(b, c) - ei;
    else if (ei >= 0 && a >= add(b, ei) && d >= add(c, ei)) r = add(a, d) - mul(2, ei);
    else if (ei >= 0 && b >= add(a, ei) && c >= add(d, ei)) r = add(b, c) - mul(2, ei);
    else if (add(a, b) >= ei && add(b, ei) >= add(mul(2, c), a) && add(a, ei) >= add(mul(2, d), b)) r = half(add(a, b) - ei);
    else if (add(c, d) >= ei && add(d, ei) >= add(mul(2, a), c) && add(c, ei) >= add(mul(2, b), d)) r = half(add(c, d) - ei);
    else r = std::max(add(a, c), add(b, d)) - ei;
    w[static_cast<std::size_t>(edge_index(sq[4]))] = r;
  }

  Move inverse() const {
    Move m;
    m.kind = kind;
    m.source = target;
    m.target = source;
    if (kind == Kind::Flip) {
      m.edge = ~edge;
      m.sq = target->square(~edge);
    } else {
      int z = source->zeta();
      m.label_map.assign(label_map.size(), 0);
      for (int l = -z; l < z; ++l) m.label_map[target->slot(label_map[source->slot(l)])] = l;
      m.index_map.assign(index_map.size(), 0);
      for (std::size_t i = 0; i < index_map.size(); ++i) m.index_map[static_cast<std::size_t>(index_map[i])] = static_cast<int>(i);
    }
    return m;
  }
};

inline Move make_flip(const TriPtr& t, int edge) {
  Move m;
  m.kind = Move::Kind::Flip;
  m.edge = edge;
  m.sq = t->square(edge);
  m.source = t;
  m.target = std::make_shared<const Triangulation>(t->flip(edge));
  return m;
}

inline Move make_isometry(const TriPtr& src, const TriPtr& dst, const std::vector<int>& label_map) {
  Move m;
  m.kind = Move::Kind::Isometry;
  m.source = src;
  m.target = dst;
  m.label_map = label_map;
  int z = src->zeta();
  m.index_map.assign(static_cast<std::size_t>(z), 0);
  for (int i = 0; i < z; ++i) m.index_map[static_cast<std::size_t>(i)] = edge_index(label_map[src->slot(i)]);
  return m;
}

// A sequence of moves, applied front to back.
class Encoding {
 public:
  Encoding() = default;
  explicit Encoding(TriPtr t) : source_(t), target_(t) {}

  const TriPtr& source() const { return source_; }
  const TriPtr& target() const { return target_; }
  const std::vector<Move>& moves() const { return moves_; }
  std::size_t size() const { return moves_.size(); }

  void push(const Move& m) {
    if (!source_) source_ = m.source;
    moves_.push_back(m);
    target_ = m.target;
  }

  // this followed by other.
  Encoding then(const Encoding& other) const {
    Encoding out = *this;
    for (const auto& m : other.moves_) out.push(m);
    if (!out.source_) out.source_ = other.source_;
    if (other.target_) out.target_ = other.target_;
    return out;
  }

  Encoding inverse() const {
    Encoding out(target_);
    for (auto it = moves_.rbegin(); it != moves_.rend(); ++it) out.push(it->inverse());
    out.target_ = source_;
    return out;
  }

  Weights operator()(Weights w) const {
    for (const auto& m : moves_) m.apply(w);
    return w;
  }

 private:
  TriPtr source_, target_;
  std::vector<Move> moves_;
};

inline Weights edge_arc(const Triangulation& t, int edge) {
  Weights w(static_cast<std::size_t>(t.zeta()), 0);
  w[static_cast<std::size_t>(edge_index(edge))] = -1;
  return w;
}

inline Weights counts_of(const Triangulation& t, const std::vector<int>& seq) {
  Weights w(static_cast<std::size_t>(t.zeta()), 0);
  for (int l : seq) ++w[static_cast<std::size_t>(edge_index(l))];
  return w;
}

// Boundary of a neighbourhood of the edge; for a loop edge, the side to its right.
inline Weights edge_curve(const Triangulation& t, int edge) {
  std::vector<int> edges;
  if (t.vertex_id(edge) == t.vertex_id(~edge)) {
    auto s = cyclic_slice(t.vertex(edge), edge, ~edge);
    edges.assign(s.begin() + 1, s.end());
  } else if (t.vertex(edge).size() == 1) {
    auto s = cyclic_slice(t.vertex(~edge), ~edge);
    edges.assign(s.begin() + 2, s.end() - 1);
  } else if (t.vertex(~edge).size() == 1) {
    auto s = cyclic_slice(t.vertex(edge), edge);
    edges.assign(s.begin() + 2, s.end() - 1);
  } else {
    for (const auto* v : {&t.vertex(edge), &t.vertex(~edge)})
      for (int l : *v)
        if (l != edge && l != ~edge) edges.push_back(l);
  }
  return counts_of(t, edges);
}

inline i64 maximin0(const std::vector<i64>& xs) {
  if (xs.empty()) return 0;
  return std::max<i64>(0, *std::min_element(xs.begin(), xs.end()));
}

struct ParallelComponent {
  Weights weights;
  i64 multiplicity = 0;
  int edge = 0;
  bool is_arc = false;
};

struct PeripheralComponent {
  Weights weights;
  i64 multiplicity = 0;
  int vertex = 0;
};

inline std::vector<PeripheralComponent> peripheral_components(const Triangulation& t, const Weights& w) {
  std::vector<PeripheralComponent> out;
  for (int v = 0; v < t.num_vertices(); ++v) {
    std::vector<i64> lw;
    for (int l : t.vertices()[v]) lw.push_back(left_weight(t, w, l));
    i64 m = maximin0(lw);
    if (m > 0) out.push_back({counts_of(t, t.vertices()[v]), m, v});
  }
  return out;
}

inline Weights peripheral_part(const Triangulation& t, const Weights& w) {
  Weights out(w.size(), 0);
  for (const auto& c : peripheral_components(t, w))
    for (std::size_t i = 0; i < w.size(); ++i) out[i] = add(out[i], mul(c.weights[i], c.multiplicity));
  return out;
}

inline std::vector<ParallelComponent> parallel_components(const Triangulation& t, const Weights& w) {
  std::vector<ParallelComponent> out;
  auto put = [&](ParallelComponent c) {
    for (auto& o : out)
      if (o.weights == c.weights) {
        o.multiplicity = c.multiplicity;
        o.edge = c.edge;
        return;
      }
    out.push_back(std::move(c));
  };
  for (int edge = -t.zeta(); edge < t.zeta(); ++edge) {
    if (edge >= 0) {
      i64 m = -weight_of(w, edge);
      if (m > 0) put({edge_arc(t, edge), m, edge, true});
    }
    if (t.vertex_id(edge) == t.vertex_id(~edge)) {
      auto v_edges = cyclic_slice(t.vertex(edge), edge, ~edge);
      if (v_edges.size() > 2) {
        std::vector<i64> lw;
        for (int x : v_edges) lw.push_back(left_weight(t, w, x));
        i64 around = maximin0(lw);
        std::vector<i64> tw;
        for (std::size_t i = 1; i + 1 < v_edges.size(); ++i) tw.push_back(lw[i] - around);
        i64 twisting = maximin0(tw);
        if (lw.front() == around && lw.back() == around && twisting > 0) put({edge_curve(t, edge), twisting, edge, false});
      }
    }
  }
  return out;
}

inline bool is_zero(const Weights& w) {
  return std::all_of(w.begin(), w.end(), [](i64 x) { return x == 0; });
}

struct Shortened {
  Weights short_weights;   // image of the lamination, on conjugator.target()
  Encoding conjugator;
};

// Flip until every non-peripheral component is parallel to an edge (Mosher's
// sequence; no twist acceleration).
inline Shortened shorten(const TriPtr& tri, const Weights& input) {
  Encoding conj(tri);
  TriPtr cur = tri;
  Weights peripheral = peripheral_part(*cur, input);
  Weights lam(input.size());
  for (std::size_t i = 0; i < lam.size(); ++i) lam[i] = input[i] - peripheral[i];
  std::vector<std::pair<int, i64>> arc_comp, curve_comp;
  auto record = [](std::vector<std::pair<int, i64>>& v, int e, i64 m) {
    for (auto& x : v)
      if (x.first == e) {
        x.second = m;
        return;
      }
    v.emplace_back(e, m);
  };
  bool has_arcs = true;
  auto strategy = [](const Triangulation& t, const Weights& w, int edge) -> int {
    if (!t.is_flippable(edge)) return 0;
    auto sq = t.square(edge);
    i64 ad = dual_weight(t, w, sq[0]), bd = dual_weight(t, w, sq[1]), ed = dual_weight(t, w, sq[4]);
    if (ed < 0) return 2;
    if (ed == 0 && ad > 0 && bd > 0) return 1;
    return 0;
  };
  auto step = [&](const Move& m) {
    m.apply(lam);
    m.apply(peripheral);
    conj.push(m);
    cur = m.target;
  };
  while (true) {
    Weights geo = lam;
    for (const auto& c : parallel_components(*cur, lam)) {
      if (weight_of(lam, c.edge) <= 0) {
        for (std::size_t i = 0; i < geo.size(); ++i) geo[i] = sub(geo[i], mul(c.weights[i], c.multiplicity));
        record(c.is_arc ? arc_comp : curve_comp, c.edge, c.multiplicity);
      }
    }
    lam = geo;
    if (is_zero(lam)) break;
    if (has_arcs) {
      bool any = false;
      for (int e = -cur->zeta(); e < cur->zeta() && !any; ++e)
        if (weight_of(lam, e) < 0 || dual_weight(*cur, lam, e) < 0) any = true;
      has_arcs = any;
    }
    const int upper = has_arcs ? 2 : 1;
    std::vector<int> extra;
    while (true) {
      int best_edge = 0, best = -1;
      std::vector<int> order = extra;
      for (int e = -cur->zeta(); e < cur->zeta(); ++e) order.push_back(e);
      for (int e : order) {
        int s = strategy(*cur, lam, e);
        if (s > best) {
          best = s;
          best_edge = e;
        }
        if (s >= upper) break;
      }
      if (best <= 0) break;
      auto sq = cur->square(best_edge);
      step(make_flip(cur, best_edge));
      extra = {sq[2], sq[3]};
    }
    std::vector<int> sequence;
    std::set<int> used;
    for (int start = -cur->zeta(); start < cur->zeta(); ++start) {
      if (used.count(start) || left_weight(*cur, lam, start) <= 0 || right_weight(*cur, lam, start) > 0) continue;
      int edge = start;
      bool add_seq = false;
      while (true) {
        used.insert(edge);
        if (add_seq) sequence.push_back(edge);
        edge = cur->corner(~edge)[left_weight(*cur, lam, ~edge) > 0 ? 2 : 1];
        add_seq = add_seq || right_weight(*cur, lam, edge) <= 0;
        if (edge == start) break;
      }
    }
    if (!sequence.empty()) {
      Weights multiarc = counts_of(*cur, sequence);
      Shortened sub = shorten(cur, multiarc);
      for (const auto& m : sub.conjugator.moves()) step(m);
    }
  }
  Weights out = peripheral;
  for (auto [e, m] : arc_comp) {
    Weights a = edge_arc(*cur, e);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = add(out[i], mul(a[i], m));
  }
  for (auto [e, m] : curve_comp) {
    Weights c = edge_curve(*cur, e);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = add(out[i], mul(c[i], m));
  }
  return {out, conj};
}

// Geometric intersection of a shortened lamination with laminations already
// mapped into the same (shortened) triangulation.
inline i64 intersection_short(const Triangulation& t, const Weights& short_w, const Weights& other) {
  i64 total = 0;
  for (const auto& pc : peripheral_components(t, short_w)) {
    i64 s = 0;
    for (int e : t.vertices()[pc.vertex]) s = add(s, std::max<i64>(-weight_of(other, e), 0) + std::max<i64>(-left_weight(t, other, e), 0));
    total = add(total, mul(pc.multiplicity, s));
  }
  for (const auto& c : parallel_components(t, short_w)) {
    if (c.is_arc) {
      total = add(total, mul(c.multiplicity, std::max<i64>(weight_of(other, c.edge), 0)));
      continue;
    }
    int p = c.edge;
    auto v_edges = cyclic_slice(t.vertex(p), p, ~p);
    std::vector<i64> lw2;
    for (int x : v_edges) lw2.push_back(left_weight(t, other, x, true));
    i64 around2 = maximin0(lw2);
    i64 out_v = 0;
    for (int x : v_edges) out_v += std::max<i64>(-left_weight(t, other, x), 0);
    for (std::size_t i = 1; i < v_edges.size(); ++i) out_v += std::max<i64>(-weight_of(other, v_edges[i]), 0);
    total = add(total, mul(c.multiplicity, std::max<i64>(weight_of(other, p), 0) - around2 + out_v));
  }
  return total;
}

inline i64 intersection(const TriPtr& t, const Weights& a, const Weights& b) {
  Shortened s = shorten(t, a);
  return intersection_short(*s.conjugator.target(), s.short_weights, s.conjugator(b));
}

// Components of a lamination with multiplicities, as weight vectors on t.
inline std::vector<std::pair<Weights, i64>> components(const TriPtr& t, const Weights& w) {
  Shortened s = shorten(t, w);
  Encoding inv = s.conjugator.inverse();
  const Triangulation& st = *s.conjugator.target();
  std::vector<std::pair<Weights, i64>> out;
  for (const auto& pc : peripheral_components(st, s.short_weights)) out.emplace_back(inv(pc.weights), pc.multiplicity);
  for (const auto& c : parallel_components(st, s.short_weights)) out.emplace_back(inv(c.weights), c.multiplicity);
  return out;
}

// Right half twist about a neighbourhood of the edge arc `edge`, which must join
// distinct vertices. The result maps t to itself.
inline Encoding half_twist_about_edge(const TriPtr& t, int edge) {
  if (t->vertex_id(edge) == t->vertex_id(~edge)) throw std::invalid_argument("arc joins a vertex to itself");
  if (t->vertex(edge).size() > t->vertex(~edge).size()) edge = ~edge;
  Encoding conj(t);
  TriPtr cur = t;
  while (cur->vertex(edge).size() > 1) {
    Move m = make_flip(cur, cur->corner(edge)[2]);
    conj.push(m);
    cur = m.target;
  }
  Encoding ht(cur);
  TriPtr mid = cur;
  while (cur->vertex(~edge).size() > 1) {
    Move m = make_flip(cur, cur->corner(~edge)[2]);
    ht.push(m);
    cur = m.target;
  }
  auto iso = cur->find_isometry(*mid, {{edge, ~edge}});
  if (!iso) throw std::logic_error("half twist: closing isometry not found");
  ht.push(make_isometry(cur, mid, *iso));
  return conj.then(ht).then(conj.inverse());
}

}  // namespace pants
