#pragma once

// Pants decompositions, elementary moves and bounded pieces of the pants graph.
//
// A marked vertex carries a braid word phi and a standard type (S or N); its
// curves are phi applied to the standard curves of that type. Moves in window
// i are realized in the standard window, so the other two curves are kept
// literally and only the new curve is computed.
//
// Bounded graph: an edge exists when both the removed and the added curve have
// height at most B in the canonical chart of their common window. Canonical
// charts depend only on the window, so the relation is symmetric.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pants/window.hpp"

namespace pants {

inline BraidWord free_reduce(const BraidWord& w) {
  BraidWord out;
  for (int x : w) {
    if (!out.empty() && out.back() == -x) out.pop_back();
    else out.push_back(x);
  }
  return out;
}

using VertexKey = std::vector<i64>;

struct PantsVertex {
  std::array<Weights, 3> curves;  // standard order when marked, sorted otherwise
  bool marked = false;
  PantsType type = PantsType::S;
  BraidWord marking;

  VertexKey key() const {
    std::array<const Weights*, 3> s{&curves[0], &curves[1], &curves[2]};
    std::sort(s.begin(), s.end(), [](const Weights* a, const Weights* b) { return *a < *b; });
    VertexKey k;
    for (const Weights* w : s) k.insert(k.end(), w->begin(), w->end());
    return k;
  }
  std::vector<Weights> sorted_curves() const {
    std::vector<Weights> v(curves.begin(), curves.end());
    std::sort(v.begin(), v.end());
    return v;
  }
  bool contains(const Weights& c) const { return std::find(curves.begin(), curves.end(), c) != curves.end(); }
};

inline PantsVertex marked_vertex(PantsType type, BraidWord marking) {
  PantsVertex v;
  v.marked = true;
  v.type = type;
  v.marking = free_reduce(marking);
  const auto& m = SurfaceModel::get();
  for (int i = 0; i < 3; ++i) v.curves[i] = m.apply(v.marking, std_curves(type)[i]);
  return v;
}

inline PantsVertex base_vertex() { return marked_vertex(PantsType::S, {}); }

// Three curves, checked to be a pants decomposition.
inline PantsVertex validate_pants(const NormalMulticurve& nu) {
  if (nu.components.size() != 3)
    throw std::invalid_argument("a pants decomposition has 3 curves, got " + std::to_string(nu.components.size()));
  for (const Piece& p : cut_along(nu))
    if (p.complexity != 0) throw std::invalid_argument("complement contains a piece of complexity " + std::to_string(p.complexity));
  PantsVertex v;
  for (int i = 0; i < 3; ++i) v.curves[i] = nu.components[i].weights;
  std::sort(v.curves.begin(), v.curves.end());
  return v;
}

inline PantsVertex validate_pants(const std::vector<Weights>& curves) { return validate_pants(multicurve_of(curves)); }

struct MoveCertificate {
  std::array<Weights, 2> shared;
  Weights removed, added;
  WindowKind window = WindowKind::Torus;
  i64 intersection = 0;
};

// The window of a codimension-one multicurve: the complexity-one piece of its
// complement.
inline WindowKind window_kind_of(const std::array<Weights, 2>& shared) {
  for (const Piece& p : cut_along(multicurve_of({shared[0], shared[1]})))
    if (p.complexity == 1) return p.genus == 1 ? WindowKind::Torus : WindowKind::Sphere;
  throw std::logic_error("codimension-one multicurve without a complexity-one piece");
}

inline std::optional<MoveCertificate> is_elementary_move(const PantsVertex& mu, const PantsVertex& nu) {
  auto a = mu.sorted_curves(), b = nu.sorted_curves();
  std::vector<Weights> shared, only_a, only_b;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(shared));
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(only_a));
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(only_b));
  if (shared.size() != 2) return std::nullopt;
  MoveCertificate c;
  c.shared = {shared[0], shared[1]};
  c.removed = only_a[0];
  c.added = only_b[0];
  c.window = window_kind_of(c.shared);
  c.intersection = closed_intersection(c.removed, c.added);
  if (c.intersection != (c.window == WindowKind::Torus ? 1 : 2)) return std::nullopt;
  return c;
}

struct MoveEdge {
  int to = -1;
  int window = 0;  // index of the replaced standard curve of the source
  Slope from, onto;  // canonical chart slopes
};

inline std::size_t key_hash(const VertexKey& k) {
  std::uint64_t h = 1469598103934665603ull;
  for (i64 x : k) {
    h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

struct VertexKeyHash {
  std::size_t operator()(const VertexKey& k) const { return key_hash(k); }
};

// Lazily expanded bounded pants graph. Vertices are interned by curve set.
class BoundedPantsGraph {
 public:
  explicit BoundedPantsGraph(i64 bound) : bound_(bound) {
    if (bound < 1) throw std::invalid_argument("bound must be positive");
  }

  i64 bound() const { return bound_; }
  std::size_t size() const { return verts_.size(); }
  std::size_t window_expansions() const { return expansions_; }
  const PantsVertex& vertex(int id) const { return verts_.at(static_cast<std::size_t>(id)); }

  int intern(const PantsVertex& v) {
    VertexKey k = v.key();
    auto it = index_.find(k);
    if (it != index_.end()) return it->second;
    int id = static_cast<int>(verts_.size());
    verts_.push_back(v);
    moves_.emplace_back();
    index_.emplace(std::move(k), id);
    return id;
  }

  std::optional<int> find(const PantsVertex& v) const {
    auto it = index_.find(v.key());
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  // Canonical-chart slope of curve i of a marked vertex in its window.
  Slope own_slope(int id, int i) {
    const PantsVertex& v = vertex(id);
    const StdWindow& sw = std_window(v.type, i);
    UnimodularMatrix chart = canonical_chart(sw, v.marking);
    Vec2 xs = sw.removed_seed == 0 ? Vec2{0, 1} : Vec2{1, 0};
    return lift_slope(sw.kind, apply_mat(chart.inverse(), xs));
  }

  const std::vector<MoveEdge>& window_moves(int id, int i) {
    auto& slot = moves_.at(static_cast<std::size_t>(id))[static_cast<std::size_t>(i)];
    if (slot) return *slot;
    ++expansions_;
    std::vector<MoveEdge> out;
    const PantsVertex v = vertex(id);  // copy: interning may reallocate
    if (!v.marked) throw std::invalid_argument("vertex has no marking; moves need a marked vertex");
    const auto& model = SurfaceModel::get();
    const StdWindow& sw = std_window(v.type, i);
    UnimodularMatrix chart = canonical_chart(sw, v.marking);
    Vec2 xs = sw.removed_seed == 0 ? Vec2{0, 1} : Vec2{1, 0};
    Slope sx = lift_slope(sw.kind, apply_mat(chart.inverse(), xs));
    if (sx.height() <= bound_) {
      const auto& perm = partner_slots(v.type, i);
      for (const Slope& s : farey_neighbors(sx, bound_)) {
        Vec2 t = apply_mat(chart, quotient_vec(sw.kind, s));
        Realization r = realize(sw, t);
        Weights added = model.apply(v.marking, model.apply(r.word, sw.seed[r.seed]));
        PantsVertex nv;
        nv.marked = true;
        if (r.seed == sw.removed_seed) {
          nv.type = v.type;
          nv.marking = free_reduce(concat(v.marking, r.word));
          nv.curves = v.curves;
          nv.curves[i] = added;
        } else {
          nv.type = sw.psi_type;
          nv.marking = free_reduce(concat(concat(v.marking, r.word), sw.psi));
          for (int j = 0; j < 3; ++j) nv.curves[j] = perm[j] < 0 ? added : v.curves[perm[j]];
        }
        out.push_back({intern(nv), i, sx, s});
      }
    }
    std::sort(out.begin(), out.end(), [&](const MoveEdge& a, const MoveEdge& b) { return key_of(a.to) < key_of(b.to); });
    auto& fresh = moves_.at(static_cast<std::size_t>(id))[static_cast<std::size_t>(i)];
    fresh = std::move(out);
    return *fresh;
  }

  // All bounded neighbours, sorted by curve sets.
  std::vector<int> neighbors(int id) {
    std::vector<int> out;
    for (int i = 0; i < 3; ++i)
      for (const auto& e : window_moves(id, i)) out.push_back(e.to);
    std::sort(out.begin(), out.end(), [&](int a, int b) { return key_of(a) < key_of(b); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  // Bounded adjacency, decided by expanding x in the single window where the
  // two vertices differ.
  bool adjacent(int x, int y) {
    const PantsVertex& a = vertex(x);
    const PantsVertex& b = vertex(y);
    int differ = -1, count = 0;
    for (int i = 0; i < 3; ++i)
      if (!b.contains(a.curves[i])) {
        differ = i;
        ++count;
      }
    if (count != 1) return false;
    for (const auto& e : window_moves(x, differ))
      if (e.to == y) return true;
    return false;
  }

  const VertexKey& key_of(int id) {
    auto& k = keys_[id];
    if (k.empty()) k = vertex(id).key();
    return k;
  }

 private:
  // For a move landing on the partner seed: new standard curve j is old curve
  // perm[j], or the added curve when perm[j] < 0.
  static const std::array<int, 3>& partner_slots(PantsType type, int index) {
    static const std::array<std::array<int, 3>, 6> table = [] {
      std::array<std::array<int, 3>, 6> t{};
      const auto& m = SurfaceModel::get();
      for (int ty = 0; ty < 2; ++ty)
        for (int i = 0; i < 3; ++i) {
          const StdWindow& sw = std_window(static_cast<PantsType>(ty), i);
          const auto& old = std_curves(static_cast<PantsType>(ty));
          for (int j = 0; j < 3; ++j) {
            Weights img = m.apply(sw.psi, std_curves(sw.psi_type)[j]);
            int slot = -2;
            if (img == sw.seed[1 - sw.removed_seed]) slot = -1;
            for (int k = 0; k < 3; ++k)
              if (k != i && img == old[k]) slot = k;
            if (slot == -2) throw std::logic_error("partner marking does not match the standard window");
            t[ty * 3 + i][j] = slot;
          }
        }
      return t;
    }();
    return table[static_cast<int>(type) * 3 + index];
  }

  i64 bound_;
  std::vector<PantsVertex> verts_;
  std::vector<std::array<std::optional<std::vector<MoveEdge>>, 3>> moves_;
  std::unordered_map<VertexKey, int, VertexKeyHash> index_;
  std::unordered_map<int, VertexKey> keys_;
  std::size_t expansions_ = 0;
};

struct NeighborMove {
  PantsVertex vertex;
  MoveCertificate certificate;
};

// Every bounded move of a marked vertex with its certificate.
inline std::vector<NeighborMove> enumerate_moves(const PantsVertex& v, i64 bound) {
  BoundedPantsGraph g(bound);
  int id = g.intern(v);
  std::vector<NeighborMove> out;
  for (int i = 0; i < 3; ++i) {
    const auto moves = g.window_moves(id, i);
    const StdWindow& sw = std_window(v.type, i);
    for (const auto& e : moves) {
      NeighborMove nm;
      nm.vertex = g.vertex(e.to);
      std::vector<Weights> sh;
      for (int j = 0; j < 3; ++j)
        if (j != i) sh.push_back(v.curves[j]);
      std::sort(sh.begin(), sh.end());
      nm.certificate.shared = {sh[0], sh[1]};
      nm.certificate.removed = v.curves[i];
      for (const auto& c : nm.vertex.curves)
        if (!v.contains(c)) nm.certificate.added = c;
      nm.certificate.window = sw.kind;
      nm.certificate.intersection = intersection_in_window(sw.kind, e.from, e.onto);
      out.push_back(std::move(nm));
    }
  }
  std::sort(out.begin(), out.end(), [](const NeighborMove& a, const NeighborMove& b) { return a.vertex.key() < b.vertex.key(); });
  return out;
}

// Breadth-first ball; layers[k] lists the sphere of radius k in id order.
struct Ball {
  int center = -1;
  int radius = 0;
  std::unordered_map<int, int> dist;
  std::vector<std::vector<int>> layers;
  std::optional<int> distance_to(int id) const {
    auto it = dist.find(id);
    if (it == dist.end()) return std::nullopt;
    return it->second;
  }
};

inline Ball grow_ball(BoundedPantsGraph& g, int center, int radius) {
  Ball b;
  b.center = center;
  b.radius = radius;
  b.dist[center] = 0;
  b.layers.push_back({center});
  for (int r = 1; r <= radius; ++r) {
    std::vector<int> next;
    for (int x : b.layers[r - 1])
      for (int y : g.neighbors(x))
        if (b.dist.emplace(y, r).second) next.push_back(y);
    std::sort(next.begin(), next.end());
    b.layers.push_back(std::move(next));
  }
  return b;
}

// Bounded distance and all bounded geodesics between two vertices, exact up
// to 2R + 1 where R is the ball radius; distances beyond are reported absent.
struct GeodesicSummary {
  std::optional<int> distance;
  int exact_up_to = 0;
  std::vector<std::vector<int>> layers;  // geodesic vertices by position
  std::uint64_t geodesic_count = 0;      // capped at budget + 1
  bool budget_exceeded = false;
};

inline GeodesicSummary bounded_geodesics(BoundedPantsGraph& g, int mu, int nu, int radius, std::uint64_t budget = 1000000) {
  GeodesicSummary out;
  out.exact_up_to = 2 * radius + 1;
  Ball bm = grow_ball(g, mu, radius), bn = grow_ball(g, nu, radius);
  std::optional<int> best;
  for (const auto& [id, dm] : bm.dist) {
    auto dn = bn.distance_to(id);
    if (dn && (!best || dm + *dn < *best)) best = dm + *dn;
  }
  // Edges between the two outer spheres, found through shared curve pairs.
  std::vector<std::pair<int, int>> middle;
  if (!best) {
    std::map<std::vector<i64>, std::vector<int>> by_pair;
    auto pair_keys = [&](int id) {
      std::vector<std::vector<i64>> keys;
      auto cs = g.vertex(id).sorted_curves();
      for (int drop = 0; drop < 3; ++drop) {
        std::vector<i64> k;
        for (int j = 0; j < 3; ++j)
          if (j != drop) k.insert(k.end(), cs[j].begin(), cs[j].end());
        keys.push_back(std::move(k));
      }
      return keys;
    };
    for (int y : bn.layers[radius])
      for (auto& k : pair_keys(y)) by_pair[k].push_back(y);
    for (int x : bm.layers[radius])
      for (auto& k : pair_keys(x)) {
        auto it = by_pair.find(k);
        if (it == by_pair.end()) continue;
        for (int y : it->second)
          if (g.adjacent(x, y)) middle.emplace_back(x, y);
      }
    if (!middle.empty()) best = 2 * radius + 1;
  }
  if (!best) return out;
  int d = *best;
  out.distance = d;
  // Layers of the geodesic set.
  std::vector<std::vector<int>> L(static_cast<std::size_t>(d + 1));
  for (int k = 0; k <= d; ++k) {
    if (k > radius || d - k > radius) continue;
    for (int id : bm.layers[k]) {
      auto dn = bn.distance_to(id);
      if (dn && *dn == d - k) L[k].push_back(id);
    }
  }
  if (d == 2 * radius + 1) {
    for (auto [x, y] : middle) {
      L[radius].push_back(x);
      L[radius + 1].push_back(y);
    }
  }
  for (auto& layer : L) {
    std::sort(layer.begin(), layer.end());
    layer.erase(std::unique(layer.begin(), layer.end()), layer.end());
  }
  // Extend towards mu using expanded inner spheres, and towards nu likewise.
  int lo = std::max(0, d - radius - (d == 2 * radius + 1 ? 1 : 0));
  for (int k = lo - 1; k >= 0; --k) {
    std::set<int> nxt(L[k + 1].begin(), L[k + 1].end());
    for (int id : bm.layers[k])
      for (int y : g.neighbors(id))
        if (nxt.count(y)) {
          L[k].push_back(id);
          break;
        }
  }
  int hi = std::min(d, radius + (d == 2 * radius + 1 ? 1 : 0));
  for (int k = hi + 1; k <= d; ++k) {
    std::set<int> prv(L[k - 1].begin(), L[k - 1].end());
    for (int id : bn.layers[d - k])
      for (int y : g.neighbors(id))
        if (prv.count(y)) {
          L[k].push_back(id);
          break;
        }
  }
  // Count geodesics layer by layer.
  std::map<int, std::uint64_t> count{{mu, 1}};
  for (int k = 1; k <= d; ++k)
    for (int z : L[k]) {
      std::uint64_t c = 0;
      for (int w : L[k - 1])
        if (g.adjacent(w, z)) c = std::min<std::uint64_t>(budget + 1, c + count[w]);
      count[z] = c;
    }
  out.geodesic_count = count[nu];
  out.budget_exceeded = out.geodesic_count > budget;
  out.layers = std::move(L);
  return out;
}

// Bounded distance up to max_len (absent when larger).
inline std::optional<int> bounded_pants_distance(const PantsVertex& mu, const PantsVertex& nu, i64 bound, int max_len) {
  if (mu.key() == nu.key()) return 0;
  BoundedPantsGraph g(bound);
  int a = g.intern(mu), b = g.intern(nu);
  int radius = std::max(0, max_len / 2);
  GeodesicSummary s = bounded_geodesics(g, a, b, radius);
  if (s.distance && *s.distance <= max_len) return s.distance;
  return std::nullopt;
}

// Portable uniform choice: modulo reduction of a 64-bit Mersenne twister.
inline std::size_t pick(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

inline std::vector<int> random_walk_ids(BoundedPantsGraph& g, int start, int length, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> path{start};
  for (int s = 0; s < length; ++s) {
    auto nb = g.neighbors(path.back());
    if (nb.empty()) throw std::runtime_error("vertex has no bounded neighbours");
    path.push_back(nb[pick(rng, nb.size())]);
  }
  return path;
}

inline std::vector<PantsVertex> random_walk_path(const PantsVertex& start, int length, i64 bound, std::uint64_t seed) {
  if (length < 0) throw std::invalid_argument("length must be non-negative");
  BoundedPantsGraph g(bound);
  std::vector<PantsVertex> out;
  for (int id : random_walk_ids(g, g.intern(start), length, seed)) out.push_back(g.vertex(id));
  return out;
}

}  // namespace pants
