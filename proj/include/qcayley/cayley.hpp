#pragma once

// The classical Cayley tree of a free product of universal quantum groups:
// vertices are irreducibles, edges join alpha to the summands of alpha (x)
// gamma for each direction gamma.  Vertices get BFS-ordered integer ids; the
// words themselves are recovered from parent pointers on demand.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "qcayley/errors.hpp"
#include "qcayley/fusion.hpp"

namespace qcayley {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
  VertexId source = 0;
  VertexId target = 0;
  std::uint32_t direction = 0;  // index into spec.directions()
  bool ascending = false;
};

struct TreeOptions {
  std::size_t vertex_cap = 200000;
};

/// An infinite geodesic from the root, given by a periodic pattern of
/// directions, e.g. (g, gbar, g, gbar, ...) in A_u.
class InfiniteGeodesic {
 public:
  InfiniteGeodesic(QuantumGroupSpec spec, std::vector<std::uint32_t> pattern)
      : spec_(std::move(spec)), pattern_(std::move(pattern)) {
    if (pattern_.empty()) throw DomainError("geodesic pattern must be nonempty");
    for (auto d : pattern_) (void)spec_.direction(d);
    // Every step must be ascending: the pattern may not immediately undo itself.
    Irrep w;
    for (std::size_t i = 0; i < 2 * pattern_.size() + 2; ++i) {
      auto next = fuse_raw(spec_, w, spec_.direction(direction(i))).ascending;
      if (sgn(quantum_dim(spec_, next)) <= 0) throw DomainError("geodesic pattern leaves the tree");
      w = std::move(next);
    }
  }

  /// (g) for a single A_o factor, (g, gbar) on the first A_u factor, else
  /// alternating generators of the first two factors.
  static InfiniteGeodesic standard(const QuantumGroupSpec& spec) {
    const auto& fs = spec.factors();
    for (std::uint32_t i = 0; i < fs.size(); ++i) {
      if (fs[i].kind == FactorKind::unitary) {
        return InfiniteGeodesic(spec, {spec.direction_index({i, false}), spec.direction_index({i, true})});
      }
    }
    if (fs.size() == 1) return InfiniteGeodesic(spec, {0});
    return InfiniteGeodesic(spec, {spec.direction_index({0, false}), spec.direction_index({1, false})});
  }

  const QuantumGroupSpec& spec() const { return spec_; }
  const std::vector<std::uint32_t>& pattern() const { return pattern_; }
  std::uint32_t direction(std::size_t step) const { return pattern_[step % pattern_.size()]; }

  /// The i-th vertex (i = 0 is the root).
  Irrep vertex(std::size_t i) const {
    Irrep w;
    for (std::size_t s = 0; s < i; ++s) w = fuse_raw(spec_, w, spec_.direction(direction(s))).ascending;
    return w;
  }

  /// Quantum dimensions of vertices 0..count-1.
  std::vector<Rational> dims(std::size_t count) const {
    std::vector<Rational> out;
    Irrep w;
    for (std::size_t s = 0; s < count; ++s) {
      out.push_back(quantum_dim(spec_, w));
      w = fuse_raw(spec_, w, spec_.direction(direction(s))).ascending;
    }
    return out;
  }

 private:
  QuantumGroupSpec spec_;
  std::vector<std::uint32_t> pattern_;
};

class CayleyTree {
 public:
  const QuantumGroupSpec& spec() const { return spec_; }
  int radius() const { return radius_; }
  /// True when the tree is the full ball of its radius; false for a single
  /// geodesic ray.
  bool is_ball() const { return is_ball_; }

  std::size_t vertex_count() const { return records_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  VertexId root() const { return 0; }

  int length(VertexId v) const { return static_cast<int>(record(v).length); }
  const Rational& dim(VertexId v) const {
    (void)record(v);
    return dims_[v];
  }
  std::optional<VertexId> parent(VertexId v) const {
    if (v == 0) return std::nullopt;
    return record(v).parent;
  }
  /// Direction index of the ascending edge parent(v) -> v.
  std::uint32_t parent_direction(VertexId v) const {
    if (v == 0) throw DomainError("the root has no parent");
    return record(v).direction;
  }
  std::span<const VertexId> children(VertexId v) const {
    const auto& r = record(v);
    return {child_ids_.data() + r.first_child, r.child_count};
  }

  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId e) const {
    if (e >= edges_.size()) throw DomainError("edge outside tree");
    return edges_[e];
  }
  static EdgeId reverse(EdgeId e) { return e ^ 1U; }
  /// The ascending edge parent(v) -> v.
  EdgeId ascending_edge(VertexId child) const {
    if (child == 0 || child >= records_.size()) throw DomainError("no ascending edge into this vertex");
    return 2 * (child - 1);
  }
  /// Upper endpoint of an edge (the vertex farther from the root).
  VertexId upper(EdgeId e) const { return e / 2 + 1; }

  /// Word of a vertex, rebuilt from the root along parent pointers.
  Irrep word(VertexId v) const {
    std::vector<std::uint32_t> dirs;
    for (VertexId x = v; x != 0; x = record(x).parent) dirs.push_back(record(x).direction);
    Irrep w;
    for (auto it = dirs.rbegin(); it != dirs.rend(); ++it) {
      w = fuse_raw(spec_, w, spec_.direction(*it)).ascending;
    }
    return w;
  }

  std::optional<VertexId> find(const Irrep& alpha) const {
    try {
      check_irrep(spec_, alpha);
    } catch (const DomainError&) {
      return std::nullopt;
    }
    VertexId v = 0;
    for (const auto& letter : alpha.letters()) {
      const auto& kind = spec_.factor(letter.factor).kind;
      std::size_t steps = kind == FactorKind::orthogonal ? letter.power : letter.symbols.size();
      for (std::size_t s = 0; s < steps; ++s) {
        Direction d{letter.factor, kind == FactorKind::unitary && letter.symbols[s] == 'U'};
        std::uint32_t di = spec_.direction_index(d);
        std::optional<VertexId> next;
        for (VertexId c : children(v)) {
          if (record(c).direction == di) {
            next = c;
            break;
          }
        }
        if (!next) return std::nullopt;
        v = *next;
      }
    }
    return v;
  }

  VertexId at(const Irrep& alpha) const {
    auto v = find(alpha);
    if (!v) throw DomainError("vertex " + to_string(alpha) + " not in tree");
    return *v;
  }

  /// Vertices of a given length, in id order.
  std::span<const VertexId> level(int n) const {
    if (n < 0 || n > radius_) throw DomainError("sphere radius " + std::to_string(n) + " outside tree radius " + std::to_string(radius_));
    return {level_ids_.data() + level_offsets_[n], level_offsets_[n + 1] - level_offsets_[n]};
  }

  friend CayleyTree build_tree(const QuantumGroupSpec& spec, int radius, TreeOptions options);
  friend CayleyTree build_geodesic_tree(const InfiniteGeodesic& geodesic, int radius);

 private:
  struct Record {
    VertexId parent = 0;
    std::uint32_t direction = 0;
    std::uint32_t length = 0;
    std::uint32_t first_child = 0;
    std::uint32_t child_count = 0;
  };

  const Record& record(VertexId v) const {
    if (v >= records_.size()) throw DomainError("vertex id outside tree");
    return records_[v];
  }

  VertexId add_vertex(VertexId parent, std::uint32_t direction, Rational dim) {
    const VertexId id = static_cast<VertexId>(records_.size());
    Record r;
    r.parent = parent;
    r.direction = direction;
    r.length = records_[parent].length + 1;
    records_.push_back(r);
    dims_.push_back(std::move(dim));
    edges_.push_back(Edge{parent, id, direction, true});
    edges_.push_back(Edge{id, parent, spec_.direction_index(spec_.dual(spec_.direction(direction))), false});
    return id;
  }

  void finish_levels() {
    level_offsets_.assign(static_cast<std::size_t>(radius_) + 2, 0);
    for (const auto& r : records_) ++level_offsets_[r.length + 1];
    for (std::size_t i = 1; i < level_offsets_.size(); ++i) level_offsets_[i] += level_offsets_[i - 1];
    level_ids_.resize(records_.size());
    std::vector<std::size_t> fill(level_offsets_.begin(), level_offsets_.end() - 1);
    for (VertexId v = 0; v < records_.size(); ++v) level_ids_[fill[records_[v].length]++] = v;
  }

  QuantumGroupSpec spec_;
  int radius_ = 0;
  bool is_ball_ = true;
  std::vector<Record> records_;
  std::vector<Rational> dims_;
  std::vector<VertexId> child_ids_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> level_offsets_;
  std::vector<VertexId> level_ids_;
};

/// Breadth-first closure of fusion with the generators, from the trivial
/// irrep out to `radius`.
inline CayleyTree build_tree(const QuantumGroupSpec& spec, int radius, TreeOptions options = {}) {
  if (radius < 0) throw DomainError("radius must be >= 0");
  CayleyTree t;
  t.spec_ = spec;
  t.radius_ = radius;
  t.records_.push_back({});
  t.dims_.emplace_back(1);
  const auto& dirs = spec.directions();
  for (VertexId v = 0; v < t.records_.size(); ++v) {
    auto& rec = t.records_[v];
    rec.first_child = static_cast<std::uint32_t>(t.child_ids_.size());
    if (static_cast<int>(rec.length) >= radius) continue;
    const Irrep w = t.word(v);
    for (std::uint32_t di = 0; di < dirs.size(); ++di) {
      Irrep up = fuse_raw(spec, w, dirs[di]).ascending;
      Rational m = quantum_dim_from(spec, w, t.dims_[v], up);
      if (sgn(m) < 0) {
        throw DomainError("negative quantum dimension for " + to_string(up) +
                          "; no universal quantum group has a generator dimension strictly between 1 and 2");
      }
      if (sgn(m) == 0) continue;
      if (t.records_.size() >= options.vertex_cap) {
        throw CapacityError("Cayley tree of " + to_string(spec) + " exceeds the vertex cap of " +
                            std::to_string(options.vertex_cap) + " before radius " + std::to_string(radius));
      }
      VertexId c = t.add_vertex(v, di, std::move(m));
      t.child_ids_.push_back(c);
      ++t.records_[v].child_count;
    }
  }
  t.finish_levels();
  return t;
}

/// The ray (alpha_0, ..., alpha_radius) of an infinite geodesic, as a tree.
inline CayleyTree build_geodesic_tree(const InfiniteGeodesic& geodesic, int radius) {
  if (radius < 0) throw DomainError("radius must be >= 0");
  CayleyTree t;
  t.spec_ = geodesic.spec();
  t.radius_ = radius;
  t.is_ball_ = false;
  t.records_.push_back({});
  t.dims_.emplace_back(1);
  Irrep w;
  for (int i = 0; i < radius; ++i) {
    const std::uint32_t di = geodesic.direction(static_cast<std::size_t>(i));
    w = fuse_raw(t.spec_, w, t.spec_.direction(di)).ascending;
    const auto v = static_cast<VertexId>(i);
    t.records_[v].first_child = static_cast<std::uint32_t>(t.child_ids_.size());
    t.records_[v].child_count = 1;
    VertexId c = t.add_vertex(v, di, quantum_dim(t.spec_, w));
    t.child_ids_.push_back(c);
  }
  t.records_.back().first_child = static_cast<std::uint32_t>(t.child_ids_.size());
  t.finish_levels();
  return t;
}

/// Ascending edges from the root to alpha, in order.
inline std::vector<EdgeId> geodesic(const CayleyTree& tree, VertexId v) {
  std::vector<EdgeId> path(static_cast<std::size_t>(tree.length(v)));
  for (std::size_t i = path.size(); v != 0; v = *tree.parent(v)) path[--i] = tree.ascending_edge(v);
  return path;
}

inline std::vector<EdgeId> geodesic(const CayleyTree& tree, const Irrep& alpha) {
  return geodesic(tree, tree.at(alpha));
}

inline std::vector<Irrep> sphere(const CayleyTree& tree, int n) {
  std::vector<Irrep> out;
  for (VertexId v : tree.level(n)) out.push_back(tree.word(v));
  return out;
}

// ---------------------------------------------------------------------------
// Validation

struct ValidationReport {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t fusion_checks = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

namespace detail {

inline std::string encode_word(const Irrep& w) { return to_string(w); }

}  // namespace detail

/// Re-checks the tree axioms and the fusion/dimension bookkeeping
/// m_alpha m_gamma = sum of m over the summands of alpha (x) gamma.
inline ValidationReport validate(const CayleyTree& tree, std::size_t max_failures = 20) {
  ValidationReport rep;
  rep.vertices = tree.vertex_count();
  rep.edges = tree.edge_count();
  auto fail = [&](std::string msg) {
    if (rep.failures.size() < max_failures) rep.failures.push_back(std::move(msg));
  };
  const auto& spec = tree.spec();
  if (rep.edges != 2 * (rep.vertices - 1)) fail("edge count is not 2(V-1)");
  if (tree.length(0) != 0 || !tree.word(0).is_trivial() || tree.dim(0) != 1) fail("root is not the trivial irrep");

  std::unordered_set<std::string> seen;
  for (VertexId v = 0; v < tree.vertex_count(); ++v) {
    const Irrep w = tree.word(v);
    if (!seen.insert(detail::encode_word(w)).second) fail("duplicate vertex " + to_string(w));
    if (length(w) != tree.length(v)) fail("cached length mismatch at " + to_string(w));
    const Rational mw = quantum_dim(spec, w);
    if (mw != tree.dim(v)) fail("cached dimension mismatch at " + to_string(w));
    if (v != 0) {
      VertexId p = *tree.parent(v);
      if (tree.length(p) + 1 != tree.length(v)) fail("parent length gap at " + to_string(w));
      const Edge& up = tree.edge(tree.ascending_edge(v));
      const Edge& down = tree.edge(CayleyTree::reverse(tree.ascending_edge(v)));
      if (up.source != p || up.target != v || !up.ascending) fail("bad ascending edge into " + to_string(w));
      if (down.source != v || down.target != p || down.ascending) fail("bad descending edge from " + to_string(w));
      if (spec.direction(down.direction) != spec.dual(spec.direction(up.direction))) {
        fail("reverse edge direction is not dual at " + to_string(w));
      }
    }
    for (VertexId c : tree.children(v)) {
      if (tree.parent(c) != v) fail("child/parent mismatch under " + to_string(w));
    }
    // Fusion closure and bookkeeping, direction by direction.
    for (std::uint32_t di = 0; di < spec.directions().size(); ++di) {
      const Direction d = spec.direction(di);
      std::vector<Summand> summands = fuse_generator_with_dims(spec, w, d, &mw);
      Rational total = 0;
      for (const auto& s : summands) total += s.dim;
      ++rep.fusion_checks;
      if (total != tree.dim(v) * spec.dimq(d)) {
        fail("fusion/dimension bookkeeping fails at " + to_string(w) + " direction " + to_string(spec, d));
      }
      for (const auto& [s, s_dim] : summands) {
        const int ls = length(s);
        if (ls == tree.length(v) - 1) {
          if (v == 0 || s != tree.word(*tree.parent(v))) fail("descending summand is not the parent at " + to_string(w));
          else if (tree.parent_direction(v) != spec.direction_index(spec.dual(d))) {
            fail("descending summand reached along a non-dual direction at " + to_string(w));
          }
        } else if (ls == tree.length(v) + 1) {
          if (tree.is_ball() && tree.length(v) < tree.radius()) {
            bool found = false;
            for (VertexId c : tree.children(v)) {
              if (tree.parent_direction(c) == di) found = tree.word(c) == s;
            }
            if (!found) fail("ascending summand " + to_string(s) + " missing from tree");
          }
        } else {
          fail("summand " + to_string(s) + " is not adjacent to " + to_string(w));
        }
      }
    }
  }
  for (std::size_t e = 0; e < tree.edge_count(); ++e) {
    const Edge& ed = tree.edge(static_cast<EdgeId>(e));
    if (ed.ascending != (tree.length(ed.target) == tree.length(ed.source) + 1)) fail("ascending flag mismatch on edge " + std::to_string(e));
    if (std::abs(tree.length(ed.target) - tree.length(ed.source)) != 1) fail("edge does not change length by one");
  }
  return rep;
}

}  // namespace qcayley
