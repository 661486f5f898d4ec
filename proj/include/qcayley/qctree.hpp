#pragma once

// The quasi-classical hilbertian tree.  Vertices carry the orthonormal basis
// xt_alpha = xi_alpha / m_alpha.  Edges carry either the antisymmetric basis
// xt_{alpha^beta} or the normalized oriented basis xi_(alpha,beta)/||.||, and
// E2 (target map) and O (source map) send edge vectors to vertex vectors.
//
// Coefficients live in a scalar field S: QuadScalar for exact work, double for
// float comparisons.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qcayley/cayley.hpp"
#include "qcayley/errors.hpp"
#include "qcayley/fusion.hpp"
#include "qcayley/scalar.hpp"
#include "qcayley/series.hpp"

namespace qcayley {

// ---------------------------------------------------------------------------
// Sparse vectors

struct VertexTag {};
struct GeomEdgeTag {};
struct OrientedEdgeTag {};

template <class Tag, class S = QuadScalar>
class SparseVector {
 public:
  using scalar_type = S;
  using map_type = std::map<std::uint32_t, S>;

  SparseVector() = default;

  static SparseVector basis(std::uint32_t key) {
    SparseVector v;
    v.coeffs_.emplace(key, ScalarTraits<S>::from_rational(Rational(1)));
    return v;
  }

  void add(std::uint32_t key, const S& value) {
    if (ScalarTraits<S>::is_zero(value)) return;
    auto [it, inserted] = coeffs_.try_emplace(key, value);
    if (!inserted) {
      it->second += value;
      if (ScalarTraits<S>::is_zero(it->second)) coeffs_.erase(it);
    }
  }
  S coeff(std::uint32_t key) const {
    auto it = coeffs_.find(key);
    return it == coeffs_.end() ? S{} : it->second;
  }

  const map_type& coeffs() const { return coeffs_; }
  auto begin() const { return coeffs_.begin(); }
  auto end() const { return coeffs_.end(); }
  std::size_t size() const { return coeffs_.size(); }
  bool empty() const { return coeffs_.empty(); }

  SparseVector& operator+=(const SparseVector& o) {
    for (const auto& [k, c] : o.coeffs_) add(k, c);
    return *this;
  }
  SparseVector& operator-=(const SparseVector& o) {
    for (const auto& [k, c] : o.coeffs_) add(k, -c);
    return *this;
  }
  SparseVector& operator*=(const S& s) {
    if (ScalarTraits<S>::is_zero(s)) {
      coeffs_.clear();
      return *this;
    }
    for (auto& [k, c] : coeffs_) c *= s;
    return *this;
  }
  friend SparseVector operator+(SparseVector a, const SparseVector& b) { return a += b; }
  friend SparseVector operator-(SparseVector a, const SparseVector& b) { return a -= b; }
  friend SparseVector operator*(const S& s, SparseVector v) { return v *= s; }
  SparseVector operator-() const {
    SparseVector r;
    for (const auto& [k, c] : coeffs_) r.coeffs_.emplace(k, -c);
    return r;
  }

  S norm_sq() const {
    S sum{};
    for (const auto& [k, c] : coeffs_) sum += c * c;
    return sum;
  }
  friend S inner(const SparseVector& a, const SparseVector& b) {
    S sum{};
    for (const auto& [k, c] : a.coeffs_) {
      auto it = b.coeffs_.find(k);
      if (it != b.coeffs_.end()) sum += c * it->second;
    }
    return sum;
  }
  friend bool operator==(const SparseVector& a, const SparseVector& b) { return (a - b).empty(); }

 private:
  map_type coeffs_;
};

/// Coefficients in the orthonormal vertex basis (xt_alpha), keyed by vertex id.
template <class S = QuadScalar>
using VertexVector = SparseVector<VertexTag, S>;
/// Coefficients in the orthonormal antisymmetric basis xt_{alpha^beta}, keyed
/// by the id of the ascending edge alpha -> beta.
template <class S = QuadScalar>
using GeomEdgeVector = SparseVector<GeomEdgeTag, S>;
/// Coefficients in the normalized oriented basis, keyed by directed edge id.
template <class S = QuadScalar>
using OrientedEdgeVector = SparseVector<OrientedEdgeTag, S>;

// ---------------------------------------------------------------------------
// Weighted tree view

enum class Weighting {
  quantum,    // m_alpha = quantum dimension
  classical,  // every weight forced to 1: the combinatorial tree
};

class HilbertianTree {
 public:
  explicit HilbertianTree(const CayleyTree& tree, Weighting weighting = Weighting::quantum)
      : tree_(&tree), weighting_(weighting) {}

  const CayleyTree& tree() const { return *tree_; }
  Weighting weighting() const { return weighting_; }

  Rational m(VertexId v) const { return weighting_ == Weighting::quantum ? tree_->dim(v) : Rational(1); }
  Rational m_dir(std::uint32_t direction) const {
    return weighting_ == Weighting::quantum ? tree_->spec().dimq(tree_->spec().direction(direction)) : Rational(1);
  }

  void check_ascending(EdgeId e) const {
    if (e >= tree_->edge_count() || !tree_->edge(e).ascending) {
      throw DomainError("antisymmetric edge vectors are keyed by ascending edges only (got edge " + std::to_string(e) + ")");
    }
  }
  void check_vertex(VertexId v) const {
    if (v >= tree_->vertex_count()) throw DomainError("vertex outside tree");
  }

 private:
  const CayleyTree* tree_;
  Weighting weighting_;
};

template <class S = QuadScalar>
VertexVector<S> xi_tilde(const HilbertianTree& h, VertexId v) {
  h.check_vertex(v);
  return VertexVector<S>::basis(v);
}

// ---------------------------------------------------------------------------
// Operators

/// E2 xt_{a^b} = sqrt(m_g/2) (sqrt(m_a/m_b) xt_b - sqrt(m_b/m_a) xt_a).
template <class S>
VertexVector<S> e2(const HilbertianTree& h, const GeomEdgeVector<S>& v) {
  using T = ScalarTraits<S>;
  VertexVector<S> out;
  for (const auto& [e, c] : v) {
    h.check_ascending(e);
    const Edge& ed = h.tree().edge(e);
    const Rational mg = h.m_dir(ed.direction);
    const Rational ma = h.m(ed.source);
    const Rational mb = h.m(ed.target);
    out.add(ed.target, c * T::sqrt_of(mg * ma / (2 * mb)));
    out.add(ed.source, -(c * T::sqrt_of(mg * mb / (2 * ma))));
  }
  return out;
}

/// E2 on the normalized oriented basis: xi_(a,b)/|| || -> sqrt(m_a m_g / m_b) xt_b.
template <class S>
VertexVector<S> e2(const HilbertianTree& h, const OrientedEdgeVector<S>& v) {
  VertexVector<S> out;
  for (const auto& [e, c] : v) {
    const Edge& ed = h.tree().edge(e);
    out.add(ed.target, c * ScalarTraits<S>::sqrt_of(h.m(ed.source) * h.m_dir(ed.direction) / h.m(ed.target)));
  }
  return out;
}

/// Source map O: xi_(a,b)/|| || -> sqrt(m_b m_g / m_a) xt_a.
template <class S>
VertexVector<S> o_source(const HilbertianTree& h, const OrientedEdgeVector<S>& v) {
  VertexVector<S> out;
  for (const auto& [e, c] : v) {
    const Edge& ed = h.tree().edge(e);
    out.add(ed.source, c * ScalarTraits<S>::sqrt_of(h.m(ed.target) * h.m_dir(ed.direction) / h.m(ed.source)));
  }
  return out;
}

/// Theta xi_(a,b) = xi_(b,a); both have the same norm since m_gbar = m_g.
template <class S>
OrientedEdgeVector<S> theta(const HilbertianTree& h, const OrientedEdgeVector<S>& v) {
  OrientedEdgeVector<S> out;
  for (const auto& [e, c] : v) {
    (void)h.tree().edge(e);
    out.add(CayleyTree::reverse(e), c);
  }
  return out;
}

/// Theta acts as -id on the antisymmetric edge space.
template <class S>
GeomEdgeVector<S> theta(const HilbertianTree& h, const GeomEdgeVector<S>& v) {
  for (const auto& [e, c] : v) h.check_ascending(e);
  return -v;
}

/// Orthogonal projection onto the antisymmetric edge space, expressed in the
/// basis xt_{a^b} = (xi_(a,b)/|| || - xi_(b,a)/|| ||) / sqrt(2).
template <class S>
GeomEdgeVector<S> antisymmetrize(const HilbertianTree& h, const OrientedEdgeVector<S>& v) {
  const S inv_sqrt2 = ScalarTraits<S>::sqrt_of(Rational(1, 2));
  GeomEdgeVector<S> out;
  for (const auto& [e, c] : v) {
    const Edge& ed = h.tree().edge(e);
    const EdgeId up = ed.ascending ? e : CayleyTree::reverse(e);
    out.add(up, ed.ascending ? S(c * inv_sqrt2) : S(-(c * inv_sqrt2)));
  }
  return out;
}

/// Inclusion of the antisymmetric edge space into the oriented edge space.
template <class S>
OrientedEdgeVector<S> embed(const HilbertianTree& h, const GeomEdgeVector<S>& v) {
  const S inv_sqrt2 = ScalarTraits<S>::sqrt_of(Rational(1, 2));
  OrientedEdgeVector<S> out;
  for (const auto& [e, c] : v) {
    h.check_ascending(e);
    out.add(e, c * inv_sqrt2);
    out.add(CayleyTree::reverse(e), -(c * inv_sqrt2));
  }
  return out;
}

/// eps(xt_alpha) = m_alpha.
template <class S>
S counit(const HilbertianTree& h, const VertexVector<S>& v) {
  S sum{};
  for (const auto& [vertex, c] : v) {
    h.check_vertex(vertex);
    sum += c * ScalarTraits<S>::from_rational(h.m(vertex));
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Paths

/// zeta_alpha = sum_i sqrt(2/m_{g_i}) xt_{a_i ^ a_{i+1}} / sqrt(m_{a_i} m_{a_{i+1}})
/// along the geodesic from the root to alpha; E2 zeta_alpha = xt_alpha/m_alpha - xi_0.
template <class S = QuadScalar>
GeomEdgeVector<S> path_vector(const HilbertianTree& h, VertexId alpha) {
  h.check_vertex(alpha);
  GeomEdgeVector<S> out;
  for (EdgeId e : geodesic(h.tree(), alpha)) {
    const Edge& ed = h.tree().edge(e);
    out.add(e, ScalarTraits<S>::sqrt_of(Rational(2) / (h.m_dir(ed.direction) * h.m(ed.source) * h.m(ed.target))));
  }
  return out;
}

template <class S = QuadScalar>
GeomEdgeVector<S> path_vector(const HilbertianTree& h, const Irrep& alpha) {
  return path_vector<S>(h, h.tree().at(alpha));
}

/// Exact squared norm of zeta_alpha: sum_i 2 / (m_{g_i} m_{a_i} m_{a_{i+1}}).
inline Rational path_norm_sq(const HilbertianTree& h, VertexId alpha) {
  Rational sum = 0;
  for (EdgeId e : geodesic(h.tree(), alpha)) {
    const Edge& ed = h.tree().edge(e);
    sum += Rational(2) / (h.m_dir(ed.direction) * h.m(ed.source) * h.m(ed.target));
  }
  return sum;
}

namespace detail {

inline void require_geometric_growth(const Rational& dimq, const char* op) {
  if (dimq <= 2) {
    throw GateError(std::string(op) + ": refused for a direction of quantum dimension " + dimq.get_str() +
                    " <= 2; geometric growth needs every direction to have quantum dimension different from 2 "
                    "(dim_q = 2 for A_o(I_2), A_u(I_2); dim_q = 1 for A_o(I_1), A_u(I_1))");
  }
}

/// Upper bound for sum_{i >= start} scale / (m_i m_{i+1}) on a geodesic whose
/// directions all have dimension >= dmin > 2: m_{i+1} >= a m_i with a + 1/a = dmin.
inline std::pair<Rational, TailCertificate> geodesic_tail(const Rational& scale, const Rational& m_start,
                                                          const Rational& m_next, const Rational& dmin,
                                                          std::size_t start) {
  const Interval a = a_param(dmin).a;
  const Rational ratio = 1 / (a.lo() * a.lo());
  const Rational first = scale / (m_start * m_next);
  return {first / (1 - ratio), TailCertificate{ratio, start}};
}

}  // namespace detail

struct FixedVectorResult {
  GeomEdgeVector<QuadScalar> partial;  // zeta_inf truncated after the edge into alpha_R
  Rational partial_norm_sq;
  Rational tail_bound;  // ||zeta_inf - partial||^2 <= tail_bound
  TailCertificate certificate;
  int radius = 0;
  Rational m_radius;            // m_{alpha_R}
  Rational residual_minus_sq;   // ||E2 partial + xi_0||^2, equals 1/m_R^2
  Rational residual_plus_sq;    // ||E2 partial - xi_0||^2
  Interval norm_sq() const { return Interval(partial_norm_sq, partial_norm_sq + tail_bound); }
};

/// Truncation of zeta_inf = sum_{i>=0} sqrt(2/m_{g_i}) xt_{a_i^a_{i+1}} / sqrt(m_{a_i} m_{a_{i+1}})
/// along an infinite geodesic, through the edge into alpha_R.  `h` must contain
/// alpha_0..alpha_R (a ball of radius >= R or the geodesic ray itself).
inline FixedVectorResult fixed_vector(const HilbertianTree& h, const InfiniteGeodesic& geo, int R) {
  if (R < 0) throw DomainError("fixed_vector: R must be >= 0");
  if (!(h.tree().spec() == geo.spec())) throw DomainError("fixed_vector: geodesic and tree specs differ");
  if (h.weighting() == Weighting::classical) {
    throw GateError("fixed_vector: classical weights are all 1, the series sum 1/m_i^2 diverges");
  }
  Rational dmin;
  for (std::size_t i = 0; i < geo.pattern().size(); ++i) {
    const Rational& d = geo.spec().dimq(geo.spec().direction(geo.pattern()[i]));
    if (i == 0 || d < dmin) dmin = d;
  }
  // The hypothesis concerns every direction of the quantum group, not only
  // those the geodesic uses.
  detail::require_geometric_growth(geo.spec().min_dimq(), "fixed_vector");

  FixedVectorResult r;
  r.radius = R;
  const VertexId end = h.tree().at(geo.vertex(static_cast<std::size_t>(R)));
  r.partial = path_vector<QuadScalar>(h, end);
  r.partial_norm_sq = path_norm_sq(h, end);
  r.m_radius = h.m(end);
  const std::vector<Rational> dims = geo.dims(static_cast<std::size_t>(R) + 2);
  // Terms 2/(m_g m_i m_{i+1}) with m_g >= dmin.
  auto [tail, cert] = detail::geodesic_tail(Rational(2) / dmin, dims[R], dims[R + 1], dmin, static_cast<std::size_t>(R));
  r.tail_bound = tail;
  r.certificate = cert;
  const VertexVector<QuadScalar> image = e2(h, r.partial);
  const VertexVector<QuadScalar> xi0 = xi_tilde(h, h.tree().root());
  r.residual_minus_sq = (image + xi0).norm_sq().rational_value();
  r.residual_plus_sq = (image - xi0).norm_sq().rational_value();
  return r;
}

// ---------------------------------------------------------------------------
// A_o: inverse of E2 on the half-line and its Gram matrix

namespace detail {

inline const Rational& require_single_ao(const QuantumGroupSpec& spec, const char* op) {
  if (spec.factors().size() != 1 || spec.factors()[0].kind != FactorKind::orthogonal) {
    throw DomainError(std::string(op) + ": needs a single A_o factor (half-line tree), got " + to_string(spec));
  }
  const Rational& d = spec.factors()[0].dimq;
  require_geometric_growth(d, op);
  return d;
}

}  // namespace detail

template <class S = QuadScalar>
struct InverseResult {
  GeomEdgeVector<S> vector;
  Rational tail_bound;   // squared norm of the omitted part of the series
  Rational residual_sq;  // ||E2(vector) - xt_k||^2 = (m_k / m_{R+1})^2
};

/// E2^{-1}(xt_k) = -m_k sqrt(2/m_1) sum_{i>=k} xt_{i^i+1} / sqrt(m_i m_{i+1}),
/// truncated after i = R.  The tree must have radius >= R + 1.
template <class S = QuadScalar>
InverseResult<S> e2_inverse_ao(const HilbertianTree& h, int k, int R) {
  const Rational& d = detail::require_single_ao(h.tree().spec(), "e2_inverse_ao");
  if (h.weighting() != Weighting::quantum) throw GateError("e2_inverse_ao: needs quantum weights");
  if (k < 0 || k > R) throw DomainError("e2_inverse_ao: need 0 <= k <= R");
  if (R + 1 > h.tree().radius()) throw DomainError("e2_inverse_ao: tree radius must be >= R + 1");
  InverseResult<S> r;
  const auto& tree = h.tree();
  // On the half-line, vertex i has id i and its ascending edge is 2(i-1).
  const Rational mk = tree.dim(static_cast<VertexId>(k));
  for (int i = k; i <= R; ++i) {
    const Rational mi = tree.dim(static_cast<VertexId>(i));
    const Rational mi1 = tree.dim(static_cast<VertexId>(i + 1));
    r.vector.add(tree.ascending_edge(static_cast<VertexId>(i + 1)),
                 -ScalarTraits<S>::sqrt_of(2 * mk * mk / (d * mi * mi1)));
  }
  const std::vector<Rational> m = ao_dims(d, R + 3);
  r.tail_bound = detail::geodesic_tail(2 * mk * mk / d, m[R + 1], m[R + 2], d, static_cast<std::size_t>(R) + 1).first;
  const Rational q = mk / m[R + 1];
  r.residual_sq = q * q;
  return r;
}

/// Gram entry (E2^{-1} xt_k | E2^{-1} xt_l) = (2/m_1) sum_{i>=max(k,l)} m_k m_l / (m_i m_{i+1}),
/// summed through i = R, enclosed with a certified tail.
inline Interval gram(const HilbertianTree& h, int k, int l, int R = 40) {
  const Rational& d = detail::require_single_ao(h.tree().spec(), "gram");
  if (k < 0 || l < 0) throw DomainError("gram: negative index");
  const int j = std::max(k, l);
  if (R < j) throw DomainError("gram: R must be >= max(k, l)");
  const std::vector<Rational> m = ao_dims(d, R + 3);
  const Rational scale = 2 * m[k] * m[l] / d;
  Rational partial = 0;
  for (int i = j; i <= R; ++i) partial += scale / (m[i] * m[i + 1]);
  const Rational tail = detail::geodesic_tail(scale, m[R + 1], m[R + 2], d, static_cast<std::size_t>(R) + 1).first;
  return Interval(partial, partial + tail);
}

/// Smallest D with gram(k, l) <= D a^{-|k-l|} for all k, l <= kmax, using
/// the upper ends of the Gram enclosures and of a.
inline Rational gram_bound(const HilbertianTree& h, int kmax, int R = 40) {
  const Rational& d = detail::require_single_ao(h.tree().spec(), "gram_bound");
  const Interval a = a_param(d).a;
  Rational D = 0;
  for (int k = 0; k <= kmax; ++k) {
    for (int l = 0; l <= kmax; ++l) {
      const Rational candidate = gram(h, k, l, std::max(R, kmax)).hi() * pow(a.hi(), static_cast<unsigned>(std::abs(k - l)));
      D = std::max(D, candidate);
    }
  }
  return D;
}

}  // namespace qcayley
