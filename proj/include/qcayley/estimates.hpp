#pragma once

// Certified series and inequality checks around the A_o fixed vector.  The
// Sobolev-type norms control rapid decay; the Toeplitz matrix (a^{-|k-l|})
// and the Cauchy-Schwarz chain bound the sums of orientation estimates.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "qcayley/cayley.hpp"
#include "qcayley/errors.hpp"
#include "qcayley/fusion.hpp"
#include "qcayley/scalar.hpp"
#include "qcayley/series.hpp"

namespace qcayley {

namespace detail {

inline unsigned twice_exponent(const Rational& s, const char* op) {
  const Rational two_s = 2 * s;
  if (sgn(s) < 0 || two_s.get_den() != 1 || !two_s.get_num().fits_uint_p()) {
    throw DomainError(std::string(op) + ": s must be a nonnegative multiple of 1/2 (got " + s.get_str() + ")");
  }
  return static_cast<unsigned>(two_s.get_num().get_ui());
}

}  // namespace detail

/// (2/m_1) sum_{i>=0} r^{2i+2} (i+2)^{2s} / (m_i m_{i+1}) for the A_o dimensions
/// of `dimq`, summed through i = R with a certified geometric tail.
///
/// Tail: m_{i+1} >= a m_i gives term(i+1)/term(i) <= (r/a)^2 ((i+3)/(i+2))^{2s},
/// which drops below rho = (1 + (r/a)^2)/2 from a computable index on.
inline SeriesResult nonuni_norm_sq(const Rational& s, const Rational& r, const Rational& dimq, int R) {
  if (R < 0) throw DomainError("series: R must be >= 0");
  if (sgn(r) <= 0) throw DomainError("nonuni_norm_sq: r must be positive");
  if (dimq <= 2) {
    throw GateError("series refused for dimq = " + dimq.get_str() +
                    " <= 2: the dimensions do not grow geometrically");
  }
  const unsigned two_s = detail::twice_exponent(s, "nonuni_norm_sq");
  const Interval a = a_param(dimq).a;
  if (!(a.lo() > r)) {
    throw GateError("nonuni_norm_sq: need a > r, but a in [" + std::to_string(a.lo_double()) + ", " +
                    std::to_string(a.hi_double()) + "] and r = " + r.get_str());
  }
  const Rational q = (r * r) / (a.lo() * a.lo());  // >= (r/a)^2
  const Rational rho = (1 + q) / 2;
  // smallest i0 >= R+1 with q ((i0+3)/(i0+2))^{2s} <= rho
  std::size_t i0 = static_cast<std::size_t>(R) + 1;
  while (q * pow(Rational(static_cast<long>(i0) + 3, static_cast<long>(i0) + 2), two_s) > rho) ++i0;

  const std::vector<Rational> m = ao_dims(dimq, static_cast<int>(i0) + 2);
  const Rational r2 = r * r;
  auto term = [&](std::size_t i) {
    return Rational(2 * pow(r2, static_cast<unsigned>(i + 1)) *
                    pow(Rational(static_cast<long>(i) + 2), two_s) / (dimq * m[i] * m[i + 1]));
  };
  SeriesResult res;
  res.partial = 0;
  for (std::size_t i = 0; i <= static_cast<std::size_t>(R); ++i) res.partial += term(i);
  res.terms_used = static_cast<std::size_t>(R) + 1;
  res.tail_bound = 0;
  for (std::size_t i = static_cast<std::size_t>(R) + 1; i < i0; ++i) res.tail_bound += term(i);
  res.tail_bound += term(i0) / (1 - rho);
  res.certificate = TailCertificate{rho, i0};
  return res;
}

/// (2/m_1) sum_{i>=0} (i+2)^{2s} / (m_i m_{i+1}): the squared Sobolev norm bound
/// of the fixed vector.
inline SeriesResult rd_norm_sq(const Rational& dimq, const Rational& s, int R) {
  return nonuni_norm_sq(s, Rational(1), dimq, R);
}

/// Row-sum (Schur test) bound for the operator norm of (a^{-|k-l|}):
/// (1 + 1/a)/(1 - 1/a), upper end over the enclosure of a.
inline Rational toeplitz_schur_bound(const Interval& a) {
  if (!(a.lo() > 1)) throw DomainError("toeplitz_schur_bound: need a > 1");
  const Rational b = 1 / a.lo();
  return (1 + b) / (1 - b);
}

/// Enclosure of the largest eigenvalue of the size x size matrix (a^{-|k-l|}).
/// A float power iteration supplies a positive vector x; the Collatz-Wielandt
/// quotients min_i (Tx)_i/x_i <= lambda_max <= max_i (Tx)_i/x_i are then
/// evaluated in rational interval arithmetic.
inline Interval truncated_toeplitz_norm(const Interval& a, std::size_t size) {
  if (!(a.lo() > 1)) throw DomainError("truncated_toeplitz_norm: need a > 1");
  if (size == 0) throw DomainError("truncated_toeplitz_norm: size must be >= 1");
  const double bf = 1.0 / a.mid_double();
  std::vector<double> pw(size);
  pw[0] = 1.0;
  for (std::size_t d = 1; d < size; ++d) pw[d] = pw[d - 1] * bf;
  std::vector<double> x(size, 1.0), y(size);
  for (int iter = 0; iter < 200000; ++iter) {
    double lo = HUGE_VAL, hi = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < size; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < size; ++j) acc += pw[i > j ? i - j : j - i] * x[j];
      y[i] = acc;
      lo = std::min(lo, acc / x[i]);
      hi = std::max(hi, acc / x[i]);
      norm = std::max(norm, acc);
    }
    for (std::size_t i = 0; i < size; ++i) x[i] = y[i] / norm;
    if (hi - lo <= 1e-14 * hi) break;
  }
  // Certified quotients.  Entries b^d lie in [(1/a_hi)^d, (1/a_lo)^d].
  const Rational b_lo = 1 / a.hi();
  const Rational b_hi = 1 / a.lo();
  std::vector<Rational> plo(size), phi(size);
  plo[0] = 1;
  phi[0] = 1;
  for (std::size_t d = 1; d < size; ++d) {
    plo[d] = floor_dyadic(plo[d - 1] * b_lo, Interval::kPrecisionBits);
    phi[d] = ceil_dyadic(phi[d - 1] * b_hi, Interval::kPrecisionBits);
  }
  std::vector<Rational> xr(size);
  for (std::size_t i = 0; i < size; ++i) xr[i] = Rational(std::max(x[i], 1e-300));
  Rational lam_lo, lam_hi;
  for (std::size_t i = 0; i < size; ++i) {
    Rational lo = 0, hi = 0;
    for (std::size_t j = 0; j < size; ++j) {
      const std::size_t d = i > j ? i - j : j - i;
      lo += plo[d] * xr[j];
      hi += phi[d] * xr[j];
    }
    const Rational qlo = floor_dyadic(lo / xr[i], Interval::kPrecisionBits);
    const Rational qhi = ceil_dyadic(hi / xr[i], Interval::kPrecisionBits);
    if (i == 0 || qlo < lam_lo) lam_lo = qlo;
    if (i == 0 || qhi > lam_hi) lam_hi = qhi;
  }
  return Interval(lam_lo, lam_hi);
}

struct ChainCheckResult {
  bool ok = true;
  std::optional<std::string> failure;
  double max_pointwise_ratio = 0.0;   // max_k LHS/RHS of the per-k inequality
  double aggregate_ratio = 0.0;       // LHS/RHS of the summed inequality
};

/// Checks, for x_0, x_1, ... >= 0 and b = 1/a,
///   (sum_{j>=k} b^{j-k} x_j)^2 <= slack/(1-b) * sum_{j>=k} b^{j-k} x_j^2   for every k,
///   sum_k (sum_{j>=k} b^{j-k} x_j)^2 <= slack/(1-b)^2 * sum_j x_j^2.
/// Inequalities are certified with interval arithmetic (upper end of the
/// left side against the lower end of the right side).  slack = 1 is the true
/// inequality; slack < 1 is a deliberately strengthened claim.
inline ChainCheckResult orientation_chain_check(const Interval& a, std::span<const Rational> x,
                                                const Rational& slack = Rational(1)) {
  if (!(a.lo() > 1)) throw DomainError("orientation_chain_check: need a > 1");
  for (const auto& v : x) {
    if (sgn(v) < 0) throw DomainError("orientation_chain_check: negative entry " + v.get_str());
  }
  ChainCheckResult res;
  const Interval b = a.inverse();
  const Interval one_minus_b = Interval(Rational(1)) - b;
  const Interval pointwise_const = Interval(slack) / one_minus_b;
  const Interval aggregate_const = Interval(slack) / (one_minus_b * one_minus_b);
  const std::size_t n = x.size();
  // S_k = x_k + b S_{k+1}, Q_k = x_k^2 + b Q_{k+1}
  Interval S(Rational(0)), Q(Rational(0)), lhs_total(Rational(0));
  Rational x_sq_total = 0;
  for (std::size_t step = 0; step < n; ++step) {
    const std::size_t k = n - 1 - step;
    S = Interval(x[k]) + b * S;
    Q = Interval(x[k] * x[k]) + b * Q;
    x_sq_total += x[k] * x[k];
    const Interval lhs = S * S;
    const Interval rhs = pointwise_const * Q;
    lhs_total += lhs;
    if (sgn(rhs.hi()) > 0) res.max_pointwise_ratio = std::max(res.max_pointwise_ratio, lhs.mid_double() / rhs.mid_double());
    if (lhs.hi() > rhs.lo() && !(sgn(lhs.hi()) == 0)) {
      if (res.ok) {
        std::ostringstream msg;
        msg << "pointwise inequality fails at k=" << k << ": lhs ~ " << lhs.mid_double() << " > rhs ~ " << rhs.mid_double();
        res.failure = msg.str();
      }
      res.ok = false;
    }
  }
  const Interval rhs_total = aggregate_const * Interval(x_sq_total);
  if (sgn(rhs_total.hi()) > 0) res.aggregate_ratio = lhs_total.mid_double() / rhs_total.mid_double();
  if (lhs_total.hi() > rhs_total.lo() && sgn(lhs_total.hi()) != 0) {
    if (res.ok) {
      std::ostringstream msg;
      msg << "aggregate inequality fails: lhs ~ " << lhs_total.mid_double() << " > rhs ~ " << rhs_total.mid_double();
      res.failure = msg.str();
    }
    res.ok = false;
  }
  return res;
}

/// sqrt(m_l m_{l-1} / (m_j m_{j+1})) on the A_o half-line, 1 <= l <= j+1.
inline QuadScalar s_norm_ratio(const CayleyTree& tree, int l, int j) {
  const auto& spec = tree.spec();
  if (spec.factors().size() != 1 || spec.factors()[0].kind != FactorKind::orthogonal) {
    throw DomainError("s_norm_ratio: needs a single A_o factor");
  }
  if (l < 1 || j < 0 || l > j + 1) throw DomainError("s_norm_ratio: need 1 <= l <= j + 1");
  const std::vector<Rational> m = ao_dims(spec.factors()[0].dimq, j + 2);
  return QuadScalar::sqrt_of(m[l] * m[l - 1] / (m[j] * m[j + 1]));
}

}  // namespace qcayley
