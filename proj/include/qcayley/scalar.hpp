#pragma once

// Exact scalar kernel: GMP rationals, quadratic surds (finite sums of
// rational multiples of square roots), and rational intervals with outward
// dyadic rounding.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qcayley/errors.hpp"

namespace qcayley {

using Rational = mpq_class;
using Integer = mpz_class;

// ---------------------------------------------------------------------------
// Rational helpers

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

inline Rational pow(const Rational& base, unsigned exponent) {
  Rational result = 1;
  Rational b = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent != 0) b *= b;
  }
  return result;
}

inline bool is_perfect_square(const Integer& n) {
  return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline Integer isqrt(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

/// Square root of q when q is the square of a rational.
inline std::optional<Rational> exact_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (!is_perfect_square(q.get_num()) || !is_perfect_square(q.get_den())) return std::nullopt;
  Rational r(isqrt(q.get_num()), isqrt(q.get_den()));
  r.canonicalize();
  return r;
}

/// 2^-bits as a rational.
inline Rational dyadic_unit(unsigned bits) {
  Integer den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), bits);
  return Rational(Integer(1), den);
}

inline Rational floor_dyadic(const Rational& q, unsigned bits) {
  Integer scaled_num = q.get_num();
  mpz_mul_2exp(scaled_num.get_mpz_t(), scaled_num.get_mpz_t(), bits);
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), scaled_num.get_mpz_t(), q.get_den().get_mpz_t());
  Integer den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), bits);
  Rational r(fl, den);
  r.canonicalize();
  return r;
}

inline Rational ceil_dyadic(const Rational& q, unsigned bits) {
  Rational neg = -q;
  return -floor_dyadic(neg, bits);
}

/// Fractional bits that keep `bits` significant bits of q when |q| < 1, and
/// `bits` otherwise.
inline unsigned relative_bits(const Rational& q, unsigned bits) {
  const std::size_t num_bits = mpz_sizeinbase(q.get_num().get_mpz_t(), 2);
  const std::size_t den_bits = mpz_sizeinbase(q.get_den().get_mpz_t(), 2);
  return den_bits > num_bits ? bits + static_cast<unsigned>(den_bits - num_bits) : bits;
}

/// Parses "3", "-7/2", "0.5", "1.25e-3".
inline Rational parse_rational(std::string_view text) {
  auto fail = [&](std::size_t pos, const char* what) -> Rational {
    throw ParseError(std::string("invalid rational '") + std::string(text) + "': " + what, pos);
  };
  if (text.empty()) return fail(0, "empty");
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  auto digits = [&](std::string& out) {
    std::size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') out.push_back(text[pos++]);
    return pos > start;
  };
  std::string int_part;
  bool have_int = digits(int_part);
  Rational value;
  if (pos < text.size() && text[pos] == '/') {
    if (!have_int) return fail(pos, "missing numerator");
    ++pos;
    std::string den;
    if (!digits(den)) return fail(pos, "missing denominator");
    if (pos != text.size()) return fail(pos, "trailing characters");
    Integer d(den, 10);
    if (d == 0) return fail(pos, "zero denominator");
    value = Rational(Integer(int_part, 10), d);
    value.canonicalize();
  } else {
    std::string frac_part;
    bool have_frac = false;
    if (pos < text.size() && text[pos] == '.') {
      ++pos;
      have_frac = digits(frac_part);
    }
    if (!have_int && !have_frac) return fail(pos, "expected digits");
    long exponent = 0;
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
      ++pos;
      bool exp_negative = false;
      if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        exp_negative = text[pos] == '-';
        ++pos;
      }
      std::string exp_digits;
      if (!digits(exp_digits) || exp_digits.size() > 6) return fail(pos, "bad exponent");
      exponent = std::stol(exp_digits);
      if (exp_negative) exponent = -exponent;
    }
    if (pos != text.size()) return fail(pos, "trailing characters");
    Integer mantissa(int_part.empty() && frac_part.empty() ? std::string("0") : int_part + frac_part, 10);
    exponent -= static_cast<long>(frac_part.size());
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    value = exponent >= 0 ? Rational(mantissa * scale) : Rational(mantissa, scale);
    value.canonicalize();
  }
  return negative ? Rational(-value) : value;
}

// ---------------------------------------------------------------------------
// Interval: closed interval with rational endpoints.  Arithmetic results are
// rounded outward to dyadic endpoints with `kPrecisionBits` fractional bits
// (significant bits for endpoints below 1) so that operand sizes stay bounded
// along long chains.

class Interval {
 public:
  static constexpr unsigned kPrecisionBits = 224;

  Interval() = default;
  Interval(const Rational& point) : lo_(point), hi_(point) {}  // NOLINT(google-explicit-constructor)
  Interval(long point) : lo_(point), hi_(point) {}              // NOLINT(google-explicit-constructor)
  Interval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_ > hi_) throw DomainError("interval with lo > hi");
  }

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  Rational mid() const { return (lo_ + hi_) / 2; }
  bool is_point() const { return lo_ == hi_; }
  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& other) const { return lo_ <= other.lo_ && other.hi_ <= hi_; }
  bool overlaps(const Interval& other) const { return lo_ <= other.hi_ && other.lo_ <= hi_; }
  bool certainly_positive() const { return sgn(lo_) > 0; }

  Interval rounded(unsigned bits = kPrecisionBits) const {
    Interval r;
    r.lo_ = lo_.get_den() == 1 ? lo_ : floor_dyadic(lo_, relative_bits(lo_, bits));
    r.hi_ = hi_.get_den() == 1 ? hi_ : ceil_dyadic(hi_, relative_bits(hi_, bits));
    return r;
  }

  Interval operator-() const { return Interval(-hi_, -lo_); }

  friend Interval operator+(const Interval& a, const Interval& b) {
    return Interval(a.lo_ + b.lo_, a.hi_ + b.hi_).rounded();
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    return Interval(a.lo_ - b.hi_, a.hi_ - b.lo_).rounded();
  }
  friend Interval operator*(const Interval& a, const Interval& b) {
    Rational p[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
    auto [mn, mx] = std::minmax_element(std::begin(p), std::end(p));
    return Interval(*mn, *mx).rounded();
  }
  Interval inverse() const {
    if (sgn(lo_) <= 0 && sgn(hi_) >= 0) throw DomainError("interval inverse: interval contains 0");
    Rational a = 1 / hi_;
    Rational b = 1 / lo_;
    return Interval(a, b).rounded();
  }
  friend Interval operator/(const Interval& a, const Interval& b) { return a * b.inverse(); }

  Interval& operator+=(const Interval& b) { return *this = *this + b; }
  Interval& operator-=(const Interval& b) { return *this = *this - b; }
  Interval& operator*=(const Interval& b) { return *this = *this * b; }

  Interval pow(unsigned exponent) const {
    Interval result(Rational(1));
    Interval b = *this;
    while (exponent != 0) {
      if (exponent & 1U) result *= b;
      exponent >>= 1U;
      if (exponent != 0) b = b * b;
    }
    return result;
  }

  /// Enclosure of sqrt(q), q >= 0, of width at most 2^-bits (exact when q
  /// is a rational square).
  static Interval sqrt(const Rational& q, unsigned bits = kPrecisionBits) {
    if (sgn(q) < 0) throw DomainError("sqrt of negative rational");
    if (auto exact = exact_sqrt(q)) return Interval(*exact);
    // sqrt(p/d) = sqrt(p*d) / d; scale by 4^bits to get `bits` fractional bits.
    Integer n = q.get_num() * q.get_den();
    mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), 2 * bits);
    Integer root = isqrt(n);
    Integer den = q.get_den();
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), bits);
    Rational lo(root, den);
    Rational hi(root + 1, den);
    lo.canonicalize();
    hi.canonicalize();
    return Interval(lo, hi);
  }

  double lo_double() const { return std::nextafter(lo_.get_d(), -HUGE_VAL); }
  double hi_double() const { return std::nextafter(hi_.get_d(), HUGE_VAL); }
  double mid_double() const { return mid().get_d(); }

 private:
  Rational lo_{0};
  Rational hi_{0};
};

// ---------------------------------------------------------------------------
// QuadScalar: an element sum_j c_j * sqrt(r_j) with c_j rational and r_j
// pairwise distinct positive integers whose pairwise products are not perfect
// squares.  Square roots of such integers are linearly independent over Q, so
// the representation is zero iff it has no terms.

class QuadScalar {
 public:
  struct Term {
    Rational coef;
    Integer radicand;  // 1 for the rational part
  };

  QuadScalar() = default;
  QuadScalar(const Rational& q) {  // NOLINT(google-explicit-constructor)
    if (sgn(q) != 0) terms_.push_back({q, Integer(1)});
  }
  QuadScalar(long q) : QuadScalar(Rational(q)) {}  // NOLINT(google-explicit-constructor)

  static QuadScalar sqrt_of(const Rational& q) {
    if (sgn(q) < 0) throw DomainError("QuadScalar::sqrt_of: negative argument");
    QuadScalar s;
    if (sgn(q) == 0) return s;
    // sqrt(p/d) = sqrt(p*d)/d
    s.add_term(Rational(1, 1) / Rational(q.get_den()), q.get_num() * q.get_den());
    return s;
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].radicand == 1); }
  Rational rational_value() const {
    if (!is_rational()) throw DomainError("QuadScalar is irrational: " + str());
    return terms_.empty() ? Rational(0) : terms_[0].coef;
  }
  const std::vector<Term>& terms() const { return terms_; }

  QuadScalar operator-() const {
    QuadScalar r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
  }
  QuadScalar& operator+=(const QuadScalar& o) {
    for (const auto& t : o.terms_) add_term(t.coef, t.radicand);
    return *this;
  }
  QuadScalar& operator-=(const QuadScalar& o) {
    for (const auto& t : o.terms_) add_term(-t.coef, t.radicand);
    return *this;
  }
  friend QuadScalar operator+(QuadScalar a, const QuadScalar& b) { return a += b; }
  friend QuadScalar operator-(QuadScalar a, const QuadScalar& b) { return a -= b; }
  friend QuadScalar operator*(const QuadScalar& a, const QuadScalar& b) {
    QuadScalar r;
    for (const auto& x : a.terms_) {
      for (const auto& y : b.terms_) {
        if (x.radicand == y.radicand) {
          r.add_term(x.coef * y.coef * Rational(x.radicand), Integer(1));
          continue;
        }
        // sqrt(x) sqrt(y) = g * sqrt((x/g)(y/g)) with g = gcd(x, y)
        Integer g;
        mpz_gcd(g.get_mpz_t(), x.radicand.get_mpz_t(), y.radicand.get_mpz_t());
        Integer rest = (x.radicand / g) * (y.radicand / g);
        r.add_term(x.coef * y.coef * Rational(g), rest);
      }
    }
    return r;
  }
  QuadScalar& operator*=(const QuadScalar& o) { return *this = *this * o; }

  friend bool operator==(const QuadScalar& a, const QuadScalar& b) { return (a - b).is_zero(); }

  Interval to_interval(unsigned bits = Interval::kPrecisionBits) const {
    Interval sum(Rational(0));
    for (const auto& t : terms_) sum += Interval(t.coef) * Interval::sqrt(Rational(t.radicand), bits);
    return sum;
  }
  double to_double() const {
    double sum = 0.0;
    for (const auto& t : terms_) sum += t.coef.get_d() * std::sqrt(t.radicand.get_d());
    return sum;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      const auto& t = terms_[i];
      std::string c = t.coef.get_str();
      if (i != 0) out += sgn(t.coef) < 0 ? " - " : " + ";
      else if (sgn(t.coef) < 0) out += "-";
      if (sgn(t.coef) < 0) c = Rational(-t.coef).get_str();
      out += c;
      if (t.radicand != 1) out += "*sqrt(" + t.radicand.get_str() + ")";
    }
    return out;
  }

 private:
  void add_term(Rational coef, Integer radicand) {
    if (sgn(coef) == 0) return;
    // pull out the square part when cheap to detect
    if (radicand != 1 && is_perfect_square(radicand)) {
      coef *= Rational(isqrt(radicand));
      radicand = 1;
    }
    for (auto it = terms_.begin(); it != terms_.end(); ++it) {
      if (it->radicand == radicand) {
        it->coef += coef;
        if (sgn(it->coef) == 0) terms_.erase(it);
        return;
      }
      Integer product = it->radicand * radicand;
      if (is_perfect_square(product)) {
        // c sqrt(r) = c * sqrt(r * r') / r' * sqrt(r')
        it->coef += coef * Rational(isqrt(product), it->radicand);
        if (sgn(it->coef) == 0) terms_.erase(it);
        return;
      }
    }
    auto pos = std::lower_bound(terms_.begin(), terms_.end(), radicand,
                                [](const Term& t, const Integer& r) { return t.radicand < r; });
    terms_.insert(pos, Term{std::move(coef), std::move(radicand)});
  }

  std::vector<Term> terms_;
};

inline std::string to_string(const QuadScalar& s) { return s.str(); }

// ---------------------------------------------------------------------------
// Scalar traits used by the vector algebra: exact (QuadScalar) and float
// (double) coefficient fields.

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<QuadScalar> {
  static QuadScalar from_rational(const Rational& q) { return QuadScalar(q); }
  static QuadScalar sqrt_of(const Rational& q) { return QuadScalar::sqrt_of(q); }
  static bool is_zero(const QuadScalar& s) { return s.is_zero(); }
  static double to_double(const QuadScalar& s) { return s.to_double(); }
};

template <>
struct ScalarTraits<double> {
  static double from_rational(const Rational& q) { return q.get_d(); }
  static double sqrt_of(const Rational& q) { return std::sqrt(q.get_d()); }
  static bool is_zero(double s) { return s == 0.0; }
  static double to_double(double s) { return s; }
};

}  // namespace qcayley
