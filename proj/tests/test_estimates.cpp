#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qcayley/estimates.hpp"
#include "qcayley/qctree.hpp"

using namespace qcayley;

namespace {

// Direct partial sum (2/d) sum_{i<=R} r^{2i+2} (i+2)^{2s} / (m_i m_{i+1}) in long double.
long double series_ld(long double d, long double r, int two_s, int R) {
  const auto m = oracle::ao_dims_ld(d, R + 2);
  long double sum = 0.0L;
  for (int i = 0; i <= R; ++i) {
    sum += 2.0L * std::pow(r, 2.0L * i + 2) * std::pow(i + 2.0L, static_cast<long double>(two_s)) / (d * m[i] * m[i + 1]);
  }
  return sum;
}

std::vector<Rational> extremal(double a, int n) {
  std::vector<Rational> x;
  for (int j = 0; j < n; ++j) x.emplace_back(std::pow(a, -j / 2.0));
  return x;
}

}  // namespace

TEST(RapidDecay, Ao3SobolevSeries) {
  const SeriesResult r60 = rd_norm_sq(Rational(3), Rational(3), 60);
  EXPECT_LT(r60.tail_bound.get_d(), 1e-12);
  EXPECT_NEAR(r60.partial.get_d(), static_cast<double>(series_ld(3.0L, 1.0L, 6, 60)), 1e-12 * r60.partial.get_d());
  const SeriesResult r120 = rd_norm_sq(Rational(3), Rational(3), 120);
  EXPECT_TRUE(r60.enclosure().contains(r120.enclosure()));
  EXPECT_LT(std::abs(r60.partial.get_d() - r120.partial.get_d()), 1e-8);
  EXPECT_EQ(r60.terms_used, 61u);
  EXPECT_LT(r60.certificate.ratio, 1);
  EXPECT_GE(r60.certificate.crossover, 61u);
}

TEST(RapidDecay, RefinementStaysInside) {
  for (const char* d : {"3", "4", "5/2", "21/10"}) {
    for (const char* s : {"0", "1/2", "2", "5"}) {
      for (int R : {5, 20, 40}) {
        const SeriesResult coarse = rd_norm_sq(parse_rational(d), parse_rational(s), R);
        const SeriesResult fine = rd_norm_sq(parse_rational(d), parse_rational(s), 2 * R);
        EXPECT_TRUE(coarse.enclosure().contains(fine.enclosure())) << d << " " << s << " " << R;
      }
    }
  }
}

TEST(RapidDecay, ZeroExponentIsTheGramDiagonal) {
  const CayleyTree t = build_tree(parse_spec("Ao(3)"), 1);
  EXPECT_TRUE(rd_norm_sq(Rational(3), Rational(0), 40).enclosure().overlaps(gram(HilbertianTree(t), 0, 0, 40)));
}

TEST(RapidDecay, Gates) {
  EXPECT_THROW((void)rd_norm_sq(Rational(2), Rational(3), 10), GateError);
  EXPECT_THROW((void)rd_norm_sq(Rational(1), Rational(3), 10), GateError);
  EXPECT_THROW((void)rd_norm_sq(Rational(3), Rational(1, 3), 10), DomainError);
  EXPECT_THROW((void)rd_norm_sq(Rational(3), Rational(-1), 10), DomainError);
  EXPECT_THROW((void)rd_norm_sq(Rational(3), Rational(1), -1), DomainError);
}

TEST(NonUnimodular, DiagonalMatrices) {
  // F = diag(q, 1, 1/q): dimq = q + 1 + 1/q, r = q.
  for (const Rational& q : {Rational(3, 2), Rational(2), Rational(3)}) {
    const Rational dimq = q + 1 + 1 / q;
    EXPECT_GT(a_param(dimq).a.lo(), q);
    const SeriesResult s = nonuni_norm_sq(Rational(2), q, dimq, 60);
    EXPECT_TRUE(s.enclosure().contains(nonuni_norm_sq(Rational(2), q, dimq, 120).enclosure()));
  }
  const SeriesResult r = nonuni_norm_sq(Rational(3), Rational(2), Rational(7, 2), 80);
  EXPECT_LT(r.tail_bound.get_d(), 1e-10);
  EXPECT_NEAR(r.partial.get_d(), static_cast<double>(series_ld(3.5L, 2.0L, 6, 80)), 1e-12 * r.partial.get_d());
  EXPECT_EQ(nonuni_norm_sq(Rational(3), Rational(1), Rational(3), 30).partial, rd_norm_sq(Rational(3), Rational(3), 30).partial);
  EXPECT_THROW((void)nonuni_norm_sq(Rational(2), Rational(3), Rational(3), 10), GateError);
  EXPECT_THROW((void)nonuni_norm_sq(Rational(2), Rational(2), Rational(5, 2), 10), GateError);
  EXPECT_THROW((void)nonuni_norm_sq(Rational(2), Rational(0), Rational(3), 10), DomainError);
}

TEST(Toeplitz, SchurAndTruncation) {
  EXPECT_EQ(toeplitz_schur_bound(Interval(Rational(2))), Rational(3));
  const Interval n50 = truncated_toeplitz_norm(Interval(Rational(2)), 50);
  EXPECT_LE(n50.hi(), 3);
  EXPECT_GT(n50.lo(), Rational(29, 10));
  EXPECT_LT(n50.width().get_d(), 1e-10);
  EXPECT_EQ(truncated_toeplitz_norm(Interval(Rational(2)), 1).lo(), Rational(1));
  EXPECT_EQ(truncated_toeplitz_norm(Interval(Rational(2)), 1).hi(), Rational(1));
  // 2x2: eigenvalue 1 + 1/a.
  EXPECT_TRUE(truncated_toeplitz_norm(Interval(Rational(2)), 2).contains(Rational(3, 2)));
  EXPECT_THROW((void)toeplitz_schur_bound(Interval(Rational(1))), DomainError);
  EXPECT_THROW((void)truncated_toeplitz_norm(Interval(Rational(2)), 0), DomainError);
}

TEST(Toeplitz, MonotoneAndBounded) {
  for (const Interval& a : {Interval(Rational(3, 2)), Interval(Rational(2)), a_param(Rational(3)).a}) {
    const Rational schur = toeplitz_schur_bound(a);
    Interval prev(Rational(0));
    for (std::size_t n : {1, 2, 3, 5, 8, 13, 21, 34, 55, 89}) {
      const Interval cur = truncated_toeplitz_norm(a, n);
      EXPECT_GE(cur.hi(), prev.lo());
      EXPECT_LE(cur.hi(), schur);
      prev = cur;
    }
    EXPECT_GT(prev.lo().get_d(), 0.95 * schur.get_d());
  }
}

TEST(ChainCheck, UnitVector) {
  for (const Rational& a : {Rational(11, 10), Rational(2), Rational(7)}) {
    const std::vector<Rational> x{1, 0, 0, 0};
    const ChainCheckResult r = orientation_chain_check(Interval(a), x);
    EXPECT_TRUE(r.ok);
    EXPECT_NEAR(r.aggregate_ratio, std::pow(1.0 - 1.0 / a.get_d(), 2), 1e-12);
  }
}

TEST(ChainCheck, RandomVectorsPass) {
  std::mt19937_64 rng(20240611);
  for (const Interval& a : {Interval(Rational(3, 2)), Interval(Rational(2)), a_param(Rational(3)).a}) {
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<Rational> x(static_cast<std::size_t>(1 + rng() % 40));
      for (auto& v : x) v = rng() % 3 == 0 ? Rational(0) : make_rational(static_cast<long>(rng() % 1000), static_cast<long>(1 + rng() % 97));
      const ChainCheckResult r = orientation_chain_check(a, x);
      ASSERT_TRUE(r.ok) << *r.failure;
      EXPECT_LE(r.max_pointwise_ratio, 1.0);
      EXPECT_LE(r.aggregate_ratio, 1.0);
    }
  }
}

TEST(ChainCheck, ExtremalInputAndNegativeControl) {
  for (const Interval& a : {Interval(Rational(3, 2)), Interval(Rational(2)), a_param(Rational(3)).a}) {
    const auto x = extremal(a.mid_double(), 400);
    const ChainCheckResult ok = orientation_chain_check(a, x);
    EXPECT_TRUE(ok.ok) << ok.failure.value_or("");
    EXPECT_GT(ok.max_pointwise_ratio, 0.88);
    const ChainCheckResult tight = orientation_chain_check(a, x, Rational(7, 8));
    EXPECT_FALSE(tight.ok);
    ASSERT_TRUE(tight.failure.has_value());
  }
  const std::vector<Rational> bad{1, -1};
  EXPECT_THROW((void)orientation_chain_check(Interval(Rational(2)), bad), DomainError);
  const std::vector<Rational> one{1};
  EXPECT_THROW((void)orientation_chain_check(Interval(Rational(1)), one), DomainError);
}

TEST(SNormRatio, ValuesAndDomination) {
  const CayleyTree t = build_tree(parse_spec("Ao(3)"), 1);
  EXPECT_EQ(s_norm_ratio(t, 1, 1), QuadScalar::sqrt_of(Rational(1, 8)));
  for (int j = 0; j < 20; ++j) EXPECT_EQ(s_norm_ratio(t, j + 1, j), QuadScalar(1));
  EXPECT_THROW((void)s_norm_ratio(t, 0, 3), DomainError);
  EXPECT_THROW((void)s_norm_ratio(t, 5, 3), DomainError);
  EXPECT_THROW((void)s_norm_ratio(build_tree(parse_spec("Au(3)"), 1), 1, 1), DomainError);

  const auto m = oracle::ao3_dims(32);
  const Interval a = a_param(Rational(3)).a;
  for (int k = 1; k <= 30; ++k) {
    for (int j = k - 1; j <= 30; ++j) {
      // m_{k-1}/m_j <= a^{-(j-k)}
      const Rational lhs = m[static_cast<std::size_t>(k - 1)] / m[static_cast<std::size_t>(j)];
      if (j >= k) {
        EXPECT_LE(lhs * pow(a.hi(), static_cast<unsigned>(j - k)), 1) << k << " " << j;
      } else {
        EXPECT_LE(lhs, a.lo());
      }
    }
  }
}
