#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qcayley/qctree.hpp"

using namespace qcayley;

namespace {

QuadScalar sq(long num, long den = 1) { return QuadScalar::sqrt_of(make_rational(num, den)); }

VertexVector<> telescoped(const HilbertianTree& h, VertexId v) {
  VertexVector<> want = VertexVector<>::basis(v);
  want *= QuadScalar(Rational(1) / h.m(v));
  want -= VertexVector<>::basis(h.tree().root());
  return want;
}

}  // namespace

TEST(E2, FirstEdgeOfAo3) {
  const CayleyTree t = build_tree(parse_spec("Ao(3)"), 3);
  const HilbertianTree h(t);
  const VertexVector<> img = e2(h, GeomEdgeVector<>::basis(t.ascending_edge(1)));
  EXPECT_EQ(img.size(), 2u);
  EXPECT_EQ(img.coeff(1), sq(1, 2));
  EXPECT_EQ(img.coeff(0), -sq(9, 2));
  EXPECT_THROW((void)e2(h, GeomEdgeVector<>::basis(CayleyTree::reverse(t.ascending_edge(1)))), DomainError);
}

TEST(PathVector, TelescopesExactlyEverywhere) {
  for (const char* text : {"Ao(3)", "Au(3)", "Ao(5/2)*Au(4)", "Ao(2)", "Au(2)"}) {
    const CayleyTree t = build_tree(parse_spec(text), 4);
    const HilbertianTree h(t);
    for (VertexId v = 0; v < t.vertex_count(); ++v) {
      EXPECT_EQ(e2(h, path_vector(h, v)), telescoped(h, v)) << text << " at " << to_string(t.word(v));
      EXPECT_EQ(path_vector(h, v).norm_sq().rational_value(), path_norm_sq(h, v));
    }
  }
}

TEST(PathVector, TelescopesInDoubles) {
  const CayleyTree t = build_tree(parse_spec("Ao(3)*Au(3)"), 5);
  const HilbertianTree h(t);
  for (VertexId v = 0; v < t.vertex_count(); ++v) {
    const auto img = e2(h, path_vector<double>(h, v));
    for (VertexId u = 0; u < t.vertex_count(); ++u) {
      double want = 0.0;
      if (u == v) want += 1.0 / t.dim(v).get_d();
      if (u == 0) want -= 1.0;
      EXPECT_NEAR(img.coeff(u), want, 1e-12);
    }
  }
}

TEST(PathVector, HalfLineExample) {
  const CayleyTree t = build_tree(parse_spec("Ao(3)"), 3);
  const HilbertianTree h(t);
  const auto z = path_vector(h, parse_irrep(t.spec(), "0:2"));
  // sqrt(2/(3*1*3)) and sqrt(2/(3*3*8))
  EXPECT_EQ(z.coeff(t.ascending_edge(1)), sq(2, 9));
  EXPECT_EQ(z.coeff(t.ascending_edge(2)), sq(1, 36));
  EXPECT_EQ(path_norm_sq(h, 2), make_rational(2, 9) + make_rational(1, 36));
}

TEST(Operators, ThetaAndSourceMap) {
  const CayleyTree t = build_tree(parse_spec("Ao(3)*Au(3)"), 3);
  const HilbertianTree h(t);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    OrientedEdgeVector<> x;
    GeomEdgeVector<> g;
    for (EdgeId e = 0; e < t.edge_count(); ++e) {
      x.add(e, QuadScalar(make_rational(static_cast<long>(rng() % 11) - 5, static_cast<long>(rng() % 4) + 1)));
      if (t.edge(e).ascending) g.add(e, QuadScalar(make_rational(static_cast<long>(rng() % 9) - 4, 3)));
    }
    EXPECT_EQ(theta(h, theta(h, x)), x);
    EXPECT_EQ(e2(h, theta(h, x)), o_source(h, x));
    EXPECT_EQ(antisymmetrize(h, embed(h, g)), g);
    EXPECT_EQ(antisymmetrize(h, theta(h, x)), -antisymmetrize(h, x));
    EXPECT_EQ(embed(h, theta(h, g)), theta(h, embed(h, g)));
    // E2 on the antisymmetric space agrees with E2 on its oriented image.
    EXPECT_EQ(e2(h, g), e2(h, embed(h, g)));
    EXPECT_EQ(counit(h, e2(h, x)), counit(h, o_source(h, x)));
    EXPECT_TRUE(counit(h, e2(h, g)).is_zero());
  }
}

TEST(Counit, WeightsAreQuantumDimensions) {
  const CayleyTree t = build_tree(parse_spec("Au(3)"), 2);
  const HilbertianTree h(t);
  EXPECT_EQ(counit(h, xi_tilde(h, t.at(parse_irrep(t.spec(), "0:u")))), QuadScalar(3));
  EXPECT_EQ(counit(h, xi_tilde(h, t.at(parse_irrep(t.spec(), "0:uU")))), QuadScalar(8));
  const HilbertianTree c(t, Weighting::classical);
  EXPECT_EQ(counit(c, xi_tilde(c, t.at(parse_irrep(t.spec(), "0:uU")))), QuadScalar(1));
}

TEST(Classical, PathNormIsTwiceTheLength) {
  const CayleyTree t = build_tree(parse_spec("Ao(3)*Au(3)"), 5);
  const HilbertianTree c(t, Weighting::classical);
  for (VertexId v = 0; v < t.vertex_count(); ++v) {
    EXPECT_EQ(path_norm_sq(c, v), Rational(2 * t.length(v)));
    EXPECT_EQ(e2(c, path_vector(c, v)), telescoped(c, v));
  }
  EXPECT_THROW((void)fixed_vector(c, InfiniteGeodesic::standard(t.spec()), 3), GateError);
}

TEST(FixedVector, Ao3Limit) {
  const auto geo = InfiniteGeodesic::standard(parse_spec("Ao(3)"));
  const CayleyTree ray = build_geodesic_tree(geo, 40);
  const HilbertianTree h(ray);
  const FixedVectorResult r = fixed_vector(h, geo, 40);
  const Interval n = r.norm_sq();
  EXPECT_GE(n.lo(), make_rational(2546, 10000));
  EXPECT_LE(n.hi(), make_rational(2547, 10000));
  // ||zeta||^2 = gram(0,0) = 2/(3a); the tail after 40 steps is below 1e-30.
  EXPECT_NEAR(n.mid_double(), 2.0 / (3.0 * static_cast<double>(oracle::growth_a(3.0L))), 1e-15);
  EXPECT_LT(r.tail_bound.get_d(), 1e-30);
  EXPECT_EQ(r.residual_minus_sq, 1 / (r.m_radius * r.m_radius));
  EXPECT_EQ(r.m_radius, oracle::ao3_dims(41)[40]);
  // E2 zeta_R tends to -xi_0, so ||E2 zeta_R - xi_0|| tends to 2.
  EXPECT_NEAR(r.residual_plus_sq.get_d(), 4.0, 1e-15);
}

TEST(FixedVector, PartialNormsIncreaseIntoTheEnclosure) {
  for (const char* text : {"Au(3)", "Ao(3)*Ao(4)", "Ao(5/2)"}) {
    const auto geo = InfiniteGeodesic::standard(parse_spec(text));
    const CayleyTree ray = build_geodesic_tree(geo, 60);
    const HilbertianTree h(ray);
    const Interval limit = fixed_vector(h, geo, 60).norm_sq();
    Rational prev = -1;
    for (int R = 0; R <= 30; R += 5) {
      const FixedVectorResult r = fixed_vector(h, geo, R);
      EXPECT_GT(r.partial_norm_sq, prev);
      prev = r.partial_norm_sq;
      EXPECT_TRUE(r.norm_sq().contains(limit)) << text << " R=" << R;
    }
  }
}

TEST(FixedVector, Gates) {
  for (const char* text : {"Ao(2)", "Au(2)", "Ao(3)*Au(2)", "Ao(2)*Au(3)", "Ao(1)*Ao(3)"}) {
    const auto spec = parse_spec(text);
    std::vector<std::uint32_t> pattern;
    // Use a direction of dimension > 2 when one exists, so only the gate can refuse.
    for (std::uint32_t d = 0; d < spec.directions().size(); ++d) {
      if (spec.dimq(spec.direction(d)) > 2) pattern = {d};
    }
    if (pattern.empty()) pattern = {0};
    const InfiniteGeodesic geo(spec, pattern);
    const CayleyTree ray = build_geodesic_tree(geo, 5);
    EXPECT_THROW((void)fixed_vector(HilbertianTree(ray), geo, 5), GateError) << text;
  }
}

TEST(InverseAo, ResidualAndSign) {
  const CayleyTree t = build_tree(parse_spec("Ao(3)"), 22);
  const HilbertianTree h(t);
  const auto m = oracle::ao3_dims(23);
  const auto inv = e2_inverse_ao(h, 0, 20);
  EXPECT_EQ(inv.residual_sq, 1 / (m[21] * m[21]));
  const auto geo = InfiniteGeodesic::standard(t.spec());
  const auto zeta = fixed_vector(h, geo, 21).partial;
  EXPECT_EQ(inv.vector, -zeta);
  const auto diff = e2(h, inv.vector) - VertexVector<>::basis(0);
  EXPECT_EQ(diff.norm_sq().rational_value(), inv.residual_sq);

  const auto five = e2_inverse_ao(h, 5, 5);
  EXPECT_EQ(five.residual_sq, (m[5] / m[6]) * (m[5] / m[6]));
  EXPECT_EQ(m[5] / m[6], make_rational(144, 377));
  EXPECT_EQ((e2(h, five.vector) - VertexVector<>::basis(5)).norm_sq().rational_value(), five.residual_sq);
  EXPECT_THROW((void)e2_inverse_ao(h, 0, 22), DomainError);
  EXPECT_THROW((void)e2_inverse_ao(h, 3, 2), DomainError);
}

TEST(InverseAo, DoubleModeMatchesExact) {
  const CayleyTree t = build_tree(parse_spec("Ao(7/2)"), 31);
  const HilbertianTree h(t);
  for (int k = 0; k <= 10; ++k) {
    const auto exact = e2_inverse_ao(h, k, 30);
    const auto approx = e2_inverse_ao<double>(h, k, 30);
    const auto img = e2(h, approx.vector);
    double dev = 0.0;
    for (VertexId u = 0; u <= 31; ++u) {
      const double want = u == static_cast<VertexId>(k) ? 1.0 : 0.0;
      dev += (img.coeff(u) - want) * (img.coeff(u) - want);
    }
    EXPECT_NEAR(dev, exact.residual_sq.get_d(), 1e-12 + 1e-9 * exact.residual_sq.get_d());
  }
}

TEST(Gram, MatchesClosedForm) {
  const CayleyTree t = build_tree(parse_spec("Ao(3)"), 1);
  const HilbertianTree h(t);
  for (int k = 0; k <= 12; ++k) {
    for (int l = 0; l <= 12; ++l) {
      const Interval g = gram(h, k, l, 60);
      EXPECT_NEAR(g.mid_double(), static_cast<double>(oracle::gram_ao3(k, l)), 1e-14 * (1 + g.mid_double()));
      EXPECT_EQ(g.lo(), gram(h, l, k, 60).lo());
      EXPECT_EQ(g.hi(), gram(h, l, k, 60).hi());
    }
  }
  EXPECT_NEAR(gram(h, 0, 0).mid_double(), 0.254644007500070, 1e-14);
}

TEST(Gram, ToeplitzDomination) {
  const CayleyTree t = build_tree(parse_spec("Ao(3)"), 1);
  const HilbertianTree h(t);
  const Rational D = gram_bound(h, 10);
  const Interval a = a_param(Rational(3)).a;
  for (int k = 0; k <= 10; ++k) {
    for (int l = 0; l <= 10; ++l) {
      EXPECT_LE(gram(h, k, l).hi() * pow(a.hi(), static_cast<unsigned>(std::abs(k - l))), D);
    }
  }
  // m_k <= a^{k+1}/(a - 1/a) bounds D by 2/(3 sqrt 5).
  EXPECT_LT(D.get_d(), 2.0 / (3.0 * std::sqrt(5.0)));
  EXPECT_GE(D, gram(h, 0, 0).hi());
  EXPECT_LT(gram(h, 0, 5).hi() * pow(a.hi(), 5), D * (1 + Rational(1, 1000000)));
}

TEST(Gram, PositiveSemidefinite) {
  // Exact Gaussian elimination on the lower ends of the 21 x 21 enclosures.
  const CayleyTree t = build_tree(parse_spec("Ao(3)"), 1);
  const HilbertianTree h(t);
  const int n = 21;
  std::vector<std::vector<Rational>> A(n, std::vector<Rational>(n));
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) A[k][l] = gram(h, k, l, 80).lo();
  for (int p = 0; p < n; ++p) {
    ASSERT_GT(A[p][p], 0) << "pivot " << p;
    for (int r = p + 1; r < n; ++r) {
      const Rational f = A[r][p] / A[p][p];
      for (int c = p; c < n; ++c) A[r][c] -= f * A[p][c];
    }
  }
}

TEST(Gram, Gates) {
  const CayleyTree t2 = build_tree(parse_spec("Ao(2)"), 3);
  EXPECT_THROW((void)gram(HilbertianTree(t2), 0, 0), GateError);
  EXPECT_THROW((void)e2_inverse_ao(HilbertianTree(t2), 0, 1), GateError);
  const CayleyTree tu = build_tree(parse_spec("Au(3)"), 3);
  EXPECT_THROW((void)gram(HilbertianTree(tu), 0, 0), DomainError);
}
