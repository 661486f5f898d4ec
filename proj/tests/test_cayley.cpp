#include <gtest/gtest.h>

#include <set>

#include "qcayley/cayley.hpp"

using namespace qcayley;

TEST(BuildTree, HalfLineForAo) {
  const CayleyTree t = build_tree(parse_spec("Ao(3)"), 5);
  EXPECT_EQ(t.vertex_count(), 6u);
  EXPECT_EQ(t.edge_count(), 10u);
  for (int n = 0; n <= 5; ++n) EXPECT_EQ(sphere(t, n).size(), 1u);
  EXPECT_EQ(t.dim(t.at(parse_irrep(t.spec(), "0:5"))), Rational(144));
  EXPECT_TRUE(validate(t).ok());
}

TEST(BuildTree, FreeMonoidForAu) {
  const CayleyTree t = build_tree(parse_spec("Au(3)"), 2);
  EXPECT_EQ(t.vertex_count(), 7u);
  std::set<std::string> words;
  for (VertexId v = 0; v < t.vertex_count(); ++v) words.insert(to_string(t.word(v)));
  EXPECT_EQ(words, (std::set<std::string>{"1", "0:u", "0:U", "0:uu", "0:uU", "0:Uu", "0:UU"}));
  for (VertexId v = 1; v < t.vertex_count(); ++v) {
    if (t.length(v) < 2) {
      EXPECT_EQ(t.children(v).size(), 2u);
    }
  }
  EXPECT_EQ(sphere(t, 2).size(), 4u);
  EXPECT_EQ(build_tree(parse_spec("Au(3)"), 12).vertex_count(), 8191u);
}

TEST(BuildTree, RadiusZeroAndCap) {
  const CayleyTree t = build_tree(parse_spec("Ao(3)*Au(3)"), 0);
  EXPECT_EQ(t.vertex_count(), 1u);
  EXPECT_EQ(t.edge_count(), 0u);
  EXPECT_THROW((void)build_tree(parse_spec("Au(3)"), 30), CapacityError);
  TreeOptions small;
  small.vertex_cap = 100;
  EXPECT_THROW((void)build_tree(parse_spec("Ao(3)*Au(3)"), 6, small), CapacityError);
  EXPECT_THROW((void)build_tree(parse_spec("Ao(3)"), -1), DomainError);
}

TEST(BuildTree, FreeProductCounts) {
  // Every vertex of Ao(3)*Au(3) has exactly three ascending neighbours.
  const CayleyTree t = build_tree(parse_spec("Ao(3)*Au(3)"), 7);
  EXPECT_EQ(t.vertex_count(), 3280u);  // (3^8 - 1) / 2
  const ValidationReport r = validate(t);
  EXPECT_TRUE(r.ok()) << (r.failures.empty() ? "" : r.failures.front());
  EXPECT_EQ(r.fusion_checks, 3280u * 3u);
}

TEST(BuildTree, DegenerateDimensions) {
  // dimq = 1: A_o(I_1) = Z/2 and A_u(I_1) = Z.
  EXPECT_EQ(build_tree(parse_spec("Ao(1)"), 6).vertex_count(), 2u);
  EXPECT_EQ(build_tree(parse_spec("Au(1)"), 6).vertex_count(), 13u);
  EXPECT_TRUE(validate(build_tree(parse_spec("Au(1)"), 6)).ok());
  // dimq = 2: linear dimension growth, still a tree.
  const CayleyTree t = build_tree(parse_spec("Ao(2)"), 4);
  EXPECT_EQ(t.dim(4), Rational(5));
  // 1 < dimq < 2 gives negative dimensions.
  EXPECT_THROW((void)build_tree(parse_spec("Ao(3/2)"), 4), DomainError);
}

TEST(Geodesic, HalfLineAndUnitary) {
  const CayleyTree t = build_tree(parse_spec("Ao(3)"), 5);
  const auto path = geodesic(t, parse_irrep(t.spec(), "0:3"));
  ASSERT_EQ(path.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(t.edge(path[i]).source, i);
    EXPECT_EQ(t.edge(path[i]).target, i + 1);
    EXPECT_TRUE(t.edge(path[i]).ascending);
  }
  const CayleyTree u = build_tree(parse_spec("Au(3)"), 3);
  const auto p = geodesic(u, parse_irrep(u.spec(), "0:uU"));
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(u.word(u.edge(p[0]).target), parse_irrep(u.spec(), "0:u"));
  EXPECT_EQ(u.spec().direction(u.edge(p[0]).direction), (Direction{0, false}));
  EXPECT_EQ(u.spec().direction(u.edge(p[1]).direction), (Direction{0, true}));
  EXPECT_THROW((void)geodesic(u, parse_irrep(u.spec(), "0:uUuU")), DomainError);
  EXPECT_THROW((void)sphere(u, 4), DomainError);
}

TEST(Geodesic, EveryVertexIsReachedAlongItsPath) {
  const CayleyTree t = build_tree(parse_spec("Ao(3)*Au(3)"), 5);
  for (VertexId v = 0; v < t.vertex_count(); ++v) {
    const auto path = geodesic(t, v);
    EXPECT_EQ(static_cast<int>(path.size()), t.length(v));
    Irrep w;
    for (EdgeId e : path) {
      w = fuse_generator(t.spec(), w, t.edge(e).direction).front();
    }
    EXPECT_EQ(w, t.word(v));
    // reverse edges point back down with the dual direction
    if (v != 0) {
      const Edge& up = t.edge(t.ascending_edge(v));
      const Edge& down = t.edge(CayleyTree::reverse(t.ascending_edge(v)));
      EXPECT_EQ(t.spec().direction(down.direction), t.spec().dual(t.spec().direction(up.direction)));
    }
  }
}

TEST(InfiniteGeodesic, StandardPatterns) {
  const auto u = InfiniteGeodesic::standard(parse_spec("Au(3)"));
  EXPECT_EQ(u.dims(6), (std::vector<Rational>{1, 3, 8, 21, 55, 144}));
  EXPECT_EQ(to_string(u.vertex(3)), "0:uUu");
  const auto m = InfiniteGeodesic::standard(parse_spec("Ao(3)*Ao(4)"));
  EXPECT_EQ(m.dims(4), (std::vector<Rational>{1, 3, 12, 36}));
  const CayleyTree ray = build_geodesic_tree(u, 10);
  EXPECT_EQ(ray.vertex_count(), 11u);
  EXPECT_FALSE(ray.is_ball());
  EXPECT_TRUE(validate(ray).ok());
  // In Au(1), u (x) ubar contains no irreducible of length two.
  EXPECT_THROW(InfiniteGeodesic::standard(parse_spec("Au(1)")), DomainError);
  EXPECT_NO_THROW(InfiniteGeodesic(parse_spec("Au(1)"), {0}));
}
