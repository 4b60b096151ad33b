#include "corpus.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace groupoidal;

namespace {

  AbelianInvariants inv(std::size_t rank, std::vector<int> torsion = {}) {
    AbelianInvariants a;
    a.rank = rank;
    for (int t : torsion)
      a.torsion.emplace_back(t);
    return a;
  }

  IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c) {
    std::uniform_int_distribution<int> d(-4, 4);
    IntMatrix                          m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        m(i, j) = d(rng);
    return m;
  }

  // Rank over Q by fraction-free elimination.
  std::size_t rational_rank(IntMatrix m) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
      std::size_t p = rank;
      while (p < m.rows() && m(p, col) == 0)
        ++p;
      if (p == m.rows())
        continue;
      for (std::size_t j = 0; j < m.cols(); ++j)
        std::swap(m(rank, j), m(p, j));
      for (std::size_t i = rank + 1; i < m.rows(); ++i) {
        Integer a = m(rank, col), b = m(i, col);
        for (std::size_t j = 0; j < m.cols(); ++j)
          m(i, j) = a * m(i, j) - b * m(rank, j);
      }
      ++rank;
    }
    return rank;
  }

  long long euler(SimplicialComplex const& K) {
    long long x = 0;
    for (int n = 0; n <= K.dimension(); ++n)
      x += (n % 2 ? -1 : 1) * (long long)K.count(std::size_t(n));
    return x;
  }

}  // namespace

TEST(Smith, TransformsReproduceTheDiagonal) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 1 + trial % 5, c = 1 + (trial / 5) % 5;
    auto const  M = random_matrix(rng, r, c);
    auto const  s = smith_normal_form(M);
    EXPECT_TRUE(s.U * M * s.V == s.D);
    EXPECT_TRUE(s.U * s.Uinv == IntMatrix::identity(r));
    EXPECT_TRUE(s.V * s.Vinv == IntMatrix::identity(c));
    EXPECT_EQ(s.rank, rational_rank(M));
    for (std::size_t i = 0; i + 1 < s.diagonal.size(); ++i)
      EXPECT_EQ(s.diagonal[i + 1] % s.diagonal[i], 0);
  }
}

TEST(Smith, KnownInvariants) {
  EXPECT_EQ(cokernel_invariants(IntMatrix{{2, 0}, {0, 3}}, 2), inv(0, {6}));
  EXPECT_EQ(cokernel_invariants(IntMatrix{{2, 4}, {0, 0}}, 2), inv(1, {2}));
  EXPECT_EQ(cokernel_invariants(IntMatrix(3, 0), 3), inv(3));
}

TEST(Simplicial, CycleHomology) {
  for (int n = 3; n <= 7; ++n) {
    auto const c = cycle_complex(n).chain_complex(3);
    EXPECT_EQ(homology(c, 0), inv(1));
    EXPECT_EQ(homology(c, 1), inv(1));
    EXPECT_EQ(homology(c, 2), inv(0));
  }
}

TEST(Simplicial, EulerCharacteristicMatchesBettiNumbers) {
  for (auto const& [name, a] : corpus::actions()) {
    auto const& K = a.complex;
    auto const  c = K.chain_complex(std::size_t(K.dimension()) + 1);
    long long   x = 0;
    for (int n = 0; n <= K.dimension(); ++n)
      x += (n % 2 ? -1 : 1) * (long long)homology(c, std::size_t(n)).rank;
    EXPECT_EQ(x, euler(K)) << name;
  }
}

TEST(GroupoidHomology, RotationActionsAreCircles) {
  for (auto const& [k, m] : std::vector<std::pair<int, int>>{{2, 3}, {3, 3}, {4, 3}, {2, 4}, {1, 5}}) {
    auto const c = groupoid_chain_complex(rotation_action(k, m), 3);
    EXPECT_EQ(groupoid_homology(c, 0), inv(1)) << k << "," << m;
    EXPECT_EQ(groupoid_homology(c, 1), inv(1)) << k << "," << m;
    EXPECT_EQ(groupoid_homology(c, 2), inv(0)) << k << "," << m;
  }
}

TEST(GroupoidHomology, ProjectivePlane) {
  auto const c = groupoid_chain_complex(corpus::octahedron(), 3);
  EXPECT_EQ(groupoid_homology(c, 0), inv(1));
  EXPECT_EQ(groupoid_homology(c, 1), inv(0, {2}));
  EXPECT_EQ(groupoid_homology(c, 2), inv(0));
  EXPECT_EQ(groupoid_cohomology(c, 1), inv(0));
  EXPECT_EQ(groupoid_cohomology(c, 2), inv(0, {2}));
  auto const z2 = PresentedGroup::from_invariants(inv(0, {2}));
  for (std::size_t n = 0; n <= 2; ++n)
    EXPECT_EQ(groupoid_homology(c, n, z2), inv(0, {2})) << n;
}

TEST(GroupoidHomology, DiscreteGroupoidsSeeTheirOrbits) {
  for (auto const& [name, g] : corpus::groupoids().all()) {
    auto const c = groupoid_chain_complex(*g, 3);
    EXPECT_EQ(groupoid_homology(c, 0), inv(orbit_space(*g).blocks.size())) << name;
    EXPECT_TRUE(groupoid_homology(c, 1).is_zero()) << name;
    EXPECT_TRUE(check_splitting(c)) << name;
  }
}

TEST(GroupoidHomology, BalancedSequenceIsExact) {
  for (auto const& [name, a] : corpus::actions()) {
    auto const r = balanced_homology(groupoid_chain_complex(a, 4), 2);
    EXPECT_TRUE(r.sequence.exact) << name;
  }
  // one object: S(G0) -> S(G) is an isomorphism
  EXPECT_TRUE(balanced_homology(groupoid_chain_complex(cyclic(4), 3), 0).group.is_zero());
  EXPECT_EQ(balanced_homology(groupoid_chain_complex(rotation_action(4, 3), 3), 0).group, inv(0, {4}));
}

TEST(GroupoidHomology, MayerVietorisOnARotation) {
  auto const a = rotation_action(2, 4);
  auto const o = vertex_orbits(a);
  ASSERT_EQ(o.blocks.size(), 4u);
  std::vector<int> U, V;
  for (std::size_t b = 0; b < 4; ++b)
    for (int v : o.blocks[b]) {
      if (b != 3)
        U.push_back(v);
      if (b != 1)
        V.push_back(v);
    }
  EXPECT_TRUE(mayer_vietoris_check(a, U, V, 2).sequence.exact);
}

TEST(GroupoidHomology, EffectPreservesHomology) {
  for (auto const& [name, g] : corpus::groupoids().all())
    EXPECT_TRUE(effect_homology_check(g, 3).all()) << name;
}

TEST(Presentations, Abelianization) {
  Presentation torus{{"a", "b"}, {{1, 2, -1, -2}}};
  EXPECT_EQ(abelianization(torus), inv(2));
  Presentation s3{{"a", "b"}, {{1, 1}, {2, 2, 2}, {1, 2, 1, 2}}};
  EXPECT_EQ(abelianization(s3), inv(0, {2}));
  EXPECT_EQ(free_reduce({1, 2, -2, -1, 1}), (Word{1}));
  EXPECT_EQ(inverse_word({1, -2}), (Word{2, -1}));
}

TEST(Presentations, CosetEnumeration) {
  Presentation c5{{"a"}, {{1, 1, 1, 1, 1}}};
  auto const   i5 = coset_enumeration(c5, {}, 1000);
  EXPECT_EQ(i5.verdict, Verdict::yes);
  EXPECT_EQ(i5.index, 5u);
  Presentation s3{{"a", "b"}, {{1, 1}, {2, 2, 2}, {1, 2, 1, 2}}};
  EXPECT_EQ(coset_enumeration(s3, {}, 1000).index, 6u);
  EXPECT_EQ(coset_enumeration(s3, {{2}}, 1000).index, 2u);
  EXPECT_EQ(coset_enumeration(s3, {{1}}, 1000).index, 3u);
}

TEST(FundamentalGroup, DiscreteVertexGroups) {
  auto const& c = corpus::groupoids();
  EXPECT_EQ(pi1_discrete(*c.c5, 0).order(), 5u);
  EXPECT_EQ(pi1_discrete(*c.pair3, 2).order(), 1u);
  EXPECT_TRUE(induces_vertex_iso(corpus::by_objects(c.pt, c.pair3, {0}), 0));
  EXPECT_FALSE(induces_vertex_iso(corpus::to_point(c.c2), 0));
}

TEST(FundamentalGroup, CycleIsFreeOnOneGenerator) {
  auto const p = edge_path_presentation(cycle_complex(5), 0);
  EXPECT_EQ(p.generators.size(), 1u);
  EXPECT_TRUE(p.relators.empty());
}

TEST(FundamentalGroup, ActionGroupoids) {
  for (auto const& [name, a] : corpus::actions()) {
    auto const r = pi1_action_groupoid(a, 0);
    EXPECT_TRUE(r.composite_trivial) << name;
    EXPECT_TRUE(r.projection_onto) << name;
    EXPECT_EQ(abelianization(r.groupoid), groupoid_homology(groupoid_chain_complex(a, 3), 1)) << name;
    if (r.index.verdict == Verdict::yes)
      EXPECT_EQ(r.index.index, r.group_order) << name;
  }
  auto const r = pi1_action_groupoid(rotation_action(3, 4), 0);
  EXPECT_EQ(r.index.verdict, Verdict::yes);
  EXPECT_EQ(r.index.index, 3u);
}
