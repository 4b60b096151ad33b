#include "corpus.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace groupoidal;

namespace {

  // Convolution straight from the definition: every composable pair.
  RatVector convolve(FiniteGroupoid const& G, RatVector const& x, RatVector const& y) {
    RatVector out(G.num_morphisms());
    for (std::size_t a = 0; a < G.num_morphisms(); ++a)
      for (std::size_t b = 0; b < G.num_morphisms(); ++b)
        if (int c = G.comp(int(a), int(b)); c >= 0)
          out[std::size_t(c)] += x[a] * y[b];
    return out;
  }

  RatVector random_vector(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<int> d(-5, 5);
    RatVector                          v(n);
    for (auto& x : v)
      x = Rational(d(rng), 1 + std::abs(d(rng)));
    return v;
  }

  using Square = std::vector<std::vector<Rational>>;

  // pair(n) morphism (i,j) runs from j to i, so it is the matrix unit E_ij.
  Square as_matrix(FiniteGroupoid const& G, RatVector const& x, int n) {
    Square m(std::size_t(n), std::vector<Rational>(std::size_t(n), Rational(0)));
    for (std::size_t a = 0; a < G.num_morphisms(); ++a)
      m[std::size_t(G.cod(int(a)))][std::size_t(G.dom(int(a)))] += x[a];
    return m;
  }

  Square matmul(Square const& a, Square const& b) {
    std::size_t n = a.size();
    Square      c(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j)
          c[i][j] += a[i][k] * b[k][j];
    return c;
  }

  bool principal(Bibundle const& E) { return classify_bundle(E).principal; }

}  // namespace

TEST(Convolution, AgreesWithTheDefinition) {
  std::mt19937 rng(11);
  for (auto const& [name, g] : corpus::groupoids().all()) {
    auto const A = groupoid_algebra(g);
    for (int t = 0; t < 10; ++t) {
      auto x = random_vector(rng, A.dim()), y = random_vector(rng, A.dim());
      EXPECT_EQ(A.multiply(x, y), convolve(*g, x, y)) << name;
    }
  }
}

TEST(Convolution, IsAssociativeWithUnit) {
  std::mt19937 rng(12);
  for (auto const& [name, g] : corpus::groupoids().all()) {
    auto const A = groupoid_algebra(g);
    RatVector  one(A.dim());
    for (std::size_t o = 0; o < g->num_objects(); ++o)
      one[std::size_t(g->unit(int(o)))] = 1;
    for (int t = 0; t < 5; ++t) {
      auto x = random_vector(rng, A.dim()), y = random_vector(rng, A.dim()), z = random_vector(rng, A.dim());
      EXPECT_EQ(A.multiply(A.multiply(x, y), z), A.multiply(x, A.multiply(y, z))) << name;
      EXPECT_EQ(A.multiply(one, x), x) << name;
      EXPECT_EQ(A.multiply(x, one), x) << name;
    }
  }
}

TEST(Convolution, PairGroupoidIsAMatrixAlgebra) {
  std::mt19937 rng(13);
  for (int n = 1; n <= 4; ++n) {
    auto const g = share(pair_groupoid(n));
    auto const A = groupoid_algebra(g);
    EXPECT_EQ(structure_constants(A).size(), std::size_t(n * n * n));
    for (int t = 0; t < 5; ++t) {
      auto x = random_vector(rng, A.dim()), y = random_vector(rng, A.dim());
      EXPECT_EQ(as_matrix(*g, A.multiply(x, y), n), matmul(as_matrix(*g, x, n), as_matrix(*g, y, n))) << n;
    }
  }
}

TEST(Convolution, CyclicStructureConstants) {
  auto const A  = groupoid_algebra(corpus::groupoids().c3);
  auto const sc = structure_constants(A);
  ASSERT_EQ(sc.size(), 9u);
  for (auto const& s : sc) {
    EXPECT_EQ(s.k, (s.i + s.j) % 3);
    EXPECT_EQ(s.value, 1);
  }
}

TEST(Bimodules, BundleModulesSatisfyTheLaws) {
  for (auto const& [name, E] : corpus::bibundles()) {
    if (!principal(E)) {
      EXPECT_THROW(bimodule_of_bibundle(E), ValidationError) << name;
      continue;
    }
    auto const M = bimodule_of_bibundle(E);
    EXPECT_EQ(M.dim(), E.size()) << name;
    EXPECT_TRUE(check_bimodule(M).empty()) << name;
  }
}

TEST(Bimodules, RegularIsNeutralForBalancedTensor) {
  for (auto const& [name, g] : corpus::groupoids().all()) {
    auto const R = regular_bimodule(g);
    auto const T = balanced_tensor(R, R);
    EXPECT_EQ(T.module.dim(), R.dim()) << name;
    EXPECT_TRUE(check_bimodule(T.module).empty()) << name;
    EXPECT_NE(bimodule_isomorphism(T.module, R).verdict, Verdict::no) << name;
  }
}

TEST(Bimodules, TensorMapIsAnIsomorphism) {
  auto const  bs    = corpus::bibundles();
  std::size_t pairs = 0;
  for (auto const& [n1, E] : bs)
    for (auto const& [n2, F] : bs) {
      if (!same_groupoid(E.right, F.left) || !principal(E) || !principal(F))
        continue;
      auto const r = mho_iso_check(E, F);
      EXPECT_TRUE(r.ok()) << n1 << " * " << n2 << ": " << r.failure;
      EXPECT_EQ(r.source_dim, tensor(E, F).size()) << n1 << " * " << n2;
      ++pairs;
    }
  EXPECT_GT(pairs, 50u);
}

TEST(Bimodules, PairingIsAssociative) {
  auto const   bs = corpus::bibundles();
  std::mt19937 rng(14);
  std::size_t  checked = 0;
  for (auto const& [n1, E] : bs)
    for (auto const& [n2, F] : bs) {
      if (!same_groupoid(E.right, F.left) || !principal(E) || !principal(F))
        continue;
      for (auto const& [n3, K] : bs) {
        if (!same_groupoid(F.right, K.left) || !principal(K) || checked > 40)
          continue;
        auto m = random_vector(rng, E.size()), m2 = random_vector(rng, F.size()), m3 = random_vector(rng, K.size());
        auto const EF  = tensor(E, F);
        auto const FK  = tensor(F, K);
        auto const lhs = wp(EF, K, wp(E, F, m, m2), m3);
        auto const rhs = wp(E, FK, m, wp(F, K, m2, m3));
        auto const a   = associator(E, F, K);
        RatVector  moved(rhs.size());
        for (std::size_t i = 0; i < lhs.size(); ++i)
          moved[std::size_t(a[i])] = lhs[i];
        EXPECT_EQ(moved, rhs) << n1 << ", " << n2 << ", " << n3;
        ++checked;
      }
    }
  EXPECT_GT(checked, 20u);
}

TEST(Bimodules, MoritaEquivalenceTransfers) {
  auto const& c = corpus::groupoids();
  for (int n = 1; n <= 3; ++n) {
    auto const r = algebra_morita_check(share(pair_groupoid(n)), c.pt);
    EXPECT_EQ(r.verdict, Verdict::yes) << n << ": " << r.reason;
    EXPECT_TRUE(r.left_trip.ok) << n;
    EXPECT_TRUE(r.right_trip.ok) << n;
  }
  EXPECT_EQ(algebra_morita_check(c.c2, c.c3).verdict, Verdict::no);
}
