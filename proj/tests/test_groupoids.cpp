#include "corpus.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace groupoidal;

namespace {

  // Brute-force check of composition tables against the axioms.
  bool satisfies_axioms(FiniteGroupoid const& g) {
    int const n = int(g.num_morphisms());
    for (int a = 0; a < n; ++a) {
      if (g.comp(a, g.unit(g.dom(a))) != a || g.comp(g.unit(g.cod(a)), a) != a)
        return false;
      if (g.comp(g.inv(a), a) != g.unit(g.dom(a)) || g.comp(a, g.inv(a)) != g.unit(g.cod(a)))
        return false;
      for (int b = 0; b < n; ++b) {
        int ab = g.comp(a, b);
        if ((ab >= 0) != (g.dom(a) == g.cod(b)))
          return false;
        if (ab < 0)
          continue;
        if (g.dom(ab) != g.dom(b) || g.cod(ab) != g.cod(a))
          return false;
        for (int c = 0; c < n; ++c)
          if (g.dom(b) == g.cod(c) && g.comp(ab, c) != g.comp(a, g.comp(b, c)))
            return false;
      }
    }
    return true;
  }

  RawGroupoid without_composite(FiniteGroupoid const& g) {
    auto raw = g.to_raw();
    raw.comp.pop_back();
    return raw;
  }

}  // namespace

TEST(Builders, CorpusSatisfiesAxioms) {
  for (auto const& [name, g] : corpus::groupoids().all())
    EXPECT_TRUE(satisfies_axioms(*g)) << name;
}

TEST(Builders, PairGroupoidHasOneMorphismPerPair) {
  for (int n = 1; n <= 5; ++n) {
    auto const g = pair_groupoid(n);
    EXPECT_EQ(g.num_morphisms(), std::size_t(n * n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        EXPECT_EQ(g.hom(a, b).size(), 1u);
  }
}

TEST(Builders, CyclicComposesByAddition) {
  auto const g = cyclic(5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      EXPECT_EQ(g.morphism_id(g.comp(g.morphism("r" + std::to_string(i)), g.morphism("r" + std::to_string(j)))),
                "r" + std::to_string((i + j) % 5));
}

TEST(Builders, ProductAndUnionSizes) {
  auto const& c = corpus::groupoids();
  EXPECT_EQ(c.c2xp2->num_morphisms(), 8u);
  EXPECT_EQ(c.c2xp2->num_objects(), 2u);
  EXPECT_EQ(c.ptuc2->num_morphisms(), 3u);
  EXPECT_EQ(orbit_space(*c.ptuc2).blocks.size(), 2u);
}

TEST(Validation, MissingCompositeIsReported) {
  auto const vs = FiniteGroupoid::check(without_composite(pair_groupoid(2)));
  ASSERT_FALSE(vs.empty());
  EXPECT_EQ(vs.front().code, "MissingComposite");
  try {
    FiniteGroupoid::validate(without_composite(pair_groupoid(2)));
    FAIL() << "expected a validation error";
  } catch (ValidationError const& e) {
    EXPECT_EQ(e.error_class(), ErrorClass::validation);
  }
}

TEST(Validation, RawRoundTripIsIdentity) {
  for (auto const& [name, g] : corpus::groupoids().all())
    EXPECT_TRUE(FiniteGroupoid::validate(g->to_raw()) == *g) << name;
}

TEST(Orbits, VertexGroupsAndEffect) {
  auto const& c = corpus::groupoids();
  EXPECT_EQ(vertex_group(*c.c2xp2, 0).order(), 2u);
  EXPECT_EQ(vertex_group(*c.pair3, 1).order(), 1u);
  EXPECT_TRUE(is_effective(*c.pair3));
  EXPECT_FALSE(is_effective(*c.c3));
  auto const eff = effect(c.c3);
  EXPECT_EQ(eff.groupoid->num_morphisms(), 1u);
  EXPECT_FALSE(eff.already_effective);
  // swap acts faithfully on two points, so nothing collapses
  EXPECT_TRUE(effect(c.swap).already_effective);
}

TEST(Functors, CompositionIsAssociativeWithUnits) {
  auto const fs = corpus::functors();
  for (auto const& [n1, f] : fs) {
    auto const idl = identity_functor(f.target);
    auto const idr = identity_functor(f.source);
    EXPECT_EQ(compose(idl, f).mor, f.mor) << n1;
    EXPECT_EQ(compose(f, idr).mor, f.mor) << n1;
    for (auto const& [n2, g] : fs) {
      if (!same_groupoid(f.target, g.source))
        continue;
      for (auto const& [n3, h] : fs)
        if (same_groupoid(g.target, h.source))
          EXPECT_EQ(compose(h, compose(g, f)).mor, compose(compose(h, g), f).mor) << n1 << ", " << n2 << ", " << n3;
    }
  }
}

TEST(Functors, EssentialEquivalence) {
  auto const& c = corpus::groupoids();
  EXPECT_TRUE(is_essential_equivalence(corpus::by_objects(c.pt, c.pair3, {0})).yes);
  EXPECT_TRUE(is_essential_equivalence(corpus::to_point(c.pair3)).yes);
  EXPECT_FALSE(is_essential_equivalence(corpus::by_objects(c.disc2, c.pair2, {0, 1})).yes);
  EXPECT_FALSE(is_essential_equivalence(corpus::to_point(c.c2)).yes);
}

TEST(Bibundles, UnitsAreNeutralForTensor) {
  for (auto const& [name, E] : corpus::bibundles()) {
    auto const l = tensor(unit_bibundle(E.left), E);
    auto const r = tensor(E, unit_bibundle(E.right));
    EXPECT_TRUE(are_isomorphic(l, E).has_value()) << name;
    EXPECT_TRUE(are_isomorphic(r, E).has_value()) << name;
  }
}

TEST(Bibundles, ClassificationOfCorpus) {
  auto const& c = corpus::groupoids();
  EXPECT_TRUE(classify_bundle(unit_bibundle(c.c3)).principal);
  auto const triv = classify_bundle(corpus::trivial_action(c.c2));
  EXPECT_TRUE(triv.transitive);
  EXPECT_FALSE(triv.principal);
  for (auto const& [name, f] : corpus::functors())
    EXPECT_TRUE(classify_bundle(functor_bibundle(f)).principal) << name;
}

TEST(Bibundles, TensorOfPrincipalIsPrincipal) {
  auto const bs = corpus::bibundles();
  for (auto const& [n1, E] : bs)
    for (auto const& [n2, F] : bs) {
      if (!same_groupoid(E.right, F.left) || !classify_bundle(E).principal || !classify_bundle(F).principal)
        continue;
      EXPECT_TRUE(classify_bundle(tensor(E, F)).principal) << n1 << " * " << n2;
    }
}

TEST(Bibundles, TensorIsAssociativeUpToIso) {
  auto const bs = corpus::bibundles();
  std::size_t triples = 0;
  for (auto const& [n1, E] : bs)
    for (auto const& [n2, F] : bs) {
      if (!same_groupoid(E.right, F.left))
        continue;
      auto const EF = tensor(E, F);
      for (auto const& [n3, K] : bs) {
        if (!same_groupoid(F.right, K.left))
          continue;
        EXPECT_TRUE(are_isomorphic(tensor(EF, K), tensor(E, tensor(F, K))).has_value()) << n1 << ", " << n2 << ", " << n3;
        ++triples;
      }
    }
  EXPECT_GT(triples, 100u);
}

TEST(Bibundles, InverseComposesToUnit) {
  auto const& c = corpus::groupoids();
  auto const  m = morita_equivalent(c.pair3, c.pt);
  ASSERT_EQ(m.verdict, Verdict::yes);
  auto const E  = *m.witness;
  auto const Ei = invert(E);
  EXPECT_TRUE(are_isomorphic(tensor(E, Ei), unit_bibundle(c.pair3)).has_value());
  EXPECT_TRUE(are_isomorphic(tensor(Ei, E), unit_bibundle(c.pt)).has_value());
}

TEST(Bibundles, NonInvertibleBundleIsRejected) {
  auto const& c = corpus::groupoids();
  EXPECT_THROW(invert(functor_bibundle(corpus::to_point(c.c2))), ValidationError);
}

TEST(Bibundles, FunctorBundleSectionsGiveBackTheFunctor) {
  for (auto const& [name, f] : corpus::functors()) {
    auto const E  = functor_bibundle(f);
    auto const ss = sections(E);
    ASSERT_FALSE(ss.empty()) << name;
    bool found = false;
    for (auto const& s : ss)
      found = found || functor_from_section(E, s).mor == f.mor;
    EXPECT_TRUE(found) << name;
  }
}

TEST(Morita, Verdicts) {
  auto const& c = corpus::groupoids();
  for (int n = 1; n <= 4; ++n)
    EXPECT_EQ(morita_equivalent(share(pair_groupoid(n)), c.pt).verdict, Verdict::yes) << n;
  EXPECT_EQ(morita_equivalent(c.c2, c.c3).verdict, Verdict::no);
  EXPECT_EQ(morita_equivalent(c.disc2, c.pt).verdict, Verdict::no);
  EXPECT_EQ(morita_equivalent(c.c2xp2, c.c2).verdict, Verdict::yes);
  EXPECT_EQ(morita_equivalent(c.swap, c.pt).verdict, Verdict::yes);
}

TEST(Morita, BudgetExhaustionRaises) {
  auto const& c = corpus::groupoids();
  Budget      tiny(1);
  EXPECT_THROW(morita_equivalent(c.c5, c.c5, tiny), BudgetExceeded);
}
