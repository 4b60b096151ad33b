#include "corpus.hpp"

#include <gtest/gtest.h>

using namespace groupoidal;

namespace {

  int first_over(Bibundle const& E, std::string const& object) {
    int const x = E.right->object(object);
    for (std::size_t e = 0; e < E.size(); ++e)
      if (E.w[e] == x)
        return int(e);
    return -1;
  }

  HLoop point_loop(Bibundle const& E, std::string const& base, std::vector<std::string> const& points) {
    HLoop l{E.right->object(base), {}};
    for (auto const& p : points)
      l.steps.push_back({LoopStep::point, E.right->object(p)});
    return l;
  }

  HLoop around_circle(Bibundle const& E) { return point_loop(E, "a", {"c", "b", "d", "a"}); }

}  // namespace

TEST(Cover, FourPointCircleIsATopology) {
  auto const c = four_point_circle();
  ASSERT_TRUE(c.topology.has_value());
  EXPECT_EQ(c.base.size(), 4u);
  EXPECT_EQ(c.pieces.size(), 2u);
  EXPECT_NO_THROW(check_cover(c));
}

TEST(Cover, PiecesMustCoverTheBase) {
  EXPECT_THROW(check_cover(make_cover({"x", "y"}, {{"x"}})), ValidationError);
}

TEST(Cocycle, InconsistentValuesAreRejected) {
  auto const& g = corpus::groupoids();
  Cocycle     c = constant_cocycle(four_point_circle(), g.c2, 0);
  c.at(0, 1, c.cover.base.at("a")) = g.c2->morphism("r1");
  EXPECT_FALSE(check_cocycle(c).empty());
  EXPECT_THROW(validate_cocycle(c), ValidationError);
}

TEST(Cocycle, SigmaIsPrincipal) {
  for (auto const& [name, c] : corpus::cocycles()) {
    auto const E = sigma(c);
    EXPECT_TRUE(classify_bundle(E).principal) << name;
    EXPECT_EQ(E.size(), c.cover.base.size() * c.target->num_morphisms() / c.target->num_objects()) << name;
  }
}

TEST(Cocycle, ExtractionRecoversTheClass) {
  for (auto const& [name, c] : corpus::cocycles()) {
    auto const ex   = extract_cocycle(sigma(c));
    auto const taus = refinement_maps(c.cover, ex.cocycle.cover);
    ASSERT_FALSE(taus.empty()) << name;
    EXPECT_TRUE(cohomologous(refine(c, ex.cocycle.cover, taus.front()), ex.cocycle).has_value()) << name;
  }
}

TEST(Cocycle, TwistIsNotATrivialClass) {
  auto const& g = corpus::groupoids();
  auto const  triv = constant_cocycle(four_point_circle(), g.c2, 0);
  EXPECT_FALSE(cohomologous(triv, corpus::circle(g.c2, "r1")).has_value());
  EXPECT_TRUE(cohomologous(triv, triv).has_value());
  EXPECT_FALSE(are_isomorphic(sigma(triv), sigma(corpus::circle(g.c2, "r1"))).has_value());
}

TEST(Cocycle, RefinementsAreCohomologous) {
  for (auto const& [name, c] : corpus::cocycles()) {
    // one piece per point: its smallest neighbourhood
    Cover finer = c.cover;
    finer.pieces.clear();
    for (std::size_t x = 0; x < c.cover.base.size(); ++x)
      finer.pieces.push_back(c.cover.topology ? c.cover.topology->open_hull(int(x)) : std::vector<int>{int(x)});
    auto const taus = refinement_maps(c.cover, finer);
    ASSERT_FALSE(taus.empty()) << name;
    for (auto const& tau : taus)
      for (auto const& ups : taus) {
        auto const a = refine(c, finer, tau), b = refine(c, finer, ups);
        EXPECT_TRUE(is_intertwiner(a, b, refinement_intertwiner(c, finer, tau, ups))) << name;
        EXPECT_TRUE(cohomologous(a, b).has_value()) << name;
      }
  }
}

TEST(Leaves, CircleBundles) {
  auto const& g = corpus::groupoids();
  auto const  twisted = sigma(corpus::circle(g.c2, "r1"));
  auto const  lt      = leaves(twisted);
  ASSERT_EQ(lt.size(), 1u);
  EXPECT_EQ(lt[0].holonomy.size(), 2u);
  EXPECT_EQ(lt[0].underlying.size(), 4u);

  auto const trivial = sigma(constant_cocycle(four_point_circle(), g.c2, 0));
  auto const ls      = leaves(trivial);
  ASSERT_EQ(ls.size(), 1u);
  EXPECT_EQ(ls[0].holonomy.size(), 1u);
  EXPECT_EQ(ls[0].component.size(), 4u);

  auto const c4 = leaves(sigma(corpus::circle(g.c4, "r1")));
  ASSERT_EQ(c4.size(), 1u);
  EXPECT_EQ(c4[0].holonomy.size(), 4u);
}

TEST(Leaves, LoopAroundTheCircle) {
  auto const& g = corpus::groupoids();
  auto const  E = sigma(corpus::circle(g.c2, "r1"));
  int const   e = first_over(E, "a");
  EXPECT_EQ(E.left->morphism_id(holonomy_of_loop(E, e, around_circle(E))), "r1");
  EXPECT_TRUE(E.left->is_unit(holonomy_of_loop(E, e, concat(around_circle(E), around_circle(E)))));

  auto const T = sigma(constant_cocycle(four_point_circle(), g.c2, 0));
  EXPECT_TRUE(T.left->is_unit(holonomy_of_loop(T, first_over(T, "a"), around_circle(T))));

  auto const C4 = sigma(corpus::circle(g.c4, "r1"));
  int        h  = holonomy_of_loop(C4, first_over(C4, "a"), around_circle(C4));
  EXPECT_FALSE(C4.left->is_unit(C4.left->comp(h, h)));
}

TEST(Leaves, NonNeighbourStepCannotLift) {
  auto const& g = corpus::groupoids();
  auto const  E = sigma(corpus::circle(g.c2, "r1"));
  // c and d share no open hull
  EXPECT_THROW(lift_loop(E, first_over(E, "c"), point_loop(E, "c", {"d", "c"})), ValidationError);
}

TEST(Leaves, HolonomyIsAHomomorphismOnConcatenation) {
  for (auto const& [name, c] : corpus::cocycles()) {
    auto const E = sigma(c);
    for (auto const& l : leaves(E)) {
      int const  e     = l.component.front();
      auto const loops = generator_loops(E, l.underlying, E.w[std::size_t(e)]);
      for (auto const& a : loops)
        for (auto const& b : loops) {
          int ha = holonomy_of_loop(E, e, a), hb = holonomy_of_loop(E, e, b);
          EXPECT_EQ(holonomy_of_loop(E, e, concat(a, b)), E.left->comp(ha, hb)) << name;
        }
    }
  }
}

TEST(Leaves, ConjugationAndAssociatedBundles) {
  for (auto const& [name, E] : corpus::bibundles()) {
    if (!classify_bundle(E).transitive)
      continue;
    EXPECT_TRUE(check_leaf_conjugation(E).ok) << name;
  }
  for (auto const& [name, c] : corpus::cocycles()) {
    auto const E = sigma(c);
    EXPECT_TRUE(check_leaf_conjugation(E).ok) << name;
    EXPECT_FALSE(check_associated_leaves(E).has_value()) << name;
    for (auto const& l : leaves(E))
      EXPECT_TRUE(holonomy_acts_freely(E, l)) << name;
  }
}

TEST(Leaves, EffectPushforwardRespectsHolonomy) {
  for (auto const& [name, c] : corpus::cocycles()) {
    auto const E  = sigma(c);
    auto const pf = effect_pushforward(E);
    for (auto const& chk : pushforward_holonomy_check(pf.map, E, pf.bundle))
      EXPECT_TRUE(chk.ok) << name;
  }
}
