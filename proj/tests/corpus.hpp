// Inputs shared by the unit tests and the acceptance run.
#pragma once

#include <groupoidal/groupoidal.hpp>

#include <string>
#include <utility>
#include <vector>

namespace corpus {

  using namespace groupoidal;

  template <typename T>
  using Named = std::vector<std::pair<std::string, T>>;

  struct Groupoids {
    GroupoidRef pt    = share(point());
    GroupoidRef pair2 = share(pair_groupoid(2));
    GroupoidRef pair3 = share(pair_groupoid(3));
    GroupoidRef c2    = share(cyclic(2));
    GroupoidRef c3    = share(cyclic(3));
    GroupoidRef c4    = share(cyclic(4));
    GroupoidRef c5    = share(cyclic(5));
    GroupoidRef disc2 = share(discrete_set(2));
    GroupoidRef c2xp2 = share(product(cyclic(2), pair_groupoid(2)));
    GroupoidRef ptuc2 = share(disjoint_union(point(), cyclic(2)));
    GroupoidRef rot23 = share(vertex_action_groupoid(rotation_action(2, 3)));
    GroupoidRef swap  = share(action_groupoid(FiniteGroup::cyclic(2), {"a", "b"}, {0, 1, 1, 0}));

    Named<GroupoidRef> all() const {
      return {{"point", pt},        {"pair(2)", pair2}, {"pair(3)", pair3},      {"cyclic(2)", c2},
              {"cyclic(3)", c3},    {"cyclic(4)", c4},  {"cyclic(5)", c5},       {"discrete(2)", disc2},
              {"cyclic(2)xpair(2)", c2xp2}, {"point+cyclic(2)", ptuc2}, {"rot(2,3)", rot23}, {"swap", swap}};
    }
  };

  inline Groupoids const& groupoids() {
    static Groupoids const g;
    return g;
  }

  inline Functor to_point(GroupoidRef const& g) {
    auto const& P = groupoids().pt;
    return {g, P, std::vector<int>(g->num_objects(), 0), std::vector<int>(g->num_morphisms(), 0)};
  }

  // r_i -> r_{i * factor mod n} between cyclic groups.
  inline Functor cyclic_hom(GroupoidRef const& src, GroupoidRef const& tgt, int factor) {
    int const k = int(src->num_morphisms()), n = int(tgt->num_morphisms());
    Functor   f{src, tgt, {0}, std::vector<int>(std::size_t(k))};
    for (int i = 0; i < k; ++i)
      f.mor[std::size_t(src->morphism("r" + padded(std::size_t(i), std::size_t(k))))] =
          tgt->morphism("r" + padded(std::size_t(i * factor % n), std::size_t(n)));
    return validate_functor(std::move(f));
  }

  // Objects mapped by id through `obj`, morphisms by ends when the target
  // hom-sets are singletons or units.
  inline Functor by_objects(GroupoidRef const& src, GroupoidRef const& tgt, std::vector<int> obj) {
    Functor f{src, tgt, std::move(obj), {}};
    for (std::size_t m = 0; m < src->num_morphisms(); ++m) {
      auto hs = tgt->hom(f.obj[std::size_t(src->dom(int(m)))], f.obj[std::size_t(src->cod(int(m)))]);
      f.mor.push_back(hs.front());
    }
    return validate_functor(std::move(f));
  }

  inline Named<Functor> functors() {
    auto const& g = groupoids();
    return {
        {"id point", identity_functor(g.pt)},
        {"id pair(2)", identity_functor(g.pair2)},
        {"id pair(3)", identity_functor(g.pair3)},
        {"id cyclic(2)", identity_functor(g.c2)},
        {"id cyclic(3)", identity_functor(g.c3)},
        {"id cyclic(4)", identity_functor(g.c4)},
        {"cyclic(2) -> point", to_point(g.c2)},
        {"cyclic(4) -> point", to_point(g.c4)},
        {"pair(2) -> point", to_point(g.pair2)},
        {"pair(3) -> point", to_point(g.pair3)},
        {"discrete(2) -> point", to_point(g.disc2)},
        {"point -> pair(3)", by_objects(g.pt, g.pair3, {0})},
        {"point -> cyclic(2)", by_objects(g.pt, g.c2, {0})},
        {"cyclic(2) -> cyclic(4)", cyclic_hom(g.c2, g.c4, 2)},
        {"cyclic(4) -> cyclic(2)", cyclic_hom(g.c4, g.c2, 1)},
        {"cyclic(3) -> cyclic(3) inverse", cyclic_hom(g.c3, g.c3, 2)},
        {"pair(2) -> pair(3)", by_objects(g.pair2, g.pair3, {0, 1})},
        {"discrete(2) -> pair(2)", by_objects(g.disc2, g.pair2, {0, 1})},
        {"point -> point+cyclic(2)", by_objects(g.pt, g.ptuc2, {0})},
    };
  }

  // Left G acts trivially on a single element over the point.
  inline Bibundle trivial_action(GroupoidRef const& g) {
    BibundleData d;
    d.left  = g;
    d.right = groupoids().pt;
    d.total = {"x"};
    d.p     = {{"x", g->object_id(0)}};
    d.w     = {{"x", "*"}};
    for (std::size_t m = 0; m < g->num_morphisms(); ++m)
      d.left_act.push_back({g->morphism_id(int(m)), "x", "x"});
    d.right_act.push_back({"x", "e", "x"});
    return make_bibundle(d);
  }

  // Bibundles between the corpus groupoids: functor bundles, units, a
  // non-principal one, and the pair(3)/point equivalence both ways.
  inline Named<Bibundle> bibundles() {
    auto const&     g = groupoids();
    Named<Bibundle> out;
    for (auto const& [name, f] : functors())
      out.push_back({"<" + name + ">", functor_bibundle(f)});
    for (auto const& [name, h] : g.all())
      out.push_back({"unit " + name, unit_bibundle(h)});
    out.push_back({"trivial cyclic(2) action", trivial_action(g.c2)});
    auto const m = morita_equivalent(g.pair3, g.pt);
    out.push_back({"pair(3) ~ point", *m.witness});
    out.push_back({"point ~ pair(3)", *m.inverse});
    return out;
  }

  // ---------------------------------------------------------------------
  // Cocycles

  inline Cocycle circle(GroupoidRef const& target, std::string const& twist) {
    Cocycle c = constant_cocycle(four_point_circle(), target, 0);
    int     a = c.cover.base.at("a");
    int     t = target->morphism(twist);
    c.at(0, 1, a) = t;
    c.at(1, 0, a) = target->inv(t);
    return validate_cocycle(std::move(c));
  }

  inline Named<Cocycle> cocycles() {
    auto const&    g = groupoids();
    Named<Cocycle> out;
    out.push_back({"trivial circle", constant_cocycle(four_point_circle(), g.c2, 0)});
    out.push_back({"twisted circle", circle(g.c2, "r1")});
    out.push_back({"cyclic(4) circle", circle(g.c4, "r1")});
    out.push_back({"cyclic(3) circle", circle(g.c3, "r2")});
    {
      // Discrete three points, two overlapping pieces.
      Cover   cov = make_cover({"x", "y", "z"}, {{"x", "y"}, {"y", "z"}});
      Cocycle c   = constant_cocycle(cov, g.c3, 0);
      int     y   = cov.base.at("y");
      c.at(0, 1, y) = g.c3->morphism("r1");
      c.at(1, 0, y) = g.c3->morphism("r2");
      out.push_back({"discrete cyclic(3)", validate_cocycle(std::move(c))});
    }
    {
      // Values in pair(2): the two pieces pick different objects.
      Cover   cov = make_cover({"x", "y"}, {{"x", "y"}, {"y"}});
      Cocycle c   = empty_cocycle(cov, g.pair2);
      for (int x : {0, 1})
        c.at(0, 0, x) = g.pair2->unit(0);
      int y         = cov.base.at("y");
      c.at(1, 1, y) = g.pair2->unit(1);
      c.at(0, 1, y) = g.pair2->hom(1, 0).front();
      c.at(1, 0, y) = g.pair2->hom(0, 1).front();
      out.push_back({"pair(2) values", validate_cocycle(std::move(c))});
    }
    return out;
  }

  // ---------------------------------------------------------------------
  // Simplicial actions

  // Antipodal map on the octahedron; the quotient is a projective plane.
  inline SimplicialAction octahedron() {
    std::vector<std::string>              vs{"x+", "x-", "y+", "y-", "z+", "z-"};
    std::vector<std::vector<std::string>> fs;
    for (char const* x : {"x+", "x-"})
      for (char const* y : {"y+", "y-"})
        for (char const* z : {"z+", "z-"})
          fs.push_back({x, y, z});
    SimplicialComplex K(vs, fs);
    std::vector<int>  anti(6);
    for (std::size_t v = 0; v < 6; ++v) {
      std::string s = K.vertices()[int(v)];
      s[1]          = s[1] == '+' ? '-' : '+';
      anti[v]       = K.vertices().at(s);
    }
    return make_action(std::move(K), {anti});
  }

  inline Named<SimplicialAction> actions() {
    Named<SimplicialAction> out;
    for (auto [k, m] : std::vector<std::pair<int, int>>{{2, 3}, {3, 3}, {4, 3}, {2, 4}, {3, 4}, {1, 3}})
      out.push_back({"rot(" + std::to_string(k) + "," + std::to_string(m) + ")", rotation_action(k, m)});
    out.push_back({"octahedron", octahedron()});
    return out;
  }

}  // namespace corpus
