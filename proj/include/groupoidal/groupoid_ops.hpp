// Orbit spaces, vertex groups, the effect (orbit-relation) groupoid, and the
// essential-equivalence test for functors.

#pragma once

#include <string>
#include <vector>

#include "builders.hpp"
#include "finite_group.hpp"
#include "groupoid.hpp"

namespace groupoidal {

  struct Orbits {
    std::vector<std::vector<int>> blocks;    // sorted, ordered by least object
    std::vector<int>              orbit_of;  // object -> block index
  };

  inline Orbits orbit_space(FiniteGroupoid const& g) {
    UnionFind uf(g.num_objects());
    for (std::size_t m = 0; m < g.num_morphisms(); ++m)
      uf.unite(g.dom(int(m)), g.cod(int(m)));
    Orbits           o;
    std::vector<int> block_of_root(g.num_objects(), -1);
    o.orbit_of.assign(g.num_objects(), -1);
    for (std::size_t a = 0; a < g.num_objects(); ++a) {
      int r = uf.find(int(a));
      if (block_of_root[r] < 0) {
        block_of_root[r] = int(o.blocks.size());
        o.blocks.emplace_back();
      }
      o.orbit_of[a] = block_of_root[r];
      o.blocks[block_of_root[r]].push_back(int(a));
    }
    return o;
  }

  // G(a, a) with elements named by morphism id, in morphism index order.
  inline FiniteGroup vertex_group(FiniteGroupoid const& g, int a) {
    if (a < 0 || std::size_t(a) >= g.num_objects())
      throw ValidationError("NoSuchObject", {std::to_string(a)});
    std::vector<int>         elems = g.hom(a, a);
    std::vector<int>         pos(g.num_morphisms(), -1);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      pos[elems[i]] = int(i);
      names.push_back(g.morphism_id(elems[i]));
    }
    std::vector<int> mult(elems.size() * elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (std::size_t j = 0; j < elems.size(); ++j)
        mult[i * elems.size() + j] = pos[g.comp(elems[i], elems[j])];
    return FiniteGroup(std::move(names), std::move(mult));
  }

  inline FiniteGroup vertex_group(FiniteGroupoid const& g, std::string const& object_id) {
    int a = g.objects().find(object_id);
    if (a < 0)
      throw ValidationError("NoSuchObject", {object_id});
    return vertex_group(g, a);
  }

  inline bool is_effective(FiniteGroupoid const& g) {
    for (std::size_t a = 0; a < g.num_objects(); ++a)
      if (g.hom(int(a), int(a)).size() != 1)
        return false;
    return true;
  }

  // Equivalence-relation groupoid of the orbit relation: same objects, one
  // morphism "(b,a)" from a to b whenever a and b share an orbit.
  inline FiniteGroupoid effect_groupoid(FiniteGroupoid const& g) {
    Orbits const                       o = orbit_space(g);
    std::vector<std::string>           objs = g.objects().ids();
    std::vector<detail::LocalMorphism> mors;
    std::size_t const                  n = g.num_objects();
    std::vector<int>                   at(n * n, -1);
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t a = 0; a < n; ++a)
        if (o.orbit_of[a] == o.orbit_of[b]) {
          at[b * n + a] = int(mors.size());
          mors.push_back({"(" + objs[b] + "," + objs[a] + ")", int(a), int(b)});
        }
    std::vector<int> unit, inv;
    for (std::size_t a = 0; a < n; ++a)
      unit.push_back(at[a * n + a]);
    for (auto const& m : mors)
      inv.push_back(at[std::size_t(m.dom) * n + m.cod]);
    return detail::assemble(objs, mors, unit, inv, [&](int x, int y) {
      return at[std::size_t(mors[x].cod) * n + mors[y].dom];
    });
  }

  struct Effect {
    GroupoidRef groupoid;  // Eff(G)
    Functor     quotient;  // G -> Eff(G), identity on objects
    bool        already_effective = false;
  };

  inline Effect effect(GroupoidRef const& g) {
    Effect e;
    e.groupoid = share(effect_groupoid(*g));
    e.quotient = Functor{g, e.groupoid, {}, {}};
    for (std::size_t a = 0; a < g->num_objects(); ++a)
      e.quotient.obj.push_back(int(a));
    for (std::size_t m = 0; m < g->num_morphisms(); ++m) {
      auto hs = e.groupoid->hom(g->dom(int(m)), g->cod(int(m)));
      e.quotient.mor.push_back(hs.front());
    }
    e.already_effective = g->num_morphisms() == e.groupoid->num_morphisms();
    return e;
  }

  struct EssentialEquivalence {
    bool                     yes = false;
    std::string              reason;  // which condition failed
    std::vector<std::string> witness;
  };

  // (i) every target object receives a morphism from the image of the
  // functor, and (ii) each H(b, b') -> G(f b, f b') is a bijection.
  inline EssentialEquivalence is_essential_equivalence(Functor const& f) {
    auto vs = check_functor(f);
    if (!vs.empty())
      throw ValidationError("SourceTargetMismatch", {}, describe(vs.front()));
    auto const&       H = *f.source;
    auto const&       G = *f.target;
    std::vector<char> reached(G.num_objects(), 0);
    for (std::size_t b = 0; b < H.num_objects(); ++b)
      for (int g : G.from(f.obj[b]))
        reached[G.cod(g)] = 1;
    for (std::size_t a = 0; a < G.num_objects(); ++a)
      if (!reached[a])
        return {false, "not essentially surjective", {G.object_id(int(a))}};
    for (std::size_t b = 0; b < H.num_objects(); ++b)
      for (std::size_t c = 0; c < H.num_objects(); ++c) {
        auto              src = H.hom(int(b), int(c));
        auto              tgt = G.hom(f.obj[b], f.obj[c]);
        std::vector<char> hit(G.num_morphisms(), 0);
        std::size_t       distinct = 0;
        for (int h : src)
          if (!hit[f.mor[h]]) {
            hit[f.mor[h]] = 1;
            ++distinct;
          }
        if (distinct != src.size() || distinct != tgt.size())
          return {false,
                  "hom-set map is not a bijection",
                  {H.object_id(int(b)), H.object_id(int(c)), std::to_string(src.size()), std::to_string(tgt.size())}};
      }
    return {true, {}, {}};
  }

}  // namespace groupoidal
