// Standard finite groupoids: point, pair groupoids, cyclic groups, discrete
// spaces, action groupoids, disjoint unions, products and full subgroupoids.

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "finite_group.hpp"
#include "groupoid.hpp"

namespace groupoidal {

  namespace detail {
    struct LocalMorphism {
      std::string id;
      int         dom, cod;
    };

    // Assembles a groupoid from locally indexed data (any order), sorting
    // ids into canonical order. `comp(a, b)` is queried on composable pairs.
    inline FiniteGroupoid assemble(std::vector<std::string> const&        objs,
                                   std::vector<LocalMorphism> const&      mors,
                                   std::vector<int> const&                unit,
                                   std::vector<int> const&                inv,
                                   std::function<int(int, int)> const&    comp) {
      FiniteGroupoid::Tables t;
      t.objects = IdTable(objs);
      std::vector<std::string> mids;
      for (auto const& m : mors)
        mids.push_back(m.id);
      t.morphisms = IdTable(mids);
      std::vector<int> opos(objs.size()), mpos(mors.size());
      for (std::size_t i = 0; i < objs.size(); ++i)
        opos[i] = t.objects.find(objs[i]);
      for (std::size_t i = 0; i < mors.size(); ++i)
        mpos[i] = t.morphisms.find(mors[i].id);
      std::size_t const n = mors.size();
      t.dom.assign(n, -1);
      t.cod.assign(n, -1);
      t.inv.assign(n, -1);
      t.unit.assign(objs.size(), -1);
      for (std::size_t i = 0; i < n; ++i) {
        t.dom[mpos[i]] = opos[mors[i].dom];
        t.cod[mpos[i]] = opos[mors[i].cod];
        t.inv[mpos[i]] = mpos[inv[i]];
      }
      for (std::size_t a = 0; a < objs.size(); ++a)
        t.unit[opos[a]] = mpos[unit[a]];
      std::vector<std::vector<int>> into(objs.size());
      for (std::size_t i = 0; i < n; ++i)
        into[mors[i].cod].push_back(int(i));
      t.comp.assign(n * n, -1);
      for (std::size_t a = 0; a < n; ++a)
        for (int b : into[mors[a].dom])
          t.comp[std::size_t(mpos[a]) * n + mpos[b]] = mpos[comp(int(a), b)];
      return FiniteGroupoid::from_tables(std::move(t));
    }
  }  // namespace detail

  // One object "*" and its unit "e".
  inline FiniteGroupoid point() {
    return detail::assemble({"*"}, {{"e", 0, 0}}, {0}, {0}, [](int, int) { return 0; });
  }

  // Pair groupoid on n objects: one morphism "(i,j)" from j to i for every pair.
  inline FiniteGroupoid pair_groupoid(int n) {
    if (n < 1)
      throw ValidationError("BadParameter", {std::to_string(n)}, "pair groupoid needs at least one object");
    std::vector<std::string>           objs;
    std::vector<detail::LocalMorphism> mors;
    for (int i = 0; i < n; ++i)
      objs.push_back(padded(std::size_t(i), std::size_t(n)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        mors.push_back({"(" + objs[i] + "," + objs[j] + ")", j, i});
    std::vector<int> unit, inv;
    for (int i = 0; i < n; ++i)
      unit.push_back(i * n + i);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        inv.push_back(j * n + i);
    // (i,j)∘(j,k) = (i,k)
    return detail::assemble(objs, mors, unit, inv, [n](int a, int b) { return (a / n) * n + (b % n); });
  }

  // A group as a one-object groupoid.
  inline FiniteGroupoid group_groupoid(FiniteGroup const& grp) {
    std::vector<detail::LocalMorphism> mors;
    std::vector<int>                   inv;
    for (std::size_t g = 0; g < grp.order(); ++g) {
      mors.push_back({grp.name(int(g)), 0, 0});
      inv.push_back(grp.inv(int(g)));
    }
    return detail::assemble({"*"}, mors, {grp.identity()}, inv, [&grp](int a, int b) { return grp.mul(a, b); });
  }

  // Z/k as a one-object groupoid with morphisms r0..r(k-1), r_i∘r_j = r_(i+j).
  inline FiniteGroupoid cyclic(int k) { return group_groupoid(FiniteGroup::cyclic(k)); }

  // A space as a groupoid with only units; morphism ids equal object ids.
  inline FiniteGroupoid space_groupoid(std::vector<std::string> const& points) {
    std::vector<detail::LocalMorphism> mors;
    std::vector<int>                   idx;
    for (std::size_t i = 0; i < points.size(); ++i) {
      mors.push_back({points[i], int(i), int(i)});
      idx.push_back(int(i));
    }
    return detail::assemble(points, mors, idx, idx, [](int a, int) { return a; });
  }

  inline FiniteGroupoid discrete_set(int n) {
    if (n < 0)
      throw ValidationError("BadParameter", {std::to_string(n)});
    std::vector<std::string> pts;
    for (int i = 0; i < n; ++i)
      pts.push_back("x" + padded(std::size_t(i), std::size_t(n)));
    return space_groupoid(pts);
  }

  // Right action `act[x * |G| + g] = x·g` of a finite group on a set.
  // Throws ValidationError("BadAction") when the action laws fail.
  inline void check_right_action(FiniteGroup const&              grp,
                                 std::vector<std::string> const& set,
                                 std::vector<int> const&         act) {
    std::size_t const n = grp.order();
    if (act.size() != set.size() * n)
      throw ValidationError("BadAction", {}, "action table has the wrong size");
    for (int v : act)
      if (v < 0 || std::size_t(v) >= set.size())
        throw ValidationError("BadAction", {}, "action leaves the set");
    for (std::size_t x = 0; x < set.size(); ++x) {
      if (act[x * n + grp.identity()] != int(x))
        throw ValidationError("BadAction", {set[x]}, "identity does not act trivially");
      for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h)
          if (act[x * n + grp.mul(int(g), int(h))] != act[std::size_t(act[x * n + g]) * n + h])
            throw ValidationError("BadAction", {set[x], grp.name(int(g)), grp.name(int(h))},
                                  "x·(gh) differs from (x·g)·h");
    }
  }

  // Action groupoid of a right action: morphisms "(x,g)" with dom x·g and
  // cod x; (x',g')∘(x,g) = (x',g'g).
  inline FiniteGroupoid action_groupoid(FiniteGroup const&              grp,
                                        std::vector<std::string> const& set,
                                        std::vector<int> const&         act) {
    check_right_action(grp, set, act);
    std::size_t const                  n = grp.order();
    std::vector<detail::LocalMorphism> mors;
    std::vector<int>                   unit, inv;
    for (std::size_t x = 0; x < set.size(); ++x)
      for (std::size_t g = 0; g < n; ++g)
        mors.push_back({"(" + set[x] + "," + grp.name(int(g)) + ")", act[x * n + g], int(x)});
    for (std::size_t x = 0; x < set.size(); ++x)
      unit.push_back(int(x * n + grp.identity()));
    for (std::size_t x = 0; x < set.size(); ++x)
      for (std::size_t g = 0; g < n; ++g)
        inv.push_back(int(std::size_t(act[x * n + g]) * n + grp.inv(int(g))));
    return detail::assemble(set, mors, unit, inv, [&](int a, int b) {
      std::size_t xa = std::size_t(a) / n, ga = std::size_t(a) % n, gb = std::size_t(b) % n;
      return int(xa * n + grp.mul(int(ga), int(gb)));
    });
  }

  // Ids are prefixed "0." and "1." by summand.
  inline FiniteGroupoid disjoint_union(FiniteGroupoid const& a, FiniteGroupoid const& b) {
    std::vector<std::string>           objs;
    std::vector<detail::LocalMorphism> mors;
    std::vector<int>                   unit, inv;
    int const                          ao = int(a.num_objects()), am = int(a.num_morphisms());
    for (std::size_t i = 0; i < a.num_objects(); ++i)
      objs.push_back("0." + a.object_id(int(i)));
    for (std::size_t i = 0; i < b.num_objects(); ++i)
      objs.push_back("1." + b.object_id(int(i)));
    for (std::size_t g = 0; g < a.num_morphisms(); ++g)
      mors.push_back({"0." + a.morphism_id(int(g)), a.dom(int(g)), a.cod(int(g))});
    for (std::size_t g = 0; g < b.num_morphisms(); ++g)
      mors.push_back({"1." + b.morphism_id(int(g)), ao + b.dom(int(g)), ao + b.cod(int(g))});
    for (std::size_t i = 0; i < a.num_objects(); ++i)
      unit.push_back(a.unit(int(i)));
    for (std::size_t i = 0; i < b.num_objects(); ++i)
      unit.push_back(am + b.unit(int(i)));
    for (std::size_t g = 0; g < a.num_morphisms(); ++g)
      inv.push_back(a.inv(int(g)));
    for (std::size_t g = 0; g < b.num_morphisms(); ++g)
      inv.push_back(am + b.inv(int(g)));
    return detail::assemble(objs, mors, unit, inv, [&](int x, int y) {
      return x < am ? a.comp(x, y) : am + b.comp(x - am, y - am);
    });
  }

  inline FiniteGroupoid product(FiniteGroupoid const& a, FiniteGroupoid const& b) {
    std::vector<std::string>           objs;
    std::vector<detail::LocalMorphism> mors;
    std::vector<int>                   unit, inv;
    int const                          bo = int(b.num_objects()), bm = int(b.num_morphisms());
    for (std::size_t i = 0; i < a.num_objects(); ++i)
      for (std::size_t j = 0; j < b.num_objects(); ++j)
        objs.push_back("(" + a.object_id(int(i)) + "," + b.object_id(int(j)) + ")");
    for (std::size_t g = 0; g < a.num_morphisms(); ++g)
      for (std::size_t h = 0; h < b.num_morphisms(); ++h)
        mors.push_back({"(" + a.morphism_id(int(g)) + "," + b.morphism_id(int(h)) + ")",
                        a.dom(int(g)) * bo + b.dom(int(h)), a.cod(int(g)) * bo + b.cod(int(h))});
    for (std::size_t i = 0; i < a.num_objects(); ++i)
      for (std::size_t j = 0; j < b.num_objects(); ++j)
        unit.push_back(a.unit(int(i)) * bm + b.unit(int(j)));
    for (std::size_t g = 0; g < a.num_morphisms(); ++g)
      for (std::size_t h = 0; h < b.num_morphisms(); ++h)
        inv.push_back(a.inv(int(g)) * bm + b.inv(int(h)));
    return detail::assemble(objs, mors, unit, inv, [&](int x, int y) {
      return a.comp(x / bm, y / bm) * bm + b.comp(x % bm, y % bm);
    });
  }

  // Full subgroupoid on a set of objects (indices into `g`); ids are kept.
  inline FiniteGroupoid full_subgroupoid(FiniteGroupoid const& g, std::vector<int> const& objects) {
    std::vector<int> local(g.num_objects(), -1);
    std::vector<std::string> objs;
    for (int a : objects) {
      if (local[a] >= 0)
        continue;
      local[a] = int(objs.size());
      objs.push_back(g.object_id(a));
    }
    std::vector<int>                   mlocal(g.num_morphisms(), -1), back;
    std::vector<detail::LocalMorphism> mors;
    for (std::size_t m = 0; m < g.num_morphisms(); ++m)
      if (local[g.dom(int(m))] >= 0 && local[g.cod(int(m))] >= 0) {
        mlocal[m] = int(mors.size());
        back.push_back(int(m));
        mors.push_back({g.morphism_id(int(m)), local[g.dom(int(m))], local[g.cod(int(m))]});
      }
    std::vector<int> unit(objs.size()), inv;
    for (int a : objects)
      unit[local[a]] = mlocal[g.unit(a)];
    for (int m : back)
      inv.push_back(mlocal[g.inv(m)]);
    return detail::assemble(objs, mors, unit, inv, [&](int x, int y) { return mlocal[g.comp(back[x], back[y])]; });
  }

}  // namespace groupoidal
