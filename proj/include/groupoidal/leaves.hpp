// Fibres, right-connected components, leaves and holonomy of transitive and
// principal bibundles.
//
// Without a topology the components of a fibre are its right orbits. With a
// topology on a space-valued bundle, two elements of a fibre are also linked
// when one lies in the minimal neighbourhood of the other.

#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "bibundle.hpp"
#include "builders.hpp"
#include "error.hpp"
#include "groupoid_ops.hpp"

namespace groupoidal {

  struct Leaf {
    int              fiber_object = -1;  // object a of the left groupoid
    std::vector<int> component;          // sorted elements of the fibre over a
    std::vector<int> underlying;         // sorted right objects, w(component)
    std::vector<int> holonomy;           // sorted morphisms of G(a, a)
    std::vector<int> holonomy_generators;
  };

  // comp[e] labels the component of e; components never cross fibres.
  struct FibreComponents {
    std::vector<int>              comp;
    std::vector<std::vector<int>> members;  // ordered by least element
  };

  inline FibreComponents fibre_components(Bibundle const& E) {
    auto const& H = *E.right;
    UnionFind   uf(E.size());
    for (std::size_t e = 0; e < E.size(); ++e) {
      for (int h : H.into(E.w[e]))
        uf.unite(int(e), E.act_right(int(e), h));
      if (E.topology)
        for (int e2 : E.topology->total.open_hull(int(e)))
          if (E.p[e2] == E.p[e])
            uf.unite(int(e), e2);
    }
    FibreComponents  fc;
    std::vector<int> label(E.size(), -1);
    fc.comp.assign(E.size(), -1);
    for (std::size_t e = 0; e < E.size(); ++e) {
      int r = uf.find(int(e));
      if (label[r] < 0) {
        label[r] = int(fc.members.size());
        fc.members.emplace_back();
      }
      fc.comp[e] = label[r];
      fc.members[label[r]].push_back(int(e));
    }
    return fc;
  }

  namespace detail {
    inline std::vector<int> anchor_image(Bibundle const& E, std::vector<int> const& elems) {
      std::vector<int> out;
      for (int e : elems)
        out.push_back(E.w[e]);
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    }

    // g·C for a set of elements in one fibre, sorted.
    inline std::vector<int> translate(Bibundle const& E, int g, std::vector<int> const& elems) {
      std::vector<int> out;
      for (int e : elems)
        out.push_back(E.act(g, e));
      std::sort(out.begin(), out.end());
      return out;
    }
  }  // namespace detail

  // {g in G(a, a) : g·C ⊆ C}, checked through a single element and then
  // asserted on the whole component.
  inline std::vector<int> component_holonomy(Bibundle const& E, std::vector<int> const& component) {
    auto const&      G = *E.left;
    int const        a = E.p[component.front()];
    std::vector<int> out;
    for (int g : G.hom(a, a)) {
      int r = E.act(g, component.front());
      if (!std::binary_search(component.begin(), component.end(), r))
        continue;
      if (detail::translate(E, g, component) != component)
        throw ValidationError("InternalError", {G.morphism_id(g)}, "holonomy element does not preserve the component");
      out.push_back(g);
    }
    return out;
  }

  inline void require_transitive(Bibundle const& E) {
    auto k = classify_bundle(E);
    if (!k.transitive)
      throw ValidationError("NotTransitive", {}, k.reason);
  }

  // One leaf per block of the partition of the right objects, ordered by
  // least object. Each is represented over the least fibre object meeting it,
  // by the component there that holds the least element.
  inline std::vector<Leaf> leaves(Bibundle const& E) {
    require_transitive(E);
    auto const& G  = *E.left;
    auto const  fc = fibre_components(E);
    std::vector<std::vector<int>> images;
    for (auto const& m : fc.members)
      images.push_back(detail::anchor_image(E, m));
    // components with meeting images must have equal images
    std::vector<int> leaf_of_object(E.right->num_objects(), -1);
    std::vector<int> first_image;
    for (std::size_t c = 0; c < images.size(); ++c) {
      int owner = -1;
      for (int b : images[c])
        if (leaf_of_object[b] >= 0)
          owner = leaf_of_object[b];
      if (owner >= 0) {
        if (images[std::size_t(first_image[owner])] != images[c])
          throw ValidationError("InternalError", {E.id(fc.members[c].front())}, "leaf images overlap without agreeing");
        continue;
      }
      int id = int(first_image.size());
      first_image.push_back(int(c));
      for (int b : images[c])
        leaf_of_object[b] = id;
    }
    std::vector<Leaf> out;
    for (int c0 : first_image) {
      auto const& img  = images[std::size_t(c0)];
      int         best = -1;
      for (std::size_t c = 0; c < fc.members.size(); ++c) {
        if (images[c] != img)
          continue;
        if (best < 0 || E.p[fc.members[c].front()] < E.p[fc.members[std::size_t(best)].front()])
          best = int(c);
      }
      Leaf l;
      l.component    = fc.members[std::size_t(best)];
      l.fiber_object = E.p[l.component.front()];
      l.underlying   = img;
      l.holonomy     = component_holonomy(E, l.component);
      auto vg        = vertex_group(G, l.fiber_object);
      auto local     = G.hom(l.fiber_object, l.fiber_object);
      std::vector<int> in_group;
      for (int g : l.holonomy)
        in_group.push_back(int(std::find(local.begin(), local.end(), g) - local.begin()));
      for (int k : vg.subgroup_generators(in_group))
        l.holonomy_generators.push_back(local[std::size_t(k)]);
      out.push_back(std::move(l));
    }
    std::sort(out.begin(), out.end(), [](Leaf const& x, Leaf const& y) { return x.underlying < y.underlying; });
    return out;
  }

  // Leaf-conjugation check: for every pair of components whose images meet,
  // some g carries one onto the other and conjugates the holonomy groups.
  struct ConjugationReport {
    std::size_t pairs_checked = 0;
    bool        ok            = true;
    std::string failure;
  };

  inline ConjugationReport check_leaf_conjugation(Bibundle const& E) {
    require_transitive(E);
    auto const&       G  = *E.left;
    auto const        fc = fibre_components(E);
    ConjugationReport r;
    std::vector<std::vector<int>> holo;
    for (auto const& m : fc.members)
      holo.push_back(component_holonomy(E, m));
    for (std::size_t c = 0; c < fc.members.size(); ++c)
      for (std::size_t d = 0; d < fc.members.size(); ++d) {
        auto const& C = fc.members[c];
        auto const& D = fc.members[d];
        int         e = -1, e2 = -1;
        for (int x : C)
          for (int y : D)
            if (e < 0 && E.w[x] == E.w[y]) {
              e  = x;
              e2 = y;
            }
        if (e < 0)
          continue;
        ++r.pairs_checked;
        int g = -1;
        for (int cand : G.hom(E.p[e], E.p[e2]))
          if (E.act(cand, e) == e2)
            g = cand;
        auto fail = [&](std::string why) {
          if (r.ok)
            r.failure = E.id(C.front()) + " vs " + E.id(D.front()) + ": " + why;
          r.ok = false;
        };
        if (g < 0) {
          fail("no connecting element");
          continue;
        }
        if (detail::translate(E, g, C) != D) {
          fail("translate differs from the target component");
          continue;
        }
        std::vector<int> conj;
        for (int k : holo[c])
          conj.push_back(G.comp(G.comp(g, k), G.inv(g)));
        std::sort(conj.begin(), conj.end());
        if (conj != holo[d])
          fail("holonomy groups are not conjugate");
      }
    return r;
  }

  // Every element of the holonomy group other than the unit moves every
  // element of the component.
  inline bool holonomy_acts_freely(Bibundle const& E, Leaf const& l) {
    auto const& G = *E.left;
    for (int g : l.holonomy) {
      if (G.is_unit(g))
        continue;
      for (int e : l.component)
        if (E.act(g, e) == e)
          return false;
    }
    return true;
  }

  // E/H: the left bundle of right orbits over the orbit space of H.
  struct AssociatedBundle {
    Bibundle         bundle;
    std::vector<int> element_class;  // E -> E/H
    std::vector<int> object_class;   // H0 -> |H|
  };

  inline AssociatedBundle associated_bundle(Bibundle const& E) {
    auto const& H = *E.right;
    auto const  orb = orbit_space(H);
    std::vector<std::string> pts;
    for (auto const& blk : orb.blocks)
      pts.push_back("[" + H.object_id(blk.front()) + "]");
    UnionFind uf(E.size());
    for (std::size_t e = 0; e < E.size(); ++e)
      for (int h : H.into(E.w[e]))
        uf.unite(int(e), E.act_right(int(e), h));
    std::vector<int>         rep_class(E.size(), -1), reps;
    std::vector<std::string> ids;
    for (std::size_t e = 0; e < E.size(); ++e)
      if (uf.find(int(e)) == int(e)) {
        rep_class[e] = int(reps.size());
        reps.push_back(int(e));
        ids.push_back("[" + E.id(int(e)) + "]");
      }
    AssociatedBundle out;
    Bibundle&        b = out.bundle;
    b.left             = E.left;
    b.right            = share(space_groupoid(pts));
    b.total            = IdTable(ids);
    std::vector<int> sorted_of(reps.size());
    for (std::size_t k = 0; k < reps.size(); ++k)
      sorted_of[k] = b.total.find(ids[k]);
    out.element_class.resize(E.size());
    for (std::size_t e = 0; e < E.size(); ++e)
      out.element_class[e] = sorted_of[std::size_t(rep_class[uf.find(int(e))])];
    out.object_class.resize(H.num_objects());
    for (std::size_t x = 0; x < H.num_objects(); ++x)
      out.object_class[x] = b.right->object(pts[std::size_t(orb.orbit_of[x])]);
    auto const&       G = *E.left;
    std::size_t const n = reps.size();
    b.p.assign(n, -1);
    b.w.assign(n, -1);
    b.lact.assign(G.num_morphisms() * n, -1);
    b.ract.assign(n * b.right->num_morphisms(), -1);
    for (std::size_t k = 0; k < n; ++k) {
      int e  = reps[k];
      int s  = sorted_of[k];
      b.p[s] = E.p[e];
      b.w[s] = out.object_class[E.w[e]];
      for (int g : G.from(E.p[e]))
        b.lact[std::size_t(g) * n + s] = out.element_class[E.act(g, e)];
      b.ract[std::size_t(s) * b.right->num_morphisms() + b.right->unit(b.w[s])] = s;
    }
    if (E.topology) {
      bool space_only = true;
      for (std::size_t h = 0; h < H.num_morphisms(); ++h)
        space_only = space_only && H.is_unit(int(h));
      if (space_only)
        b.topology = BundleTopology{E.topology->total.quotient(out.element_class, n),
                                    E.topology->base.quotient(out.object_class, pts.size())};
    }
    validate_bibundle(b);
    return out;
  }

  // Leaves of E pushed to E/H agree with the leaves of E/H, with equal
  // holonomy groups.
  inline std::optional<std::string> check_associated_leaves(Bibundle const& E) {
    auto const ab  = associated_bundle(E);
    auto const mine = leaves(E);
    auto const theirs = leaves(ab.bundle);
    if (mine.size() != theirs.size())
      return "leaf counts differ: " + std::to_string(mine.size()) + " vs " + std::to_string(theirs.size());
    for (auto const& l : mine) {
      std::vector<int> img;
      for (int x : l.underlying)
        img.push_back(ab.object_class[x]);
      std::sort(img.begin(), img.end());
      img.erase(std::unique(img.begin(), img.end()), img.end());
      auto it = std::find_if(theirs.begin(), theirs.end(), [&](Leaf const& t) { return t.underlying == img; });
      if (it == theirs.end())
        return "no leaf of the associated bundle over the image of " + E.right->object_id(l.underlying.front());
      std::vector<int> comp;
      for (int e : l.component)
        comp.push_back(ab.element_class[e]);
      std::sort(comp.begin(), comp.end());
      comp.erase(std::unique(comp.begin(), comp.end()), comp.end());
      if (component_holonomy(ab.bundle, comp) != l.holonomy)
        return "holonomy differs over " + E.right->object_id(l.underlying.front());
      if (it->holonomy.size() != l.holonomy.size())
        return "holonomy orders differ over " + E.right->object_id(l.underlying.front());
    }
    return std::nullopt;
  }

  // ---------------------------------------------------------------------
  // Loops and holonomy

  // A step of a right-groupoid path: either a morphism h, moving from dom h
  // to cod h (the lift moves by h⁻¹), or a move to a neighbouring point of
  // the object space (one lies in the minimal neighbourhood of the other).
  struct LoopStep {
    enum Kind { morphism, point } kind = morphism;
    int index                          = -1;

    bool operator==(LoopStep const&) const = default;
  };

  struct HLoop {
    int                   base = -1;
    std::vector<LoopStep> steps;

    bool operator==(HLoop const&) const = default;
  };

  inline HLoop concat(HLoop const& first, HLoop const& second) {
    HLoop l = first;
    l.steps.insert(l.steps.end(), second.steps.begin(), second.steps.end());
    return l;
  }

  namespace detail {
    inline bool neighbours(std::optional<BundleTopology> const& t, int x, int y) {
      if (!t)
        return false;
      auto const& ux = t->base.open_hull(x);
      auto const& uy = t->base.open_hull(y);
      return std::binary_search(ux.begin(), ux.end(), y) || std::binary_search(uy.begin(), uy.end(), x);
    }
  }  // namespace detail

  // Endpoint of the unique lift starting at e.
  inline int lift_loop(Bibundle const& E, int e, HLoop const& loop) {
    auto const& H = *E.right;
    if (E.w[e] != loop.base)
      throw ValidationError("NotLiftable", {E.id(e)}, "element is not over the base point");
    int cur = e;
    for (std::size_t i = 0; i < loop.steps.size(); ++i) {
      auto const& s = loop.steps[i];
      if (s.kind == LoopStep::morphism) {
        if (s.index < 0 || std::size_t(s.index) >= H.num_morphisms() || H.dom(s.index) != E.w[cur])
          throw ValidationError("NotLiftable", {std::to_string(i)}, "step does not start where the path is");
        cur = E.act_right(cur, H.inv(s.index));
        continue;
      }
      if (s.index < 0 || std::size_t(s.index) >= H.num_objects() || !detail::neighbours(E.topology, E.w[cur], s.index))
        throw ValidationError("NotLiftable", {std::to_string(i)}, "point step to a non-neighbour");
      auto const& T    = E.topology->total;
      int         next = -1;
      for (std::size_t e2 = 0; e2 < E.size(); ++e2) {
        if (E.w[e2] != s.index)
          continue;
        auto const& u2 = T.open_hull(int(e2));
        auto const& uc = T.open_hull(cur);
        if (std::binary_search(uc.begin(), uc.end(), int(e2)) || std::binary_search(u2.begin(), u2.end(), cur)) {
          if (next >= 0 && next != int(e2))
            throw ValidationError("NotLiftable", {std::to_string(i)}, "lift is not unique");
          next = int(e2);
        }
      }
      if (next < 0)
        throw ValidationError("NotLiftable", {std::to_string(i)}, "no lift of the point step");
      cur = next;
    }
    if (E.w[cur] != loop.base)
      throw ValidationError("NotLiftable", {}, "path does not return to the base point");
    return cur;
  }

  // The unique g with g⁻¹·e equal to the lift's endpoint.
  inline int holonomy_of_loop(Bibundle const& E, int e, HLoop const& loop) {
    require_principal(E);
    int end = lift_loop(E, e, loop);
    int g   = divide(E, e, end);
    if (g < 0)
      throw ValidationError("NotLiftable", {E.id(e)}, "lift leaves the fibre");
    return g;
  }

  // Generating loops of the leaf through `base`: one per edge outside a
  // breadth-first spanning tree of the leaf's objects. Edges are right
  // morphisms and neighbour relations of the object space.
  inline std::vector<HLoop> generator_loops(Bibundle const& E, std::vector<int> const& objects, int base) {
    auto const& H = *E.right;
    struct Edge {
      int      from, to;
      LoopStep step, back;
    };
    std::vector<Edge> edges;
    for (int x : objects)
      for (int h : H.from(x)) {
        if (H.is_unit(h))
          continue;
        if (!std::binary_search(objects.begin(), objects.end(), H.cod(h)))
          continue;
        if (h > H.inv(h))
          continue;
        edges.push_back({x, H.cod(h), {LoopStep::morphism, h}, {LoopStep::morphism, H.inv(h)}});
      }
    if (E.topology)
      for (int x : objects)
        for (int y : E.topology->base.open_hull(x))
          if (y != x && std::binary_search(objects.begin(), objects.end(), y))
            edges.push_back({x, y, {LoopStep::point, y}, {LoopStep::point, x}});
    std::vector<std::vector<std::size_t>> adj(H.num_objects());
    for (std::size_t k = 0; k < edges.size(); ++k) {
      adj[std::size_t(edges[k].from)].push_back(k);
      adj[std::size_t(edges[k].to)].push_back(k);
    }
    std::vector<std::vector<LoopStep>> to_base(H.num_objects()), from_base(H.num_objects());
    std::vector<char>                  seen(H.num_objects(), 0), tree(edges.size(), 0);
    std::vector<int>                   queue{base};
    seen[std::size_t(base)] = 1;
    for (std::size_t q = 0; q < queue.size(); ++q) {
      int x = queue[q];
      for (std::size_t k : adj[std::size_t(x)]) {
        auto const& ed = edges[k];
        int         y  = ed.from == x ? ed.to : ed.from;
        if (seen[std::size_t(y)])
          continue;
        seen[std::size_t(y)] = 1;
        tree[k]              = 1;
        LoopStep fwd = ed.from == x ? ed.step : ed.back, bwd = ed.from == x ? ed.back : ed.step;
        from_base[std::size_t(y)] = from_base[std::size_t(x)];
        from_base[std::size_t(y)].push_back(fwd);
        to_base[std::size_t(y)] = {bwd};
        to_base[std::size_t(y)].insert(to_base[std::size_t(y)].end(), to_base[std::size_t(x)].begin(),
                                       to_base[std::size_t(x)].end());
        queue.push_back(y);
      }
    }
    std::vector<HLoop> out;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      if (tree[k])
        continue;
      auto const& ed = edges[k];
      HLoop       l{base, from_base[std::size_t(ed.from)]};
      l.steps.push_back(ed.step);
      l.steps.insert(l.steps.end(), to_base[std::size_t(ed.to)].begin(), to_base[std::size_t(ed.to)].end());
      out.push_back(std::move(l));
    }
    return out;
  }

  // ---------------------------------------------------------------------
  // Equivariant maps and pushforward of holonomy

  // alpha: E -> F with alpha(g·e·h) = psi(g)·alpha(e)·phi(h).
  struct EquivariantMap {
    Functor          psi;  // left groupoid of E -> left groupoid of F
    Functor          phi;  // right groupoid of E -> right groupoid of F
    std::vector<int> map;
  };

  inline void check_equivariant(Bibundle const& E, Bibundle const& F, EquivariantMap const& a) {
    auto fail = [](std::string why, std::vector<std::string> ids = {}) {
      throw ValidationError("NotEquivariant", std::move(ids), std::move(why));
    };
    if (!same_groupoid(a.psi.source, E.left) || !same_groupoid(a.psi.target, F.left)
        || !same_groupoid(a.phi.source, E.right) || !same_groupoid(a.phi.target, F.right))
      fail("functors do not match the bundles");
    if (a.map.size() != E.size())
      fail("map size");
    auto const& G = *E.left;
    auto const& H = *E.right;
    for (std::size_t e = 0; e < E.size(); ++e) {
      int fe = a.map[e];
      if (fe < 0 || std::size_t(fe) >= F.size())
        fail("map leaves the target", {E.id(int(e))});
      if (F.p[fe] != a.psi.obj[E.p[e]] || F.w[fe] != a.phi.obj[E.w[e]])
        fail("anchors not respected", {E.id(int(e))});
      for (int g : G.from(E.p[e]))
        if (a.map[E.act(g, int(e))] != F.act(a.psi.mor[g], fe))
          fail("left action not respected", {G.morphism_id(g), E.id(int(e))});
      for (int h : H.into(E.w[e]))
        if (a.map[E.act_right(int(e), h)] != F.act_right(fe, a.phi.mor[h]))
          fail("right action not respected", {E.id(int(e)), H.morphism_id(h)});
    }
  }

  inline HLoop push_loop(Functor const& phi, HLoop const& l) {
    HLoop out{phi.obj[l.base], {}};
    int   cur = l.base;
    for (auto const& s : l.steps) {
      if (s.kind == LoopStep::morphism) {
        out.steps.push_back({LoopStep::morphism, phi.mor[s.index]});
        cur = phi.source->cod(s.index);
      } else {
        if (phi.obj[s.index] != phi.obj[cur])
          out.steps.push_back({LoopStep::point, phi.obj[s.index]});
        cur = s.index;
      }
    }
    return out;
  }

  struct PushforwardCheck {
    std::size_t leaf;
    int         element;  // base element in E
    HLoop       loop;
    int         lhs;  // psi(holonomy in E)
    int         rhs;  // holonomy in F of the pushed loop
    bool        ok;
  };

  // psi(H_e(l)) == H_{alpha(e)}(phi(l)) for every generating loop of every leaf.
  inline std::vector<PushforwardCheck> pushforward_holonomy_check(EquivariantMap const& a, Bibundle const& E,
                                                                  Bibundle const& F) {
    check_equivariant(E, F, a);
    require_principal(E);
    require_principal(F);
    std::vector<PushforwardCheck> out;
    auto const                    ls = leaves(E);
    for (std::size_t k = 0; k < ls.size(); ++k) {
      int e    = ls[k].component.front();
      int base = E.w[e];
      for (auto const& loop : generator_loops(E, ls[k].underlying, base)) {
        int lhs = a.psi.mor[holonomy_of_loop(E, e, loop)];
        int rhs = holonomy_of_loop(F, a.map[e], push_loop(a.phi, loop));
        out.push_back({k, e, loop, lhs, rhs, lhs == rhs});
      }
    }
    return out;
  }

  // e -> [1_{psi p(e)} | e] into <psi> ⊗ E.
  struct Pushforward {
    Bibundle       bundle;
    EquivariantMap map;
  };

  inline Pushforward functor_pushforward(Functor const& psi, Bibundle const& E) {
    if (!same_groupoid(psi.source, E.left))
      throw ValidationError("GroupoidMismatch", {}, "functor source differs from the left groupoid");
    Bibundle const P  = functor_bibundle(psi);
    auto const     tp = tensor_with_classes(P, E);
    auto const&    G2 = *psi.target;
    Pushforward    out{tp.bundle, {psi, identity_functor(E.right), {}}};
    for (std::size_t e = 0; e < E.size(); ++e) {
      int a  = E.p[e];
      int pe = P.total.at("(" + G2.morphism_id(G2.unit(psi.obj[a])) + "," + psi.source->object_id(a) + ")");
      out.map.map.push_back(tp.class_of[std::size_t(pe) * E.size() + e]);
    }
    return out;
  }

  inline Pushforward effect_pushforward(Bibundle const& E) { return functor_pushforward(effect(E.left).quotient, E); }

}  // namespace groupoidal
