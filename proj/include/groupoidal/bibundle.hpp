// Bibundles between finite groupoids: a set E with anchors p: E -> G0 and
// w: E -> H0, a left G-action along p and a right H-action along w that
// commute. Includes the standard constructions (unit bibundle, the bibundle
// of a functor, tensor product, inverse, restriction, gluing) and an
// exhaustive equivariant-isomorphism search.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "builders.hpp"
#include "error.hpp"
#include "groupoid.hpp"
#include "ids.hpp"
#include "topology.hpp"

namespace groupoidal {

  // Topologies on the total set and on the right objects (the base). Only
  // used when the right groupoid is a space (units only).
  struct BundleTopology {
    FiniteTopology total;
    FiniteTopology base;

    bool operator==(BundleTopology const&) const = default;
  };

  struct Bibundle {
    GroupoidRef      left, right;
    IdTable          total;
    std::vector<int> p, w;  // element -> left object, element -> right object
    std::vector<int> lact;  // lact[g * |E| + e] = g·e, or -1
    std::vector<int> ract;  // ract[e * |H1| + h] = e·h, or -1
    std::optional<BundleTopology> topology;

    std::size_t        size() const noexcept { return total.size(); }
    std::string const& id(int e) const { return total[e]; }
    int                element(std::string const& s) const { return total.at(s, "element"); }
    int act(int g, int e) const { return lact[std::size_t(g) * size() + e]; }
    int act_right(int e, int h) const { return ract[std::size_t(e) * right->num_morphisms() + h]; }

    bool operator==(Bibundle const& o) const {
      return same_groupoid(left, o.left) && same_groupoid(right, o.right) && total == o.total && p == o.p
             && w == o.w && lact == o.lact && ract == o.ract && topology == o.topology;
    }
  };

  // Fills action tables from partial data; entries not listed stay -1.
  struct BibundleData {
    GroupoidRef                                         left, right;
    std::vector<std::string>                            total;
    std::map<std::string, std::string>                  p, w;
    std::vector<std::array<std::string, 3>>             left_act;   // [g, e, g·e]
    std::vector<std::array<std::string, 3>>             right_act;  // [e, h, e·h]
    std::optional<std::map<std::string, std::vector<std::string>>> total_open, base_open;
  };

  inline std::vector<Violation> check_bibundle(Bibundle const& b) {
    std::vector<Violation> vs;
    auto add = [&](std::string code, std::vector<std::string> ids, std::string msg) {
      if (vs.size() < detail::max_reported_violations)
        vs.push_back({std::move(code), std::move(ids), std::move(msg)});
    };
    auto const&       G  = *b.left;
    auto const&       H  = *b.right;
    std::size_t const ne = b.size();
    if (b.p.size() != ne || b.w.size() != ne || b.lact.size() != G.num_morphisms() * ne
        || b.ract.size() != ne * H.num_morphisms()) {
      add("BadAction", {}, "table sizes disagree");
      return vs;
    }
    for (std::size_t e = 0; e < ne; ++e)
      if (b.p[e] < 0 || std::size_t(b.p[e]) >= G.num_objects() || b.w[e] < 0
          || std::size_t(b.w[e]) >= H.num_objects()) {
        add("AnchorMismatch", {b.id(int(e))}, "anchor out of range");
        return vs;
      }
    auto E = [&](int e) { return b.id(e); };
    for (std::size_t g = 0; g < G.num_morphisms(); ++g)
      for (std::size_t e = 0; e < ne; ++e) {
        int  r       = b.act(int(g), int(e));
        bool defined = G.dom(int(g)) == b.p[e];
        if (defined != (r >= 0)) {
          add("BadAction", {G.morphism_id(int(g)), E(int(e))}, "left action defined off its domain or missing");
          continue;
        }
        if (!defined)
          continue;
        if (b.p[r] != G.cod(int(g)))
          add("AnchorMismatch", {G.morphism_id(int(g)), E(int(e))}, "p(g·e) != cod g");
        if (b.w[r] != b.w[e])
          add("AnchorMismatch", {G.morphism_id(int(g)), E(int(e))}, "w(g·e) != w(e)");
      }
    for (std::size_t e = 0; e < ne; ++e)
      for (std::size_t h = 0; h < H.num_morphisms(); ++h) {
        int  r       = b.act_right(int(e), int(h));
        bool defined = H.cod(int(h)) == b.w[e];
        if (defined != (r >= 0)) {
          add("BadAction", {E(int(e)), H.morphism_id(int(h))}, "right action defined off its domain or missing");
          continue;
        }
        if (!defined)
          continue;
        if (b.w[r] != H.dom(int(h)))
          add("AnchorMismatch", {E(int(e)), H.morphism_id(int(h))}, "w(e·h) != dom h");
        if (b.p[r] != b.p[e])
          add("AnchorMismatch", {E(int(e)), H.morphism_id(int(h))}, "p(e·h) != p(e)");
      }
    if (!vs.empty())
      return vs;
    for (std::size_t e = 0; e < ne; ++e) {
      if (b.act(G.unit(b.p[e]), int(e)) != int(e))
        add("BadAction", {E(int(e))}, "left unit does not act trivially");
      if (b.act_right(int(e), H.unit(b.w[e])) != int(e))
        add("BadAction", {E(int(e))}, "right unit does not act trivially");
      for (int g : G.from(b.p[e]))
        for (int g2 : G.from(G.cod(g)))
          if (b.act(G.comp(g2, g), int(e)) != b.act(g2, b.act(g, int(e))))
            add("BadAction", {G.morphism_id(g2), G.morphism_id(g), E(int(e))}, "(g'∘g)·e != g'·(g·e)");
      for (int h : H.into(b.w[e]))
        for (int h2 : H.into(H.dom(h)))
          if (b.act_right(int(e), H.comp(h, h2)) != b.act_right(b.act_right(int(e), h), h2))
            add("BadAction", {E(int(e)), H.morphism_id(h), H.morphism_id(h2)}, "e·(h∘h') != (e·h)·h'");
      for (int g : G.from(b.p[e]))
        for (int h : H.into(b.w[e]))
          if (b.act_right(b.act(g, int(e)), h) != b.act(g, b.act_right(int(e), h)))
            add("NotCommuting", {G.morphism_id(g), E(int(e)), H.morphism_id(h)}, "(g·e)·h != g·(e·h)");
    }
    if (b.topology && vs.empty()) {
      auto const& T = b.topology->total;
      auto const& B = b.topology->base;
      if (T.size() != ne || B.size() != H.num_objects()) {
        add("BadTopology", {}, "topology sizes disagree");
        return vs;
      }
      for (std::size_t h = 0; h < H.num_morphisms(); ++h)
        if (!H.is_unit(int(h))) {
          add("BadTopology", {H.morphism_id(int(h))}, "topologies need a space on the right");
          return vs;
        }
      if (!is_locally_constant(b.p, T))
        add("BadTopology", {}, "left anchor is not locally constant");
      if (!is_continuous(b.w, T, B))
        add("BadTopology", {}, "right anchor is not continuous");
      for (std::size_t g = 0; g < G.num_morphisms(); ++g)
        for (std::size_t e = 0; e < ne; ++e) {
          int r = b.act(int(g), int(e));
          if (r < 0)
            continue;
          auto const& v = T.open_hull(r);
          for (int e2 : T.open_hull(int(e)))
            if (!std::binary_search(v.begin(), v.end(), b.act(int(g), e2)))
              add("BadTopology", {G.morphism_id(int(g)), E(int(e))}, "left action is not continuous");
        }
    }
    return vs;
  }

  inline Bibundle validate_bibundle(Bibundle b) {
    auto vs = check_bibundle(b);
    if (!vs.empty())
      throw ValidationError(std::move(vs));
    return b;
  }

  inline Bibundle make_bibundle(BibundleData const& d) {
    Bibundle b;
    b.left  = d.left;
    b.right = d.right;
    b.total = IdTable(d.total);
    auto const& G = *b.left;
    auto const& H = *b.right;
    std::size_t ne = b.size();
    b.p.assign(ne, -1);
    b.w.assign(ne, -1);
    for (auto const& [e, a] : d.p)
      b.p[b.element(e)] = G.object(a);
    for (auto const& [e, a] : d.w)
      b.w[b.element(e)] = H.object(a);
    for (std::size_t e = 0; e < ne; ++e)
      if (b.p[e] < 0 || b.w[e] < 0)
        throw SchemaError("element without both anchors", {b.id(int(e))});
    b.lact.assign(G.num_morphisms() * ne, -1);
    b.ract.assign(ne * H.num_morphisms(), -1);
    for (auto const& [g, e, r] : d.left_act)
      b.lact[std::size_t(G.morphism(g)) * ne + b.element(e)] = b.element(r);
    for (auto const& [e, h, r] : d.right_act)
      b.ract[std::size_t(b.element(e)) * H.num_morphisms() + H.morphism(h)] = b.element(r);
    if (d.total_open || d.base_open) {
      auto read = [](std::map<std::string, std::vector<std::string>> const& m, IdTable const& ids) {
        std::vector<std::vector<int>> u(ids.size());
        for (std::size_t i = 0; i < ids.size(); ++i)
          u[i] = {int(i)};
        for (auto const& [x, hull] : m) {
          auto& v = u[ids.at(x)];
          for (auto const& y : hull)
            v.push_back(ids.at(y));
        }
        return FiniteTopology(std::move(u));
      };
      BundleTopology t;
      t.total    = d.total_open ? read(*d.total_open, b.total) : FiniteTopology::discrete(ne);
      t.base     = d.base_open ? read(*d.base_open, H.objects()) : FiniteTopology::discrete(H.num_objects());
      b.topology = std::move(t);
    }
    return validate_bibundle(std::move(b));
  }

  inline BibundleData to_data(Bibundle const& b) {
    BibundleData d;
    d.left  = b.left;
    d.right = b.right;
    d.total = b.total.ids();
    auto const& G = *b.left;
    auto const& H = *b.right;
    for (std::size_t e = 0; e < b.size(); ++e) {
      d.p[b.id(int(e))] = G.object_id(b.p[e]);
      d.w[b.id(int(e))] = H.object_id(b.w[e]);
    }
    for (std::size_t g = 0; g < G.num_morphisms(); ++g)
      for (std::size_t e = 0; e < b.size(); ++e)
        if (int r = b.act(int(g), int(e)); r >= 0)
          d.left_act.push_back({G.morphism_id(int(g)), b.id(int(e)), b.id(r)});
    for (std::size_t e = 0; e < b.size(); ++e)
      for (std::size_t h = 0; h < H.num_morphisms(); ++h)
        if (int r = b.act_right(int(e), int(h)); r >= 0)
          d.right_act.push_back({b.id(int(e)), H.morphism_id(int(h)), b.id(r)});
    if (b.topology) {
      auto write = [](FiniteTopology const& t, IdTable const& ids) {
        std::map<std::string, std::vector<std::string>> m;
        for (std::size_t x = 0; x < t.size(); ++x)
          for (int y : t.open_hull(int(x)))
            m[ids[int(x)]].push_back(ids[y]);
        return m;
      };
      d.total_open = write(b.topology->total, b.total);
      d.base_open  = write(b.topology->base, H.objects());
    }
    return d;
  }

  // ---------------------------------------------------------------------
  // Classification

  struct BundleKind {
    bool        transitive = false;
    bool        principal  = false;
    std::string reason;  // first failed condition
  };

  // As a left G-bundle over the right objects: transitive when w is onto and
  // G acts transitively on each w-fibre, principal when also freely. With a
  // topology, principal additionally asks w to be a local homeomorphism.
  inline BundleKind classify_bundle(Bibundle const& b) {
    auto const&       G = *b.left;
    auto const&       H = *b.right;
    std::vector<char> hit(H.num_objects(), 0);
    for (int x : b.w)
      hit[x] = 1;
    for (std::size_t x = 0; x < H.num_objects(); ++x)
      if (!hit[x])
        return {false, false, "right anchor misses object " + H.object_id(int(x))};
    std::vector<std::size_t> fibre(H.num_objects(), 0);
    for (int x : b.w)
      ++fibre[x];
    bool        free_action = true;
    std::string reason;
    for (std::size_t e = 0; e < b.size(); ++e) {
      std::vector<char> seen(b.size(), 0);
      std::size_t       reached = 0;
      for (int g : G.from(b.p[e])) {
        int r = b.act(g, int(e));
        if (seen[r]) {
          if (free_action)
            reason = "stabiliser of " + b.id(int(e)) + " is nontrivial";
          free_action = false;
        } else {
          seen[r] = 1;
          ++reached;
        }
      }
      if (reached != fibre[b.w[e]])
        return {false, false, "action is not transitive on the fibre of " + b.id(int(e))};
    }
    if (!free_action)
      return {true, false, reason};
    if (b.topology) {
      auto const& T = b.topology->total;
      auto const& B = b.topology->base;
      for (std::size_t e = 0; e < b.size(); ++e) {
        std::vector<int> img;
        for (int e2 : T.open_hull(int(e)))
          img.push_back(b.w[e2]);
        std::sort(img.begin(), img.end());
        std::size_t n = img.size();
        img.erase(std::unique(img.begin(), img.end()), img.end());
        if (img.size() != n || img != B.open_hull(b.w[e]))
          return {true, false, "right anchor is not a local homeomorphism at " + b.id(int(e))};
      }
    }
    return {true, true, {}};
  }

  inline void require_principal(Bibundle const& b) {
    auto k = classify_bundle(b);
    if (!k.principal)
      throw ValidationError("NotPrincipal", {}, k.reason);
  }

  // For a principal bundle: the unique g with g·e2 == e1, or -1 when the two
  // elements lie over different right objects.
  inline int divide(Bibundle const& b, int e1, int e2) {
    if (b.w[e1] != b.w[e2])
      return -1;
    for (int g : b.left->from(b.p[e2]))
      if (b.act(g, e2) == e1)
        return g;
    return -1;
  }

  // ---------------------------------------------------------------------
  // Constructions

  // G1 with p = cod, w = dom, acted on by composition on both sides.
  inline Bibundle unit_bibundle(GroupoidRef const& g) {
    Bibundle b;
    b.left = b.right = g;
    auto const& G    = *g;
    b.total          = G.morphisms();
    std::size_t n    = G.num_morphisms();
    for (std::size_t m = 0; m < n; ++m) {
      b.p.push_back(G.cod(int(m)));
      b.w.push_back(G.dom(int(m)));
    }
    b.lact.assign(n * n, -1);
    b.ract.assign(n * n, -1);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        int c = G.comp(int(x), int(y));
        b.lact[x * n + y] = c;  // x·y
        b.ract[y * n + x] = G.comp(int(y), int(x));
      }
    return b;
  }

  // The bibundle of a functor f: H -> G. Elements "(g,b)" with dom g = f(b);
  // p = cod g, w = b; g'·(g,b) = (g'∘g, b) and (g,b)·h = (g∘f(h), dom h).
  inline Bibundle functor_bibundle(Functor const& f) {
    auto const&                        G = *f.target;
    auto const&                        H = *f.source;
    std::vector<std::pair<int, int>>   elems;
    std::vector<std::string>           ids;
    for (std::size_t b = 0; b < H.num_objects(); ++b)
      for (int g : G.from(f.obj[b])) {
        elems.emplace_back(g, int(b));
        ids.push_back("(" + G.morphism_id(g) + "," + H.object_id(int(b)) + ")");
      }
    Bibundle bb;
    bb.left  = f.target;
    bb.right = f.source;
    bb.total = IdTable(ids);
    std::size_t const ne = elems.size();
    std::vector<int>  pos(G.num_morphisms() * H.num_objects(), -1);
    std::vector<int>  local_to_sorted(ne);
    for (std::size_t i = 0; i < ne; ++i) {
      local_to_sorted[i] = bb.total.find(ids[i]);
      pos[std::size_t(elems[i].first) * H.num_objects() + elems[i].second] = local_to_sorted[i];
    }
    bb.p.assign(ne, -1);
    bb.w.assign(ne, -1);
    bb.lact.assign(G.num_morphisms() * ne, -1);
    bb.ract.assign(ne * H.num_morphisms(), -1);
    auto at = [&](int g, int b) { return pos[std::size_t(g) * H.num_objects() + b]; };
    for (std::size_t i = 0; i < ne; ++i) {
      auto [g, b] = elems[i];
      int e       = local_to_sorted[i];
      bb.p[e]     = G.cod(g);
      bb.w[e]     = b;
      for (int g2 : G.from(G.cod(g)))
        bb.lact[std::size_t(g2) * ne + e] = at(G.comp(g2, g), b);
      for (int h : H.into(b))
        bb.ract[std::size_t(e) * H.num_morphisms() + h] = at(G.comp(g, f.mor[h]), H.dom(h));
    }
    return bb;
  }

  struct TensorProduct {
    Bibundle         bundle;
    std::vector<int> class_of;  // class_of[e * |F| + f], -1 off the fibred product
  };

  // E ⊗ F for E over (G, H) and F over (H, K): pairs with w(e) = p(f) modulo
  // (e, f) ~ (e·h, h⁻¹·f). Classes are named "[e|f]" after their least pair.
  // A topology on F passes to the quotient of (discrete E) ×_{H0} F; E itself
  // must be discrete.
  inline TensorProduct tensor_with_classes(Bibundle const& E, Bibundle const& F) {
    if (!same_groupoid(E.right, F.left))
      throw ValidationError("GroupoidMismatch", {}, "right groupoid of the first factor differs from the left of the second");
    if (E.topology && !E.topology->total.is_discrete())
      throw ValidationError("TopologyUnsupported", {}, "the first factor of a tensor product must be discrete");
    auto const&       H  = *E.right;
    std::size_t const nf = F.size();
    std::vector<int>  pair_index(E.size() * nf, -1);
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t e = 0; e < E.size(); ++e)
      for (std::size_t f = 0; f < nf; ++f)
        if (E.w[e] == F.p[f]) {
          pair_index[e * nf + f] = int(pairs.size());
          pairs.emplace_back(int(e), int(f));
        }
    UnionFind uf(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      auto [e, f] = pairs[i];
      for (int h : H.into(E.w[e]))
        uf.unite(int(i), pair_index[std::size_t(E.act_right(e, h)) * nf + F.act(H.inv(h), f)]);
    }
    // pairs are generated in (e, f) order, so the root (least index) is the
    // lexicographically least pair of its class
    std::vector<int>         root_class(pairs.size(), -1);
    std::vector<std::string> ids;
    std::vector<int>         reps;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (uf.find(int(i)) == int(i)) {
        root_class[i] = int(reps.size());
        reps.push_back(int(i));
        ids.push_back("[" + E.id(pairs[i].first) + "|" + F.id(pairs[i].second) + "]");
      }
    TensorProduct t;
    Bibundle&     b = t.bundle;
    b.left          = E.left;
    b.right         = F.right;
    b.total         = IdTable(ids);
    std::vector<int> sorted_of(reps.size());
    for (std::size_t c = 0; c < reps.size(); ++c)
      sorted_of[c] = b.total.find(ids[c]);
    t.class_of.assign(E.size() * nf, -1);
    for (std::size_t i = 0; i < pairs.size(); ++i)
      t.class_of[std::size_t(pairs[i].first) * nf + pairs[i].second] = sorted_of[root_class[uf.find(int(i))]];
    auto const&       G  = *E.left;
    auto const&       K  = *F.right;
    std::size_t const nc = reps.size();
    b.p.assign(nc, -1);
    b.w.assign(nc, -1);
    b.lact.assign(G.num_morphisms() * nc, -1);
    b.ract.assign(nc * K.num_morphisms(), -1);
    for (std::size_t c = 0; c < nc; ++c) {
      auto [e, f] = pairs[reps[c]];
      int s       = sorted_of[c];
      b.p[s]      = E.p[e];
      b.w[s]      = F.w[f];
      for (int g : G.from(E.p[e]))
        b.lact[std::size_t(g) * nc + s] = t.class_of[std::size_t(E.act(g, e)) * nf + f];
      for (int k : K.into(F.w[f]))
        b.ract[std::size_t(s) * K.num_morphisms() + k] = t.class_of[std::size_t(e) * nf + F.act_right(f, k)];
    }
    if (F.topology && !F.topology->total.is_discrete()) {
      std::vector<std::vector<int>> hull(pairs.size());
      std::vector<int>              cls(pairs.size());
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto [e, f] = pairs[i];
        cls[i]      = t.class_of[std::size_t(e) * nf + f];
        for (int f2 : F.topology->total.open_hull(f))
          if (int j = pair_index[std::size_t(e) * nf + f2]; j >= 0)
            hull[i].push_back(j);
      }
      b.topology = BundleTopology{FiniteTopology(std::move(hull)).quotient(cls, nc), F.topology->base};
    }
    return t;
  }

  inline Bibundle tensor(Bibundle const& E, Bibundle const& F) { return tensor_with_classes(E, F).bundle; }

  // Exchanges the roles of the two groupoids: h·e := e·h⁻¹ and e·g := g⁻¹·e.
  inline Bibundle swap_sides(Bibundle const& E) {
    Bibundle b;
    b.left  = E.right;
    b.right = E.left;
    b.total = E.total;
    b.p     = E.w;
    b.w     = E.p;
    auto const&       G  = *E.left;
    auto const&       H  = *E.right;
    std::size_t const ne = E.size();
    b.lact.assign(H.num_morphisms() * ne, -1);
    b.ract.assign(ne * G.num_morphisms(), -1);
    for (std::size_t e = 0; e < ne; ++e) {
      for (int h : H.from(E.w[e]))
        b.lact[std::size_t(h) * ne + e] = E.act_right(int(e), H.inv(h));
      for (int g : G.into(E.p[e]))
        b.ract[e * G.num_morphisms() + g] = E.act(G.inv(g), int(e));
    }
    return b;
  }

  // Checks that `map` is a bijection E -> F preserving both anchors and both
  // actions (and, with topologies, a homeomorphism).
  inline bool is_equivariant_iso(Bibundle const& E, Bibundle const& F, std::vector<int> const& map) {
    if (E.size() != F.size() || map.size() != E.size())
      return false;
    std::vector<char> hit(F.size(), 0);
    for (int v : map) {
      if (v < 0 || std::size_t(v) >= F.size() || hit[v])
        return false;
      hit[v] = 1;
    }
    auto const& G = *E.left;
    auto const& H = *E.right;
    for (std::size_t e = 0; e < E.size(); ++e) {
      int a = map[e];
      if (E.p[e] != F.p[a] || E.w[e] != F.w[a])
        return false;
      for (int g : G.from(E.p[e]))
        if (map[E.act(g, int(e))] != F.act(g, a))
          return false;
      for (int h : H.into(E.w[e]))
        if (map[E.act_right(int(e), h)] != F.act_right(a, h))
          return false;
    }
    if (E.topology || F.topology) {
      auto const ET = E.topology ? E.topology->total : FiniteTopology::discrete(E.size());
      auto const FT = F.topology ? F.topology->total : FiniteTopology::discrete(F.size());
      for (std::size_t e = 0; e < E.size(); ++e) {
        std::vector<int> img;
        for (int e2 : ET.open_hull(int(e)))
          img.push_back(map[e2]);
        std::sort(img.begin(), img.end());
        if (img != FT.open_hull(map[e]))
          return false;
      }
    }
    return true;
  }

  // Exhaustive search for an equivariant isomorphism E -> F. Each orbit of
  // the combined actions needs one choice; orbits with the fewest candidates
  // go first. Throws BudgetExceeded("SearchBudgetExceeded").
  inline std::optional<std::vector<int>> are_isomorphic(Bibundle const& E, Bibundle const& F, Budget& budget) {
    if (!same_groupoid(E.left, F.left) || !same_groupoid(E.right, F.right))
      throw ValidationError("GroupoidMismatch", {}, "bibundles over different groupoids");
    if (E.size() != F.size())
      return std::nullopt;
    auto const&       G  = *E.left;
    auto const&       H  = *E.right;
    std::size_t const nh = H.num_objects();
    auto fibre_key       = [nh](Bibundle const& b, int e) { return std::size_t(b.p[e]) * nh + b.w[e]; };
    std::map<std::size_t, std::vector<int>> fe, ff;
    for (std::size_t e = 0; e < E.size(); ++e) {
      fe[fibre_key(E, int(e))].push_back(int(e));
      ff[fibre_key(F, int(e))].push_back(int(e));
    }
    for (auto const& [k, v] : fe)
      if (ff[k].size() != v.size())
        return std::nullopt;

    UnionFind uf(E.size());
    for (std::size_t e = 0; e < E.size(); ++e) {
      for (int g : G.from(E.p[e]))
        uf.unite(int(e), E.act(g, int(e)));
      for (int h : H.into(E.w[e]))
        uf.unite(int(e), E.act_right(int(e), h));
    }
    std::vector<int> roots;
    for (std::size_t e = 0; e < E.size(); ++e)
      if (uf.find(int(e)) == int(e))
        roots.push_back(int(e));
    std::stable_sort(roots.begin(), roots.end(), [&](int a, int b) {
      return fe[fibre_key(E, a)].size() < fe[fibre_key(E, b)].size();
    });

    std::vector<int> map(E.size(), -1), inv(F.size(), -1);
    // Propagates map[e] = a through both actions; records assignments in
    // `trail` so they can be undone.
    auto propagate = [&](int e0, int a0, std::vector<int>& trail) {
      std::vector<std::pair<int, int>> stack{{e0, a0}};
      while (!stack.empty()) {
        auto [e, a] = stack.back();
        stack.pop_back();
        if (map[e] >= 0) {
          if (map[e] != a)
            return false;
          continue;
        }
        if (inv[a] >= 0 || E.p[e] != F.p[a] || E.w[e] != F.w[a])
          return false;
        map[e] = a;
        inv[a] = e;
        trail.push_back(e);
        for (int g : G.from(E.p[e]))
          stack.emplace_back(E.act(g, e), F.act(g, a));
        for (int h : H.into(E.w[e]))
          stack.emplace_back(E.act_right(e, h), F.act_right(a, h));
      }
      return true;
    };
    auto undo = [&](std::vector<int> const& trail) {
      for (int e : trail) {
        inv[map[e]] = -1;
        map[e]      = -1;
      }
    };
    auto search = [&](auto&& self, std::size_t k) -> bool {
      if (k == roots.size())
        return is_equivariant_iso(E, F, map);
      int e = roots[k];
      for (int a : ff[fibre_key(E, e)]) {
        if (inv[a] >= 0)
          continue;
        budget.tick();
        std::vector<int> trail;
        if (propagate(e, a, trail) && self(self, k + 1))
          return true;
        undo(trail);
      }
      return false;
    };
    if (search(search, 0))
      return map;
    return std::nullopt;
  }

  inline std::optional<std::vector<int>> are_isomorphic(Bibundle const& E, Bibundle const& F) {
    Budget b;
    return are_isomorphic(E, F, b);
  }

  // The inverse bibundle, after checking that E is principal on both sides
  // and that both composites are isomorphic to the unit bibundles.
  inline Bibundle invert(Bibundle const& E, Budget& budget) {
    auto k = classify_bundle(E);
    if (!k.principal)
      throw ValidationError("NotInvertible", {}, "not principal as a left bundle: " + k.reason);
    if (E.topology && !E.topology->total.is_discrete())
      throw ValidationError("NotInvertible", {}, "left anchor is not a local homeomorphism");
    Bibundle inv = swap_sides(E);
    auto     k2  = classify_bundle(inv);
    if (!k2.principal)
      throw ValidationError("NotInvertible", {}, "not principal as a right bundle: " + k2.reason);
    if (!are_isomorphic(tensor(E, inv), unit_bibundle(E.left), budget))
      throw ValidationError("NotInvertible", {}, "E ⊗ E⁻¹ is not the unit bibundle");
    if (!are_isomorphic(tensor(inv, E), unit_bibundle(E.right), budget))
      throw ValidationError("NotInvertible", {}, "E⁻¹ ⊗ E is not the unit bibundle");
    return inv;
  }

  inline Bibundle invert(Bibundle const& E) {
    Budget b;
    return invert(E, b);
  }

  // The right objects of E closed under H; throws NotInvariant otherwise.
  inline void require_invariant(FiniteGroupoid const& H, std::vector<int> const& objects) {
    std::vector<char> in(H.num_objects(), 0);
    for (int a : objects)
      in[a] = 1;
    for (std::size_t h = 0; h < H.num_morphisms(); ++h)
      if (in[H.dom(int(h))] != in[H.cod(int(h))])
        throw ValidationError("NotInvariant", {H.morphism_id(int(h))}, "a morphism leaves the subset");
  }

  struct Restriction {
    Bibundle         bundle;
    std::vector<int> element_of;  // restricted element -> element of E
  };

  // E|U: the elements over an invariant set U of right objects.
  inline Restriction restrict_with_map(Bibundle const& E, std::vector<int> U) {
    auto const& H = *E.right;
    std::sort(U.begin(), U.end());
    U.erase(std::unique(U.begin(), U.end()), U.end());
    require_invariant(H, U);
    auto sub = share(full_subgroupoid(H, U));
    std::vector<char> in(H.num_objects(), 0);
    for (int a : U)
      in[a] = 1;
    Restriction      r;
    std::vector<std::string> ids;
    for (std::size_t e = 0; e < E.size(); ++e)
      if (in[E.w[e]]) {
        r.element_of.push_back(int(e));
        ids.push_back(E.id(int(e)));
      }
    // ids keep E's order, so positions coincide with sorted indices
    Bibundle&        b = r.bundle;
    b.left             = E.left;
    b.right            = sub;
    b.total            = IdTable(ids);
    std::size_t const n = ids.size();
    std::vector<int>  local(E.size(), -1);
    for (std::size_t i = 0; i < n; ++i)
      local[r.element_of[i]] = int(i);
    std::vector<int> hmap(sub->num_morphisms());
    for (std::size_t h = 0; h < sub->num_morphisms(); ++h)
      hmap[h] = H.morphism(sub->morphism_id(int(h)));
    auto const& G = *E.left;
    b.lact.assign(G.num_morphisms() * n, -1);
    b.ract.assign(n * sub->num_morphisms(), -1);
    for (std::size_t i = 0; i < n; ++i) {
      int e = r.element_of[i];
      b.p.push_back(E.p[e]);
      b.w.push_back(sub->object(H.object_id(E.w[e])));
      for (int g : G.from(E.p[e]))
        b.lact[std::size_t(g) * n + i] = local[E.act(g, e)];
      for (std::size_t h = 0; h < sub->num_morphisms(); ++h)
        if (H.cod(hmap[h]) == E.w[e])
          b.ract[i * sub->num_morphisms() + h] = local[E.act_right(e, hmap[h])];
    }
    if (E.topology) {
      std::vector<int> base_pos;
      for (std::size_t a = 0; a < sub->num_objects(); ++a)
        base_pos.push_back(H.object(sub->object_id(int(a))));
      b.topology = BundleTopology{E.topology->total.subspace(r.element_of), E.topology->base.subspace(base_pos)};
    }
    return r;
  }

  inline Bibundle restrict_to(Bibundle const& E, std::vector<int> const& U) { return restrict_with_map(E, U).bundle; }

  // ---------------------------------------------------------------------
  // Gluing

  struct GluingPiece {
    std::vector<int> objects;  // U_i, right objects of the base groupoid
    Bibundle         bundle;   // over (G, H|U_i)
  };

  // glue[{i, j}][e] maps the element e of piece j lying over U_i ∩ U_j to an
  // element of piece i (-1 elsewhere). Missing (j, i) entries are taken as
  // inverses of (i, j); missing (i, i) entries as identities.
  using Gluing = std::map<std::pair<int, int>, std::vector<int>>;

  struct Amalgamation {
    Bibundle                      bundle;
    std::vector<std::vector<int>> inclusion;  // piece i element -> glued element
  };

  inline Amalgamation amalgamate(GroupoidRef const&              left,
                                 GroupoidRef const&              base,
                                 std::vector<GluingPiece> const& pieces,
                                 Gluing                          glue,
                                 std::optional<FiniteTopology>   base_topology = std::nullopt) {
    auto const&       H  = *base;
    auto const&       G  = *left;
    std::size_t const np = pieces.size();
    std::vector<std::vector<char>> in(np, std::vector<char>(H.num_objects(), 0));
    std::vector<char>              covered(H.num_objects(), 0);
    for (std::size_t i = 0; i < np; ++i) {
      auto const& P = pieces[i];
      for (int a : P.objects)
        in[i][a] = covered[a] = 1;
      require_invariant(H, P.objects);
      if (!same_groupoid(P.bundle.left, left))
        throw ValidationError("GroupoidMismatch", {std::to_string(i)}, "piece over a different left groupoid");
      std::vector<std::string> want;
      for (int a : P.objects)
        want.push_back(H.object_id(a));
      if (IdTable(want) != P.bundle.right->objects())
        throw ValidationError("GroupoidMismatch", {std::to_string(i)}, "piece is not over its subset");
      if (base_topology && !base_topology->is_open(P.objects))
        throw ValidationError("NotACover", {std::to_string(i)}, "piece is not open");
    }
    for (std::size_t a = 0; a < H.num_objects(); ++a)
      if (!covered[a])
        throw ValidationError("NotACover", {H.object_id(int(a))}, "object outside every piece");

    // Right object of an element of piece i, as an object of H.
    auto base_obj = [&](int i, int e) {
      auto const& B = pieces[i].bundle;
      return H.object(B.right->object_id(B.w[e]));
    };
    auto over = [&](int i, int j, int e) { return in[i][base_obj(j, e)] != 0; };

    for (std::size_t i = 0; i < np; ++i)
      for (std::size_t j = 0; j < np; ++j) {
        auto key = std::make_pair(int(i), int(j));
        if (glue.count(key))
          continue;
        std::vector<int> m(pieces[j].bundle.size(), -1);
        if (i == j) {
          for (std::size_t e = 0; e < m.size(); ++e)
            m[e] = int(e);
        } else if (auto it = glue.find({int(j), int(i)}); it != glue.end()) {
          for (std::size_t e = 0; e < it->second.size(); ++e)
            if (it->second[e] >= 0)
              m[it->second[e]] = int(e);
        } else {
          bool any = false;
          for (std::size_t e = 0; e < m.size(); ++e)
            any = any || over(int(i), int(j), int(e));
          if (any)
            throw ValidationError("BadGluing", {std::to_string(i), std::to_string(j)}, "missing gluing map");
        }
        glue[key] = std::move(m);
      }

    // Each gluing map is an equivariant bijection between the restrictions.
    for (auto const& [key, m] : glue) {
      auto [i, j]       = key;
      auto const& Ei    = pieces[i].bundle;
      auto const& Ej    = pieces[j].bundle;
      auto        fail  = [&](int e, std::string msg) {
        throw ValidationError("BadGluing", {std::to_string(i), std::to_string(j), e >= 0 ? Ej.id(e) : ""}, msg);
      };
      if (m.size() != Ej.size())
        fail(-1, "map has the wrong size");
      std::vector<char> hit(Ei.size(), 0);
      for (std::size_t e = 0; e < Ej.size(); ++e) {
        bool should = over(i, j, int(e));
        int  a      = m[e];
        if (should != (a >= 0))
          fail(int(e), "map defined off the overlap or missing");
        if (!should)
          continue;
        if (hit[a])
          fail(int(e), "map is not injective");
        hit[a] = 1;
        if (Ei.p[a] != Ej.p[e] || base_obj(i, a) != base_obj(j, int(e)))
          fail(int(e), "anchors not preserved");
        for (int g : G.from(Ej.p[e]))
          if (m[Ej.act(g, int(e))] != Ei.act(g, a))
            fail(int(e), "left action not preserved");
        for (std::size_t h = 0; h < Ej.right->num_morphisms(); ++h) {
          int r = Ej.act_right(int(e), int(h));
          if (r < 0)
            continue;
          int hi = Ei.right->morphism(Ej.right->morphism_id(int(h)));
          if (m[r] != Ei.act_right(a, hi))
            fail(int(e), "right action not preserved");
        }
      }
      for (std::size_t a = 0; a < Ei.size(); ++a)
        if (over(j, i, int(a)) && !hit[a])
          fail(-1, "map is not surjective onto the overlap");
    }
    for (std::size_t i = 0; i < np; ++i)
      for (std::size_t j = 0; j < np; ++j)
        for (std::size_t k = 0; k < np; ++k) {
          auto const& Ek = pieces[k].bundle;
          auto const& jk = glue[{int(j), int(k)}];
          auto const& ij = glue[{int(i), int(j)}];
          auto const& ik = glue[{int(i), int(k)}];
          for (std::size_t e = 0; e < Ek.size(); ++e)
            if (over(int(i), int(k), int(e)) && over(int(j), int(k), int(e)) && ij[jk[e]] != ik[e])
              throw ValidationError("CocycleViolation",
                                    {std::to_string(i), std::to_string(j), std::to_string(k), Ek.id(int(e))});
        }

    // Disjoint union, then identify (e, j) with (glue[i,j](e), i).
    std::vector<std::size_t> offset(np + 1, 0);
    for (std::size_t i = 0; i < np; ++i)
      offset[i + 1] = offset[i] + pieces[i].bundle.size();
    UnionFind uf(offset[np]);
    for (auto const& [key, m] : glue)
      for (std::size_t e = 0; e < m.size(); ++e)
        if (m[e] >= 0)
          uf.unite(int(offset[key.second] + e), int(offset[key.first] + m[e]));
    // root = least (piece, element) pair of the class
    std::vector<int>         cls(offset[np], -1);
    std::vector<int>         reps;
    std::vector<std::string> ids;
    auto piece_of = [&](std::size_t x) {
      return int(std::upper_bound(offset.begin(), offset.end(), x) - offset.begin()) - 1;
    };
    for (std::size_t x = 0; x < offset[np]; ++x)
      if (uf.find(int(x)) == int(x)) {
        int i  = piece_of(x);
        cls[x] = int(reps.size());
        reps.push_back(int(x));
        ids.push_back(pieces[i].bundle.id(int(x - offset[i])) + "@" + std::to_string(i));
      }
    Amalgamation out;
    Bibundle&    b = out.bundle;
    b.left         = left;
    b.right        = base;
    b.total        = IdTable(ids);
    std::vector<int> sorted_of(reps.size());
    for (std::size_t c = 0; c < reps.size(); ++c)
      sorted_of[c] = b.total.find(ids[c]);
    std::vector<int> glued(offset[np]);
    for (std::size_t x = 0; x < offset[np]; ++x)
      glued[x] = sorted_of[cls[uf.find(int(x))]];
    out.inclusion.resize(np);
    for (std::size_t i = 0; i < np; ++i)
      for (std::size_t e = 0; e < pieces[i].bundle.size(); ++e)
        out.inclusion[i].push_back(glued[offset[i] + e]);
    std::size_t const n = reps.size();
    b.p.assign(n, -1);
    b.w.assign(n, -1);
    b.lact.assign(G.num_morphisms() * n, -1);
    b.ract.assign(n * H.num_morphisms(), -1);
    for (std::size_t c = 0; c < n; ++c) {
      int         i  = piece_of(std::size_t(reps[c]));
      int         e  = int(std::size_t(reps[c]) - offset[i]);
      auto const& Ei = pieces[i].bundle;
      int         s  = sorted_of[c];
      b.p[s]         = Ei.p[e];
      b.w[s]         = base_obj(i, e);
      for (int g : G.from(Ei.p[e]))
        b.lact[std::size_t(g) * n + s] = glued[offset[i] + Ei.act(g, e)];
      for (std::size_t h = 0; h < Ei.right->num_morphisms(); ++h) {
        int r = Ei.act_right(e, int(h));
        if (r >= 0)
          b.ract[std::size_t(s) * H.num_morphisms() + H.morphism(Ei.right->morphism_id(int(h)))] =
              glued[offset[i] + r];
      }
    }
    bool topological = base_topology.has_value();
    for (auto const& P : pieces)
      topological = topological || P.bundle.topology.has_value();
    if (topological) {
      std::vector<std::vector<int>> hull(offset[np]);
      for (std::size_t i = 0; i < np; ++i) {
        auto const& Ei = pieces[i].bundle;
        for (std::size_t e = 0; e < Ei.size(); ++e) {
          if (Ei.topology)
            for (int y : Ei.topology->total.open_hull(int(e)))
              hull[offset[i] + e].push_back(int(offset[i]) + y);
          else
            hull[offset[i] + e] = {int(offset[i] + e)};
        }
      }
      b.topology = BundleTopology{FiniteTopology(std::move(hull)).quotient(glued, n),
                                  base_topology ? *base_topology : FiniteTopology::discrete(H.num_objects())};
    }
    out.bundle = validate_bibundle(std::move(out.bundle));
    return out;
  }

  // ---------------------------------------------------------------------
  // Sections and the functor they determine

  // The functor f: H -> G of a section s of w (s[b] lies over b): f(b) = p(s(b))
  // and f(h) is the unique g with g·s(dom h) = s(cod h)·h.
  inline Functor functor_from_section(Bibundle const& E, std::vector<int> const& s) {
    auto const& H = *E.right;
    Functor     f{E.right, E.left, {}, {}};
    for (std::size_t b = 0; b < H.num_objects(); ++b) {
      if (E.w[s[b]] != int(b))
        throw ValidationError("NotASection", {H.object_id(int(b))});
      f.obj.push_back(E.p[s[b]]);
    }
    for (std::size_t h = 0; h < H.num_morphisms(); ++h) {
      int g = divide(E, E.act_right(s[H.cod(int(h))], int(h)), s[H.dom(int(h))]);
      if (g < 0)
        throw ValidationError("NotPrincipal", {H.morphism_id(int(h))});
      f.mor.push_back(g);
    }
    return f;
  }

  // All sections of w, in lexicographic order; continuity is required when E
  // carries a topology.
  inline std::vector<std::vector<int>> sections(Bibundle const& E, std::size_t limit = 1u << 16) {
    auto const&                   H = *E.right;
    std::vector<std::vector<int>> fibres(H.num_objects());
    for (std::size_t e = 0; e < E.size(); ++e)
      fibres[E.w[e]].push_back(int(e));
    std::vector<std::vector<int>> out;
    std::vector<int>              s(H.num_objects(), -1);
    auto                          rec = [&](auto&& self, std::size_t b) -> void {
      if (out.size() >= limit)
        return;
      if (b == H.num_objects()) {
        if (E.topology && !is_continuous(s, E.topology->base, E.topology->total))
          return;
        out.push_back(s);
        return;
      }
      for (int e : fibres[b]) {
        s[b] = e;
        self(self, b + 1);
      }
    };
    rec(rec, 0);
    return out;
  }

}  // namespace groupoidal
