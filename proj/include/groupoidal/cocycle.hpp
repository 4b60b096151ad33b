// Covers of a finite base space, groupoid-valued cocycles on them, the
// principal bundle glued from a cocycle, the cocycle read off a principal
// bundle, and cohomology of cocycles (witness search).
//
// The base is discrete unless a topology is given. With a topology the
// pieces must be open and every map out of the base into the (discrete)
// groupoid must be locally constant.

#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "bibundle.hpp"
#include "builders.hpp"
#include "error.hpp"
#include "topology.hpp"

namespace groupoidal {

  struct Cover {
    IdTable                       base;
    std::vector<std::vector<int>> pieces;  // sorted point indices
    std::optional<FiniteTopology> topology;

    bool operator==(Cover const&) const = default;

    bool contains(std::size_t i, int x) const { return std::binary_search(pieces[i].begin(), pieces[i].end(), x); }

    FiniteTopology space() const { return topology ? *topology : FiniteTopology::discrete(base.size()); }
  };

  inline Cover make_cover(std::vector<std::string> base, std::vector<std::vector<std::string>> const& pieces,
                          std::optional<std::vector<std::vector<std::string>>> const& open_hulls = std::nullopt) {
    Cover c;
    c.base = IdTable(std::move(base));
    for (auto const& p : pieces) {
      std::vector<int> u;
      for (auto const& x : p)
        u.push_back(c.base.at(x, "point"));
      std::sort(u.begin(), u.end());
      u.erase(std::unique(u.begin(), u.end()), u.end());
      c.pieces.push_back(std::move(u));
    }
    if (open_hulls) {
      std::vector<std::vector<int>> hull(c.base.size());
      for (std::size_t x = 0; x < c.base.size(); ++x)
        hull[x] = {int(x)};
      // open_hulls is indexed by the order of `base` as given
      for (std::size_t k = 0; k < open_hulls->size(); ++k) {
        auto const& h = (*open_hulls)[k];
        if (h.empty())
          continue;
        int x = c.base.at(h.front(), "point");
        for (auto const& y : h)
          hull[x].push_back(c.base.at(y, "point"));
      }
      c.topology = FiniteTopology(std::move(hull));
    }
    return c;
  }

  inline void check_cover(Cover const& c) {
    std::vector<char> hit(c.base.size(), 0);
    for (std::size_t i = 0; i < c.pieces.size(); ++i) {
      for (int x : c.pieces[i])
        hit[x] = 1;
      if (c.topology && !c.topology->is_open(c.pieces[i]))
        throw ValidationError("NotACover", {std::to_string(i)}, "piece is not open");
    }
    for (std::size_t x = 0; x < c.base.size(); ++x)
      if (!hit[x])
        throw ValidationError("NotACover", {c.base[int(x)]}, "point outside every piece");
  }

  // The four-point circle: a, b open points; c, d with neighbourhoods
  // {a,b,c} and {a,b,d}. Covered by those two neighbourhoods, which overlap
  // in {a, b}.
  inline Cover four_point_circle() {
    return make_cover({"a", "b", "c", "d"}, {{"a", "b", "c"}, {"a", "b", "d"}},
                      std::vector<std::vector<std::string>>{{"a"}, {"b"}, {"c", "a", "b"}, {"d", "a", "b"}});
  }

  struct Cocycle {
    Cover            cover;
    GroupoidRef      target;
    std::vector<int> maps;  // maps[(i * pieces + j) * |X| + x], -1 off U_i ∩ U_j

    std::size_t pieces() const { return cover.pieces.size(); }
    int         at(std::size_t i, std::size_t j, int x) const {
      return maps[(i * pieces() + j) * cover.base.size() + std::size_t(x)];
    }
    int& at(std::size_t i, std::size_t j, int x) { return maps[(i * pieces() + j) * cover.base.size() + std::size_t(x)]; }

    // The object c_ii(x) is the unit at.
    int object(std::size_t i, int x) const { return target->dom(at(i, i, x)); }

    bool operator==(Cocycle const& o) const {
      return cover == o.cover && same_groupoid(target, o.target) && maps == o.maps;
    }
  };

  inline Cocycle empty_cocycle(Cover cover, GroupoidRef target) {
    Cocycle c{std::move(cover), std::move(target), {}};
    c.maps.assign(c.pieces() * c.pieces() * c.cover.base.size(), -1);
    return c;
  }

  // Every c_ij(x) = 1_a.
  inline Cocycle constant_cocycle(Cover cover, GroupoidRef target, int a) {
    Cocycle c = empty_cocycle(std::move(cover), std::move(target));
    for (std::size_t i = 0; i < c.pieces(); ++i)
      for (std::size_t j = 0; j < c.pieces(); ++j)
        for (std::size_t x = 0; x < c.cover.base.size(); ++x)
          if (c.cover.contains(i, int(x)) && c.cover.contains(j, int(x)))
            c.at(i, j, int(x)) = c.target->unit(a);
    return c;
  }

  inline std::vector<Violation> check_cocycle(Cocycle const& c) {
    std::vector<Violation> vs;
    auto add = [&](std::string code, std::vector<std::string> ids, std::string msg = {}) {
      if (vs.size() < detail::max_reported_violations)
        vs.push_back({std::move(code), std::move(ids), std::move(msg)});
    };
    auto const&       G  = *c.target;
    std::size_t const np = c.pieces(), nx = c.cover.base.size();
    auto              X  = [&](int x) { return c.cover.base[x]; };
    auto              I  = [](std::size_t i) { return std::to_string(i); };
    if (c.maps.size() != np * np * nx)
      return {{"DomainMismatch", {}, "table size"}};
    for (std::size_t i = 0; i < np; ++i)
      for (std::size_t j = 0; j < np; ++j)
        for (std::size_t x = 0; x < nx; ++x) {
          bool on = c.cover.contains(i, int(x)) && c.cover.contains(j, int(x));
          if (on != (c.at(i, j, int(x)) >= 0))
            add("DomainMismatch", {I(i), I(j), X(int(x))}, on ? "missing value on the overlap" : "value off the overlap");
        }
    if (!vs.empty())
      return vs;
    for (std::size_t i = 0; i < np; ++i)
      for (int x : c.cover.pieces[i])
        if (!G.is_unit(c.at(i, i, x)))
          add("NotUnit", {I(i), X(x)});
    if (!vs.empty())
      return vs;
    for (std::size_t i = 0; i < np; ++i)
      for (std::size_t j = 0; j < np; ++j)
        for (std::size_t x = 0; x < nx; ++x) {
          int g = c.at(i, j, int(x));
          if (g < 0)
            continue;
          if (G.dom(g) != c.object(j, int(x)) || G.cod(g) != c.object(i, int(x)))
            add("DomainMismatch", {I(i), I(j), X(int(x))}, "value does not run from c_jj to c_ii");
        }
    if (!vs.empty())
      return vs;
    for (std::size_t i = 0; i < np; ++i)
      for (std::size_t j = 0; j < np; ++j)
        for (std::size_t k = 0; k < np; ++k)
          for (std::size_t x = 0; x < nx; ++x) {
            int ij = c.at(i, j, int(x)), jk = c.at(j, k, int(x)), ik = c.at(i, k, int(x));
            if (ij >= 0 && jk >= 0 && ik >= 0 && G.comp(ij, jk) != ik)
              add("CocycleFail", {I(i), I(j), I(k), X(int(x))});
          }
    if (c.cover.topology) {
      std::vector<int> f(nx);
      for (std::size_t i = 0; i < np; ++i)
        for (std::size_t j = 0; j < np; ++j) {
          for (std::size_t x = 0; x < nx; ++x)
            f[x] = c.at(i, j, int(x));
          if (!is_locally_constant(f, *c.cover.topology))
            add("NotContinuous", {I(i), I(j)});
        }
    }
    return vs;
  }

  inline Cocycle validate_cocycle(Cocycle c) {
    check_cover(c.cover);
    auto vs = check_cocycle(c);
    if (!vs.empty())
      throw ValidationError(std::move(vs));
    return c;
  }

  // The base as a groupoid with only units.
  inline GroupoidRef base_groupoid(Cover const& c) { return share(space_groupoid(c.base.ids())); }

  // The principal bundle glued from a cocycle: triples (g, x, i) with
  // dom g = c_ii(x), where (g, x, i) ~ (g∘c_ij(x), x, j). Elements are named
  // "[g|x|i]" after the member in the least piece.
  inline Bibundle sigma(Cocycle const& c, GroupoidRef base = nullptr) {
    validate_cocycle(c);
    auto const&       G  = *c.target;
    std::size_t const nx = c.cover.base.size();
    if (!base)
      base = base_groupoid(c.cover);
    struct Triple {
      int g, x, i;
    };
    std::vector<Triple>       triples;
    std::vector<std::vector<int>> at(c.pieces(), std::vector<int>(G.num_morphisms() * nx, -1));
    for (std::size_t i = 0; i < c.pieces(); ++i)
      for (int x : c.cover.pieces[i])
        for (int g : G.from(c.object(i, x))) {
          at[i][std::size_t(g) * nx + x] = int(triples.size());
          triples.push_back({g, x, int(i)});
        }
    UnionFind uf(triples.size());
    for (std::size_t t = 0; t < triples.size(); ++t) {
      auto [g, x, i] = triples[t];
      for (std::size_t j = 0; j < c.pieces(); ++j)
        if (c.cover.contains(j, x))
          uf.unite(int(t), at[j][std::size_t(G.comp(g, c.at(std::size_t(i), j, x))) * nx + x]);
    }
    // representative: member in the least piece (triples are built piece-major)
    std::vector<int>         cls(triples.size(), -1), reps;
    std::vector<std::string> ids;
    for (std::size_t t = 0; t < triples.size(); ++t)
      if (uf.find(int(t)) == int(t)) {
        cls[t] = int(reps.size());
        reps.push_back(int(t));
        ids.push_back("[" + G.morphism_id(triples[t].g) + "|" + c.cover.base[triples[t].x] + "|"
                      + std::to_string(triples[t].i) + "]");
      }
    Bibundle b;
    b.left  = c.target;
    b.right = base;
    b.total = IdTable(ids);
    std::vector<int> sorted_of(reps.size());
    for (std::size_t k = 0; k < reps.size(); ++k)
      sorted_of[k] = b.total.find(ids[k]);
    std::vector<int> glued(triples.size());
    for (std::size_t t = 0; t < triples.size(); ++t)
      glued[t] = sorted_of[cls[uf.find(int(t))]];
    std::size_t const n = reps.size();
    auto const&       H = *base;
    b.p.assign(n, -1);
    b.w.assign(n, -1);
    b.lact.assign(G.num_morphisms() * n, -1);
    b.ract.assign(n * H.num_morphisms(), -1);
    for (std::size_t k = 0; k < n; ++k) {
      auto [g, x, i] = triples[reps[k]];
      int s          = sorted_of[k];
      b.p[s]         = G.cod(g);
      b.w[s]         = H.object(c.cover.base[x]);
      for (int g2 : G.from(G.cod(g)))
        b.lact[std::size_t(g2) * n + s] = glued[at[i][std::size_t(G.comp(g2, g)) * nx + x]];
      for (int h : H.into(b.w[s]))
        b.ract[std::size_t(s) * H.num_morphisms() + h] = s;
    }
    if (c.cover.topology) {
      auto const&                   T = *c.cover.topology;
      std::vector<std::vector<int>> hull(triples.size());
      for (std::size_t t = 0; t < triples.size(); ++t) {
        auto [g, x, i] = triples[t];
        for (int y : T.open_hull(x))
          if (c.cover.contains(std::size_t(i), y))
            hull[t].push_back(at[i][std::size_t(g) * nx + y]);
      }
      std::vector<int> base_pos;
      for (std::size_t a = 0; a < H.num_objects(); ++a)
        base_pos.push_back(c.cover.base.at(H.object_id(int(a))));
      b.topology = BundleTopology{FiniteTopology(std::move(hull)).quotient(glued, n), T.subspace(base_pos)};
    }
    return validate_bibundle(std::move(b));
  }

  struct ExtractedCocycle {
    Cocycle                       cocycle;
    std::vector<std::vector<int>> sections;  // sections[i][x], element over x, -1 off the piece
  };

  // The cocycle of a principal bundle over a space, on the cover by minimal
  // open neighbourhoods (singletons when discrete). The local section over
  // U_x starts at the least element over x.
  inline ExtractedCocycle extract_cocycle(Bibundle const& E) {
    auto const& H = *E.right;
    for (std::size_t h = 0; h < H.num_morphisms(); ++h)
      if (!H.is_unit(int(h)))
        throw ValidationError("NotASpace", {H.morphism_id(int(h))}, "right groupoid must have only units");
    require_principal(E);
    std::size_t const nx = H.num_objects();
    FiniteTopology const base = E.topology ? E.topology->base : FiniteTopology::discrete(nx);
    FiniteTopology const tot  = E.topology ? E.topology->total : FiniteTopology::discrete(E.size());
    std::vector<std::vector<std::string>> pieces, hulls;
    for (std::size_t x = 0; x < nx; ++x) {
      std::vector<std::string> u;
      for (int y : base.open_hull(int(x)))
        u.push_back(H.object_id(y));
      pieces.push_back(u);
      std::vector<std::string> h{H.object_id(int(x))};
      h.insert(h.end(), u.begin(), u.end());
      hulls.push_back(h);
    }
    ExtractedCocycle out;
    Cover cover = make_cover(H.objects().ids(), pieces,
                             E.topology ? std::optional(hulls) : std::nullopt);
    out.cocycle = empty_cocycle(cover, E.left);
    out.sections.assign(nx, std::vector<int>(nx, -1));
    for (std::size_t x = 0; x < nx; ++x) {
      int e0 = -1;
      for (std::size_t e = 0; e < E.size() && e0 < 0; ++e)
        if (E.w[e] == int(x))
          e0 = int(e);
      for (int e : tot.open_hull(e0))
        out.sections[x][E.w[e]] = e;
    }
    for (std::size_t i = 0; i < nx; ++i)
      for (std::size_t j = 0; j < nx; ++j)
        for (std::size_t x = 0; x < nx; ++x) {
          int ti = out.sections[i][x], tj = out.sections[j][x];
          if (ti >= 0 && tj >= 0)
            out.cocycle.at(i, j, int(x)) = divide(E, ti, tj);
        }
    validate_cocycle(out.cocycle);
    return out;
  }

  // c restricted along a refinement tau (piece k of `finer` lies in piece
  // tau[k] of c's cover): c'_kl(x) = c_{tau(k) tau(l)}(x).
  inline Cocycle refine(Cocycle const& c, Cover const& finer, std::vector<int> const& tau) {
    if (!(finer.base == c.cover.base))
      throw ValidationError("CoverMismatch", {}, "different base spaces");
    for (std::size_t k = 0; k < finer.pieces.size(); ++k) {
      auto const& U = c.cover.pieces[std::size_t(tau[k])];
      if (!std::includes(U.begin(), U.end(), finer.pieces[k].begin(), finer.pieces[k].end()))
        throw ValidationError("CoverMismatch", {std::to_string(k)}, "piece is not inside its image");
    }
    Cocycle r = empty_cocycle(finer, c.target);
    for (std::size_t k = 0; k < finer.pieces.size(); ++k)
      for (std::size_t l = 0; l < finer.pieces.size(); ++l)
        for (std::size_t x = 0; x < finer.base.size(); ++x)
          if (finer.contains(k, int(x)) && finer.contains(l, int(x)))
            r.at(k, l, int(x)) = c.at(std::size_t(tau[k]), std::size_t(tau[l]), int(x));
    return r;
  }

  // Every refinement map of `finer` into c's cover, in lexicographic order.
  inline std::vector<std::vector<int>> refinement_maps(Cover const& coarse, Cover const& finer) {
    std::vector<std::vector<int>> choices(finer.pieces.size());
    for (std::size_t k = 0; k < finer.pieces.size(); ++k)
      for (std::size_t i = 0; i < coarse.pieces.size(); ++i)
        if (std::includes(coarse.pieces[i].begin(), coarse.pieces[i].end(), finer.pieces[k].begin(),
                          finer.pieces[k].end()))
          choices[k].push_back(int(i));
    std::vector<std::vector<int>> out;
    std::vector<int>              cur(finer.pieces.size());
    auto                          rec = [&](auto&& self, std::size_t k) -> void {
      if (k == cur.size()) {
        out.push_back(cur);
        return;
      }
      for (int i : choices[k]) {
        cur[k] = i;
        self(self, k + 1);
      }
    };
    rec(rec, 0);
    return out;
  }

  // A family b_i(x) with dom b_i = c_ii, cod b_i = c'_ii and
  // c'_ij ∘ b_j = b_i ∘ c_ij. Indexed like `Cocycle::maps` restricted to i == j.
  using Intertwiner = std::vector<std::vector<int>>;  // [i][x], -1 off U_i

  inline bool is_intertwiner(Cocycle const& c, Cocycle const& c2, Intertwiner const& b) {
    auto const& G = *c.target;
    for (std::size_t i = 0; i < c.pieces(); ++i)
      for (int x : c.cover.pieces[i]) {
        int v = b[i][std::size_t(x)];
        if (v < 0 || G.dom(v) != c.object(i, x) || G.cod(v) != c2.object(i, x))
          return false;
        for (std::size_t j = 0; j < c.pieces(); ++j)
          if (c.cover.contains(j, x) && G.comp(c2.at(i, j, x), b[j][std::size_t(x)]) != G.comp(v, c.at(i, j, x)))
            return false;
      }
    if (c.cover.topology) {
      for (auto const& row : b)
        if (!is_locally_constant(row, *c.cover.topology))
          return false;
    }
    return true;
  }

  // Two refinements of the same cocycle are intertwined by c_{upsilon(k) tau(k)}.
  inline Intertwiner refinement_intertwiner(Cocycle const& c, Cover const& finer, std::vector<int> const& tau,
                                            std::vector<int> const& upsilon) {
    Intertwiner b(finer.pieces.size(), std::vector<int>(finer.base.size(), -1));
    for (std::size_t k = 0; k < finer.pieces.size(); ++k)
      for (int x : finer.pieces[k])
        b[k][std::size_t(x)] = c.at(std::size_t(upsilon[k]), std::size_t(tau[k]), x);
    return b;
  }

  constexpr std::size_t cohomologous_cap = 24;

  // Searches for an intertwiner from c to c2. Values at a point determine
  // the values on all pieces through it, and continuity forces equal values
  // along neighbourhoods, so one choice is made per linked class.
  inline std::optional<Intertwiner> cohomologous(Cocycle const& c, Cocycle const& c2, Budget& budget) {
    if (!(c.cover == c2.cover))
      throw ValidationError("CoverMismatch", {}, "cocycles on different covers");
    if (!same_groupoid(c.target, c2.target))
      throw ValidationError("GroupoidMismatch", {}, "cocycles valued in different groupoids");
    validate_cocycle(c);
    validate_cocycle(c2);
    std::size_t const np = c.pieces(), nx = c.cover.base.size();
    if (np * nx > cohomologous_cap)
      throw ValidationError("TooLarge", {std::to_string(np * nx)},
                            "pieces x points exceeds " + std::to_string(cohomologous_cap));
    auto const&          G   = *c.target;
    FiniteTopology const top = c.cover.space();
    Intertwiner          b(np, std::vector<int>(nx, -1));

    auto assign = [&](std::size_t i0, int x0, int v0, std::vector<std::pair<std::size_t, int>>& trail) {
      std::vector<std::tuple<std::size_t, int, int>> stack{{i0, x0, v0}};
      while (!stack.empty()) {
        auto [i, x, v] = stack.back();
        stack.pop_back();
        int& slot = b[i][std::size_t(x)];
        if (slot >= 0) {
          if (slot != v)
            return false;
          continue;
        }
        if (G.dom(v) != c.object(i, x) || G.cod(v) != c2.object(i, x))
          return false;
        slot = v;
        trail.emplace_back(i, x);
        for (std::size_t j = 0; j < np; ++j)
          if (j != i && c.cover.contains(j, x))
            stack.emplace_back(j, x, G.comp(c2.at(j, i, x), G.comp(v, c.at(i, j, x))));
        for (int y : c.cover.pieces[i]) {
          auto const& uy = top.open_hull(y);
          auto const& ux = top.open_hull(x);
          if (y != x && (std::binary_search(uy.begin(), uy.end(), x) || std::binary_search(ux.begin(), ux.end(), y)))
            stack.emplace_back(i, y, v);
        }
      }
      return true;
    };
    std::vector<std::pair<std::size_t, int>> vars;
    for (std::size_t i = 0; i < np; ++i)
      for (int x : c.cover.pieces[i])
        vars.emplace_back(i, x);
    auto search = [&](auto&& self, std::size_t k) -> bool {
      while (k < vars.size() && b[vars[k].first][std::size_t(vars[k].second)] >= 0)
        ++k;
      if (k == vars.size())
        return is_intertwiner(c, c2, b);
      auto [i, x] = vars[k];
      for (int v : G.hom(c.object(i, x), c2.object(i, x))) {
        budget.tick();
        std::vector<std::pair<std::size_t, int>> trail;
        if (assign(i, x, v, trail) && self(self, k + 1))
          return true;
        for (auto [ti, tx] : trail)
          b[ti][std::size_t(tx)] = -1;
      }
      return false;
    };
    if (search(search, 0))
      return b;
    return std::nullopt;
  }

  inline std::optional<Intertwiner> cohomologous(Cocycle const& c, Cocycle const& c2) {
    Budget b;
    return cohomologous(c, c2, b);
  }

  // The bundle map Σ(c2) -> Σ(c) of an intertwiner b from c to c2:
  // [g, x, i] -> [g∘b_i(x), x, i].
  inline std::vector<int> sigma_map(Cocycle const& c, Bibundle const& sc, Cocycle const& c2, Bibundle const& sc2,
                                    Intertwiner const& b) {
    auto const&      G = *c.target;
    std::vector<int> map(sc2.size(), -1);
    // Locate each class of Σ(c2) by (g, x, i) parsed from its representative id.
    auto find = [&](Bibundle const& s, Cocycle const& cc, int g, int x, std::size_t i) {
      // move to the least piece containing x
      std::size_t i0 = 0;
      while (!cc.cover.contains(i0, x))
        ++i0;
      int g0 = G.comp(g, cc.at(i, i0, x));
      return s.total.at("[" + G.morphism_id(g0) + "|" + cc.cover.base[x] + "|" + std::to_string(i0) + "]");
    };
    for (std::size_t i = 0; i < c2.pieces(); ++i)
      for (int x : c2.cover.pieces[i])
        for (int g : G.from(c2.object(i, x))) {
          int src  = find(sc2, c2, g, x, i);
          int tgt  = find(sc, c, G.comp(g, b[i][std::size_t(x)]), x, i);
          map[src] = tgt;
        }
    return map;
  }

}  // namespace groupoidal
