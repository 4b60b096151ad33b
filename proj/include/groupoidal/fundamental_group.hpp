// Fundamental groups: vertex groups for the discrete tier, edge-path
// presentations of simplicial complexes, the action-groupoid sequence for
// free regular actions, abelianization and coset enumeration.

#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "chain_complex.hpp"
#include "error.hpp"
#include "finite_group.hpp"
#include "groupoid_ops.hpp"
#include "simplicial.hpp"

namespace groupoidal {

  // Letters are signed 1-based generator indices.
  using Word = std::vector<int>;

  inline Word free_reduce(Word const& w) {
    Word out;
    for (int x : w) {
      if (!out.empty() && out.back() == -x)
        out.pop_back();
      else
        out.push_back(x);
    }
    return out;
  }

  inline Word inverse_word(Word const& w) {
    Word out;
    for (auto it = w.rbegin(); it != w.rend(); ++it)
      out.push_back(-*it);
    return out;
  }

  struct Presentation {
    std::vector<std::string> generators;
    std::vector<Word>        relators;

    bool operator==(Presentation const&) const = default;

    void check() const {
      int const n = int(generators.size());
      for (std::size_t r = 0; r < relators.size(); ++r)
        for (int x : relators[r])
          if (x == 0 || x > n || x < -n)
            throw ValidationError("BadWord", {std::to_string(r)}, "letter outside the generators");
    }
  };

  inline std::string word_to_string(Presentation const& p, Word const& w) {
    if (w.empty())
      return "1";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i)
        s += " ";
      s += p.generators[std::size_t(std::abs(w[i]) - 1)];
      if (w[i] < 0)
        s += "^-1";
    }
    return s;
  }

  // The exponent-sum matrix (generators x relators).
  inline IntMatrix exponent_matrix(std::size_t generators, std::vector<Word> const& words) {
    IntMatrix m(generators, words.size());
    for (std::size_t r = 0; r < words.size(); ++r)
      for (int x : words[r])
        m(std::size_t(std::abs(x) - 1), r) += x > 0 ? 1 : -1;
    return m;
  }

  inline AbelianInvariants abelianization(Presentation const& p) {
    p.check();
    return cokernel_invariants(exponent_matrix(p.generators.size(), p.relators), p.generators.size());
  }

  // ---------------------------------------------------------------------
  // Coset enumeration

  struct CosetIndex {
    Verdict     verdict = Verdict::inconclusive;  // yes: index is exact
    std::size_t index   = 0;
    std::size_t cosets_defined = 0;
  };

  namespace detail {
    // Relator-based coset enumeration with coincidence handling.
    class CosetTable {
     public:
      CosetTable(std::size_t gens, std::size_t cap) : _cols(2 * gens), _cap(cap) { add_row(); }

      static std::size_t col(int letter) { return std::size_t(letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1); }
      static std::size_t inv(std::size_t c) { return c ^ 1U; }

      bool live(std::size_t c) const { return _parent[c] == int(c); }
      std::size_t rows() const { return _t.size(); }
      std::size_t live_count() const {
        std::size_t n = 0;
        for (std::size_t c = 0; c < rows(); ++c)
          n += live(c);
        return n;
      }
      int entry(std::size_t c, std::size_t x) const { return _t[c][x]; }

      // false when the cap is reached
      bool define(std::size_t c, std::size_t x) {
        if (_t.size() >= _cap)
          return false;
        int n = add_row();
        set(c, x, std::size_t(n));
        return true;
      }

      bool scan_and_fill(std::size_t a, Word const& w) {
        if (w.empty())
          return true;
        std::size_t f = a, b = a;
        std::size_t i = 0, j = w.size();
        for (;;) {
          while (i < w.size() && _t[f][col(w[i])] >= 0)
            f = std::size_t(_t[f][col(w[i++])]);
          if (i == w.size()) {
            if (f != b)
              coincidence(f, b);
            return true;
          }
          while (j > i && _t[b][inv(col(w[j - 1]))] >= 0)
            b = std::size_t(_t[b][inv(col(w[--j]))]);
          if (j <= i) {
            coincidence(f, b);
            return true;
          }
          if (j == i + 1) {
            set(f, col(w[i]), b);
            return true;
          }
          if (!define(f, col(w[i])))
            return false;
        }
      }

     private:
      int add_row() {
        _t.emplace_back(_cols, -1);
        _parent.push_back(int(_t.size() - 1));
        return int(_t.size() - 1);
      }
      void set(std::size_t c, std::size_t x, std::size_t d) {
        _t[c][x]      = int(d);
        _t[d][inv(x)] = int(c);
      }
      std::size_t rep(std::size_t k) {
        std::size_t r = k;
        while (_parent[r] != int(r))
          r = std::size_t(_parent[r]);
        while (_parent[k] != int(r)) {
          std::size_t next = std::size_t(_parent[k]);
          _parent[k]       = int(r);
          k                = next;
        }
        return r;
      }
      void merge(std::size_t k, std::size_t l, std::vector<std::size_t>& queue) {
        std::size_t a = rep(k), b = rep(l);
        if (a == b)
          return;
        std::size_t lo = std::min(a, b), hi = std::max(a, b);
        _parent[hi] = int(lo);
        queue.push_back(hi);
      }
      void coincidence(std::size_t a, std::size_t b) {
        std::vector<std::size_t> queue;
        merge(a, b, queue);
        for (std::size_t q = 0; q < queue.size(); ++q) {
          std::size_t g = queue[q];
          for (std::size_t x = 0; x < _cols; ++x) {
            if (_t[g][x] < 0)
              continue;
            std::size_t d = std::size_t(_t[g][x]);
            _t[g][x]      = -1;
            if (_t[d][inv(x)] == int(g))
              _t[d][inv(x)] = -1;
            std::size_t m = rep(g), n = rep(d);
            if (_t[m][x] >= 0)
              merge(n, std::size_t(_t[m][x]), queue);
            else if (_t[n][inv(x)] >= 0)
              merge(m, std::size_t(_t[n][inv(x)]), queue);
            else {
              _t[m][x]      = int(n);
              _t[n][inv(x)] = int(m);
            }
          }
        }
      }

      std::size_t                   _cols, _cap;
      std::vector<std::vector<int>> _t;
      std::vector<int>              _parent;
    };
  }  // namespace detail

  // Index of the subgroup generated by `subgroup` in the presented group.
  // Inconclusive when more than `bound` cosets would be needed.
  inline CosetIndex coset_enumeration(Presentation const& p, std::vector<Word> const& subgroup, std::size_t bound) {
    p.check();
    if (bound < 1)
      throw ValidationError("BadParameter", {std::to_string(bound)}, "bound must be positive");
    detail::CosetTable t(p.generators.size(), bound);
    CosetIndex         out;
    auto               give_up = [&] {
      out.cosets_defined = t.rows();
      return out;
    };
    for (auto const& w : subgroup)
      if (!t.scan_and_fill(0, w))
        return give_up();
    std::size_t const cols = 2 * p.generators.size();
    for (std::size_t a = 0; a < t.rows(); ++a) {
      for (auto const& r : p.relators) {
        if (!t.live(a))
          break;
        if (!t.scan_and_fill(a, r))
          return give_up();
      }
      if (!t.live(a))
        continue;
      for (std::size_t x = 0; x < cols; ++x)
        if (t.entry(a, x) < 0 && !t.define(a, x))
          return give_up();
    }
    out.verdict        = Verdict::yes;
    out.index          = t.live_count();
    out.cosets_defined = t.rows();
    return out;
  }

  // ---------------------------------------------------------------------
  // Discrete tier

  // Paths in a finite discrete space are constant, so the fundamental group
  // at b is the vertex group.
  inline FiniteGroup pi1_discrete(FiniteGroupoid const& g, int b) { return vertex_group(g, b); }
  inline FiniteGroup pi1_discrete(FiniteGroupoid const& g, std::string const& b) { return vertex_group(g, b); }

  // f restricted to H(b, b) -> G(f b, f b) is a bijective homomorphism.
  inline bool induces_vertex_iso(Functor const& f, int b) {
    auto const& H = *f.source;
    auto const& G = *f.target;
    auto        hs = H.hom(b, b);
    auto        gs = G.hom(f.obj[b], f.obj[b]);
    std::vector<int> img;
    for (int h : hs)
      img.push_back(f.mor[h]);
    std::sort(img.begin(), img.end());
    return img == gs;  // homomorphism holds for any functor
  }

  // ---------------------------------------------------------------------
  // Edge-path presentations

  struct EdgePath {
    Presentation                    presentation;
    int                             base = -1;
    std::vector<int>                generator_of_edge;  // edge index -> generator (0-based) or -1 on the tree
    std::vector<int>                parent;             // spanning tree, -1 at the base
    std::vector<std::vector<int>>   tree_path;          // vertex path from the base
  };

  inline EdgePath edge_path(SimplicialComplex const& K, int base) {
    std::size_t const nv = K.num_vertices();
    if (base < 0 || std::size_t(base) >= nv)
      throw ValidationError("NoSuchObject", {std::to_string(base)}, "base vertex");
    std::vector<std::vector<std::pair<int, int>>> adj(nv);  // (neighbour, edge)
    for (std::size_t e = 0; e < K.count(1); ++e) {
      auto const& s = K.simplex(1, e);
      adj[std::size_t(s[0])].emplace_back(s[1], int(e));
      adj[std::size_t(s[1])].emplace_back(s[0], int(e));
    }
    EdgePath ep;
    ep.base = base;
    ep.parent.assign(nv, -1);
    ep.tree_path.assign(nv, {});
    std::vector<char> tree(K.count(1), 0), seen(nv, 0);
    std::vector<int>  queue{base};
    seen[std::size_t(base)]      = 1;
    ep.tree_path[std::size_t(base)] = {base};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      int v = queue[q];
      for (auto [u, e] : adj[std::size_t(v)])
        if (!seen[std::size_t(u)]) {
          seen[std::size_t(u)]         = 1;
          tree[std::size_t(e)]         = 1;
          ep.parent[std::size_t(u)]    = v;
          ep.tree_path[std::size_t(u)] = ep.tree_path[std::size_t(v)];
          ep.tree_path[std::size_t(u)].push_back(u);
          queue.push_back(u);
        }
    }
    if (queue.size() != nv)
      throw ValidationError("NotConnected", {K.vertices()[int(std::find(seen.begin(), seen.end(), 0) - seen.begin())]},
                            "vertex unreachable from the base");
    ep.generator_of_edge.assign(K.count(1), -1);
    for (std::size_t e = 0; e < K.count(1); ++e)
      if (!tree[e]) {
        ep.generator_of_edge[e] = int(ep.presentation.generators.size());
        ep.presentation.generators.push_back(K.label(K.simplex(1, e)));
      }
    for (std::size_t t = 0; t < K.count(2); ++t) {
      auto const& s = K.simplex(2, t);
      Word        w;
      auto        step = [&](int a, int b) {
        int e = K.find({std::min(a, b), std::max(a, b)});
        int g = ep.generator_of_edge[std::size_t(e)];
        if (g >= 0)
          w.push_back(a < b ? g + 1 : -(g + 1));
      };
      step(s[0], s[1]);
      step(s[1], s[2]);
      step(s[2], s[0]);
      if (!w.empty())
        ep.presentation.relators.push_back(w);
    }
    return ep;
  }

  inline Presentation edge_path_presentation(SimplicialComplex const& K, int base) { return edge_path(K, base).presentation; }

  // The word of a vertex path (consecutive vertices adjacent or equal).
  inline Word path_word(SimplicialComplex const& K, EdgePath const& ep, std::vector<int> const& path) {
    Word w;
    for (std::size_t i = 1; i < path.size(); ++i) {
      int a = path[i - 1], b = path[i];
      if (a == b)
        continue;
      int e = K.find({std::min(a, b), std::max(a, b)});
      if (e < 0)
        throw ValidationError("NotAPath", {K.vertices()[a], K.vertices()[b]}, "consecutive vertices are not adjacent");
      int g = ep.generator_of_edge[std::size_t(e)];
      if (g >= 0)
        w.push_back(a < b ? g + 1 : -(g + 1));
    }
    return free_reduce(w);
  }

  // The loop of generator k: tree path to one end, the edge, tree path back.
  inline std::vector<int> generator_loop(SimplicialComplex const& K, EdgePath const& ep, std::size_t k) {
    std::size_t e = std::size_t(std::find(ep.generator_of_edge.begin(), ep.generator_of_edge.end(), int(k))
                                - ep.generator_of_edge.begin());
    auto const& s    = K.simplex(1, e);
    auto        path = ep.tree_path[std::size_t(s[0])];
    auto const& back = ep.tree_path[std::size_t(s[1])];
    path.insert(path.end(), back.rbegin(), back.rend());
    return path;
  }

  // ---------------------------------------------------------------------
  // Action groupoids of free regular actions

  // 1 -> pi1(K) -> pi1(action groupoid) -> group -> 1, with the middle term
  // presented through the orbit complex (subdivided when needed).
  struct ActionPi1 {
    Presentation             groupoid;    // pi1 of the action groupoid
    Presentation             space;       // pi1 of the complex
    std::vector<Word>        inclusion;   // images of the space generators
    std::vector<int>         projection;  // group element of each groupoid generator
    bool                     subdivided = false;
    bool                     composite_trivial  = false;
    bool                     projection_onto    = false;
    CosetIndex               index;              // of the inclusion image
    std::size_t              group_order = 0;
    AbelianInvariants        abelian_cokernel;   // Ab(pi1 groupoid) / image of Ab(pi1 K)
  };

  inline ActionPi1 pi1_action_groupoid(SimplicialAction a, int base, std::size_t coset_bound = 100000) {
    require_free_regular(a);
    ActionPi1         out;
    SimplicialComplex Q;
    std::string       base_id = a.complex.vertices()[base];
    for (int round = 0;; ++round) {
      try {
        Q = quotient_complex(a);
        break;
      } catch (ValidationError const& e) {
        if (e.code() != "QuotientNotSimplicial" || round == 2)
          throw;
        a              = barycentric_subdivision(a);
        base_id        = "{" + base_id + "}";
        base           = a.complex.vertices().at(base_id);
        out.subdivided = true;
      }
    }
    auto const&        K   = a.complex;
    VertexOrbits const orb = vertex_orbits(a);
    std::vector<int>   to_q(K.num_vertices());
    for (std::size_t v = 0; v < K.num_vertices(); ++v)
      to_q[v] = Q.vertices().at(K.vertices()[orb.blocks[std::size_t(orb.orbit_of[v])].front()]);
    EdgePath const ek = edge_path(K, base);
    EdgePath const eq = edge_path(Q, to_q[std::size_t(base)]);
    out.space         = ek.presentation;
    out.groupoid      = eq.presentation;
    out.group_order   = a.group.order();
    for (std::size_t k = 0; k < ek.presentation.generators.size(); ++k) {
      std::vector<int> path;
      for (int v : generator_loop(K, ek, k))
        path.push_back(to_q[std::size_t(v)]);
      out.inclusion.push_back(path_word(Q, eq, path));
    }
    // lift each orbit-complex loop from the base; its end is base·g
    std::vector<std::vector<int>> nbrs(K.num_vertices());
    for (auto const& s : K.simplices(1)) {
      nbrs[std::size_t(s[0])].push_back(s[1]);
      nbrs[std::size_t(s[1])].push_back(s[0]);
    }
    auto lift_end = [&](std::vector<int> const& qpath) {
      int cur = base;
      for (std::size_t i = 1; i < qpath.size(); ++i) {
        if (qpath[i] == qpath[i - 1])
          continue;
        int next = -1;
        for (int u : nbrs[std::size_t(cur)])
          if (to_q[std::size_t(u)] == qpath[i])
            next = u;
        cur = next;
      }
      for (std::size_t g = 0; g < a.group.order(); ++g)
        if (a.perm[g][std::size_t(base)] == cur)
          return int(g);
      throw ValidationError("InternalError", {}, "lift did not end in the base orbit");
    };
    for (std::size_t k = 0; k < eq.presentation.generators.size(); ++k)
      out.projection.push_back(lift_end(generator_loop(Q, eq, k)));
    // inclusion then projection: the lift of a projected loop of K closes up
    out.composite_trivial = true;
    for (std::size_t k = 0; k < ek.presentation.generators.size(); ++k) {
      std::vector<int> path;
      for (int v : generator_loop(K, ek, k))
        path.push_back(to_q[std::size_t(v)]);
      out.composite_trivial = out.composite_trivial && lift_end(path) == a.group.identity();
    }
    out.projection_onto = a.group.closure(out.projection).size() == a.group.order();
    out.index           = coset_enumeration(out.groupoid, out.inclusion, coset_bound);
    IntMatrix rel       = hcat(exponent_matrix(eq.presentation.generators.size(), eq.presentation.relators),
                               exponent_matrix(eq.presentation.generators.size(), out.inclusion));
    out.abelian_cokernel = cokernel_invariants(rel, eq.presentation.generators.size());
    return out;
  }

}  // namespace groupoidal
