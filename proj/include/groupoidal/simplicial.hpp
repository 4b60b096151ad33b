// Finite simplicial complexes, simplicial group actions, quotient complexes
// and barycentric subdivision.

#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "builders.hpp"
#include "chain_complex.hpp"
#include "error.hpp"
#include "finite_group.hpp"
#include "ids.hpp"

namespace groupoidal {

  using Simplex = std::vector<int>;  // ascending vertex indices

  class SimplicialComplex {
   public:
    SimplicialComplex() = default;

    // Closes the facets under faces. Vertices not in any facet are kept as
    // isolated points.
    SimplicialComplex(std::vector<std::string> vertices, std::vector<std::vector<std::string>> const& facets)
        : _vertices(std::move(vertices)) {
      std::vector<Simplex> fs;
      for (auto const& f : facets) {
        Simplex s;
        for (auto const& v : f)
          s.push_back(_vertices.at(v, "vertex"));
        fs.push_back(std::move(s));
      }
      build(fs);
    }

    SimplicialComplex(IdTable vertices, std::vector<Simplex> const& facets) : _vertices(std::move(vertices)) {
      build(facets);
    }

    std::size_t    num_vertices() const noexcept { return _vertices.size(); }
    IdTable const& vertices() const noexcept { return _vertices; }
    int            dimension() const noexcept { return int(_simplices.size()) - 1; }

    std::size_t count(std::size_t n) const { return n < _simplices.size() ? _simplices[n].size() : 0; }
    Simplex const& simplex(std::size_t n, std::size_t i) const { return _simplices[n][i]; }
    std::vector<Simplex> const& simplices(std::size_t n) const {
      static std::vector<Simplex> const none;
      return n < _simplices.size() ? _simplices[n] : none;
    }

    // Index of a simplex (ascending vertices) of its dimension, or -1.
    int find(Simplex const& s) const {
      if (s.empty() || s.size() > _simplices.size())
        return -1;
      auto it = _index[s.size() - 1].find(s);
      return it == _index[s.size() - 1].end() ? -1 : it->second;
    }

    // Simplices not a face of a larger one.
    std::vector<Simplex> facets() const {
      std::vector<Simplex> out;
      for (std::size_t n = 0; n < _simplices.size(); ++n)
        for (auto const& s : _simplices[n]) {
          bool maximal = true;
          if (n + 1 < _simplices.size())
            for (auto const& t : _simplices[n + 1])
              if (std::includes(t.begin(), t.end(), s.begin(), s.end())) {
                maximal = false;
                break;
              }
          if (maximal)
            out.push_back(s);
        }
      return out;
    }

    std::string label(Simplex const& s) const {
      std::vector<std::string> parts;
      for (int v : s)
        parts.push_back(_vertices[v]);
      return "{" + join(parts, ",") + "}";
    }

    // Full subcomplex on a set of vertices (indices); vertex ids are kept.
    SimplicialComplex full_subcomplex(std::vector<int> const& vs) const {
      std::vector<int> local(num_vertices(), -1);
      std::vector<std::string> ids;
      std::vector<int>         sorted = vs;
      std::sort(sorted.begin(), sorted.end());
      sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
      for (int v : sorted) {
        local[v] = int(ids.size());
        ids.push_back(_vertices[v]);
      }
      std::vector<Simplex> fs;
      for (auto const& layer : _simplices)
        for (auto const& s : layer) {
          Simplex t;
          for (int v : s)
            if (local[v] >= 0)
              t.push_back(local[v]);
          if (t.size() == s.size())
            fs.push_back(t);
        }
      return SimplicialComplex(IdTable(ids), fs);
    }

    // Simplicial chain complex with ascending-vertex orientation, truncated
    // at degree `top` (zero groups above the dimension).
    PresentedComplex chain_complex(std::size_t top) const {
      std::vector<std::size_t> gens;
      std::vector<IntMatrix>   d;
      for (std::size_t n = 0; n <= top; ++n)
        gens.push_back(count(n));
      d.emplace_back(0, gens[0]);
      for (std::size_t n = 1; n <= top; ++n)
        d.push_back(boundary(n));
      return PresentedComplex::free(gens, d);
    }

    IntMatrix boundary(std::size_t n) const {
      IntMatrix b(count(n - 1), count(n));
      for (std::size_t j = 0; j < count(n); ++j) {
        Simplex const& s = _simplices[n][j];
        for (std::size_t i = 0; i < s.size(); ++i) {
          Simplex face = s;
          face.erase(face.begin() + long(i));
          b(std::size_t(find(face)), j) += (i % 2 == 0) ? 1 : -1;
        }
      }
      return b;
    }

    bool operator==(SimplicialComplex const& o) const {
      return _vertices == o._vertices && _simplices == o._simplices;
    }

   private:
    void build(std::vector<Simplex> const& facets) {
      std::vector<std::vector<Simplex>> layers;
      auto add = [&](Simplex s) {
        if (layers.size() < s.size())
          layers.resize(s.size());
        layers[s.size() - 1].push_back(std::move(s));
      };
      for (std::size_t v = 0; v < num_vertices(); ++v)
        add({int(v)});
      for (auto f : facets) {
        std::sort(f.begin(), f.end());
        if (std::adjacent_find(f.begin(), f.end()) != f.end() || f.empty())
          throw SchemaError("facet with repeated or no vertices");
        std::size_t const k = f.size();
        if (k > 20)
          throw SchemaError("facet dimension too large");
        for (unsigned long mask = 1; mask < (1ul << k); ++mask) {
          Simplex s;
          for (std::size_t i = 0; i < k; ++i)
            if (mask & (1ul << i))
              s.push_back(f[i]);
          add(std::move(s));
        }
      }
      for (auto& layer : layers) {
        std::sort(layer.begin(), layer.end());
        layer.erase(std::unique(layer.begin(), layer.end()), layer.end());
      }
      _simplices = std::move(layers);
      _index.assign(_simplices.size(), {});
      for (std::size_t n = 0; n < _simplices.size(); ++n)
        for (std::size_t i = 0; i < _simplices[n].size(); ++i)
          _index[n][_simplices[n][i]] = int(i);
    }

    IdTable                               _vertices;
    std::vector<std::vector<Simplex>>     _simplices;
    std::vector<std::map<Simplex, int>>   _index;
  };

  // A finite group acting on the right on a complex through vertex
  // permutations: perm[g][v] = v·g.
  struct SimplicialAction {
    SimplicialComplex             complex;
    FiniteGroup                   group;
    std::vector<std::vector<int>> perm;

    // Image of a simplex under g, as (index of the image, orientation sign).
    std::pair<int, int> act(std::size_t n, std::size_t i, int g) const {
      Simplex const& s = complex.simplex(n, i);
      Simplex        t;
      for (int v : s)
        t.push_back(perm[g][v]);
      // sign of the permutation sorting t
      int sign = 1;
      for (std::size_t a = 0; a < t.size(); ++a)
        for (std::size_t b = a + 1; b < t.size(); ++b)
          if (t[a] > t[b])
            sign = -sign;
      std::sort(t.begin(), t.end());
      return {complex.find(t), sign};
    }
  };

  // Closes generator permutations into a group; elements are named by their
  // shortest word in the generators a, b, c, ... ("e" for the identity).
  inline SimplicialAction make_action(SimplicialComplex complex, std::vector<std::vector<int>> const& generators) {
    std::size_t const nv = complex.num_vertices();
    std::vector<int>  ident(nv);
    for (std::size_t v = 0; v < nv; ++v)
      ident[v] = int(v);
    for (auto const& g : generators) {
      std::vector<int> sorted = g;
      std::sort(sorted.begin(), sorted.end());
      if (g.size() != nv || sorted != ident)
        throw ValidationError("BadAction", {}, "generator is not a vertex permutation");
    }
    std::vector<std::vector<int>>       elems{ident};
    std::vector<std::string>            names{"e"};
    std::map<std::vector<int>, int>     index{{ident, 0}};
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (std::size_t k = 0; k < generators.size(); ++k) {
        std::vector<int> p(nv);
        for (std::size_t v = 0; v < nv; ++v)
          p[v] = generators[k][elems[i][v]];  // first elems[i], then generator k
        if (index.emplace(p, int(elems.size())).second) {
          elems.push_back(p);
          std::string nm = names[i] == "e" ? "" : names[i];
          names.push_back(nm + char('a' + k));
        }
      }
    std::size_t const n = elems.size();
    std::vector<int>  mult(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        std::vector<int> p(nv);
        for (std::size_t v = 0; v < nv; ++v)
          p[v] = elems[b][elems[a][v]];
        mult[a * n + b] = index.at(p);
      }
    SimplicialAction act{std::move(complex), FiniteGroup(names, mult), elems};
    for (std::size_t d = 0; d <= std::size_t(std::max(act.complex.dimension(), 0)); ++d)
      for (std::size_t i = 0; i < act.complex.count(d); ++i)
        for (std::size_t g = 0; g < n; ++g)
          if (act.act(d, i, int(g)).first < 0)
            throw ValidationError("BadAction", {act.complex.label(act.complex.simplex(d, i))},
                                  "image of a simplex is not a simplex");
    return act;
  }

  // Free on vertices and no simplex is mapped onto itself by a non-identity
  // element. Throws ValidationError("NotFreeRegular").
  inline void require_free_regular(SimplicialAction const& a) {
    auto const& K = a.complex;
    for (std::size_t d = 0; d <= std::size_t(std::max(K.dimension(), 0)); ++d)
      for (std::size_t i = 0; i < K.count(d); ++i)
        for (std::size_t g = 0; g < a.group.order(); ++g)
          if (int(g) != a.group.identity() && a.act(d, i, int(g)).first == int(i))
            throw ValidationError("NotFreeRegular", {K.label(K.simplex(d, i)), a.group.name(int(g))},
                                  "a non-identity element fixes a simplex");
  }

  // Z/k rotating the cycle on k*m vertices by m steps; the quotient is the
  // m-cycle.
  inline SimplicialAction rotation_action(int k, int m) {
    if (k < 1 || m < 1 || k * m < 3)
      throw ValidationError("BadParameter", {std::to_string(k), std::to_string(m)}, "need k, m >= 1 and k*m >= 3");
    int const                             n = k * m;
    std::vector<std::string>              vs;
    std::vector<std::vector<std::string>> fs;
    for (int i = 0; i < n; ++i)
      vs.push_back("v" + padded(std::size_t(i), std::size_t(n)));
    for (int i = 0; i < n; ++i)
      fs.push_back({vs[i], vs[(i + 1) % n]});
    SimplicialComplex K(vs, fs);
    std::vector<int>  rot(n);
    for (int i = 0; i < n; ++i)
      rot[K.vertices().at(vs[i])] = K.vertices().at(vs[(i + m) % n]);
    return make_action(std::move(K), {rot});
  }

  // The cycle on n vertices, ids as in rotation_action.
  inline SimplicialComplex cycle_complex(int n) {
    std::vector<std::string>              vs;
    std::vector<std::vector<std::string>> fs;
    for (int i = 0; i < n; ++i)
      vs.push_back("v" + padded(std::size_t(i), std::size_t(n)));
    for (int i = 0; i < n; ++i)
      fs.push_back({vs[i], vs[(i + 1) % n]});
    return SimplicialComplex(vs, fs);
  }

  struct VertexOrbits {
    std::vector<std::vector<int>> blocks;  // ordered by least vertex
    std::vector<int>              orbit_of;
  };

  inline VertexOrbits vertex_orbits(SimplicialAction const& a) {
    VertexOrbits o;
    o.orbit_of.assign(a.complex.num_vertices(), -1);
    for (std::size_t v = 0; v < a.complex.num_vertices(); ++v) {
      if (o.orbit_of[v] >= 0)
        continue;
      std::vector<int> block;
      for (auto const& p : a.perm)
        block.push_back(p[v]);
      std::sort(block.begin(), block.end());
      block.erase(std::unique(block.begin(), block.end()), block.end());
      for (int u : block)
        o.orbit_of[u] = int(o.blocks.size());
      o.blocks.push_back(std::move(block));
    }
    return o;
  }

  // The action groupoid of the vertex action (objects = vertices).
  inline FiniteGroupoid vertex_action_groupoid(SimplicialAction const& a) {
    std::size_t const n = a.group.order();
    std::vector<int>  act(a.complex.num_vertices() * n);
    for (std::size_t v = 0; v < a.complex.num_vertices(); ++v)
      for (std::size_t g = 0; g < n; ++g)
        act[v * n + g] = a.perm[g][v];
    return action_groupoid(a.group, a.complex.vertices().ids(), act);
  }

  // The orbit complex K/Γ built from vertex orbits (each named after its least
  // vertex). Throws ValidationError("QuotientNotSimplicial") when two
  // vertices of a simplex share an orbit or two simplex orbits have the same
  // vertex orbits; a barycentric subdivision fixes both.
  inline SimplicialComplex quotient_complex(SimplicialAction const& a) {
    auto const&              K = a.complex;
    VertexOrbits const       o = vertex_orbits(a);
    std::vector<std::string> ids;
    for (auto const& b : o.blocks)
      ids.push_back(K.vertices()[b.front()]);
    std::map<Simplex, std::size_t> seen;  // image -> simplex-orbit representative
    std::vector<std::vector<std::string>> facets;
    for (std::size_t d = 0; d <= std::size_t(std::max(K.dimension(), 0)); ++d)
      for (std::size_t i = 0; i < K.count(d); ++i) {
        std::vector<std::string> img;
        Simplex                  orbs;
        for (int v : K.simplex(d, i))
          orbs.push_back(o.orbit_of[v]);
        std::sort(orbs.begin(), orbs.end());
        if (std::adjacent_find(orbs.begin(), orbs.end()) != orbs.end())
          throw ValidationError("QuotientNotSimplicial", {K.label(K.simplex(d, i))}, "two vertices share an orbit");
        std::size_t rep = i;
        for (std::size_t g = 0; g < a.group.order(); ++g)
          rep = std::min(rep, std::size_t(a.act(d, i, int(g)).first));
        auto [it, fresh] = seen.emplace(orbs, rep);
        if (!fresh && it->second != rep)
          throw ValidationError("QuotientNotSimplicial", {K.label(K.simplex(d, i))},
                                "two simplex orbits have the same image");
        for (int b : orbs)
          img.push_back(ids[b]);
        facets.push_back(img);
      }
    return SimplicialComplex(ids, facets);
  }

  // Barycentric subdivision: vertices are the simplices of K (named by their
  // vertex sets), simplices are chains under inclusion.
  inline SimplicialComplex barycentric_subdivision(SimplicialComplex const& K) {
    std::vector<std::string>                 ids;
    std::vector<std::pair<std::size_t, std::size_t>> where;
    for (std::size_t d = 0; d <= std::size_t(std::max(K.dimension(), 0)); ++d)
      for (std::size_t i = 0; i < K.count(d); ++i) {
        ids.push_back(K.label(K.simplex(d, i)));
        where.emplace_back(d, i);
      }
    IdTable table(ids);
    auto    vertex_of = [&](Simplex const& s) { return table.at(K.label(s)); };
    std::vector<Simplex> facets;
    // Maximal chains ending at each facet: all orderings of its vertices.
    for (auto const& f : K.facets()) {
      Simplex order = f;
      do {
        Simplex chain;
        for (std::size_t k = 1; k <= order.size(); ++k) {
          Simplex face(order.begin(), order.begin() + long(k));
          std::sort(face.begin(), face.end());
          chain.push_back(vertex_of(face));
        }
        std::sort(chain.begin(), chain.end());
        facets.push_back(chain);
      } while (std::next_permutation(order.begin(), order.end()));
    }
    return SimplicialComplex(table, facets);
  }

  inline SimplicialAction barycentric_subdivision(SimplicialAction const& a) {
    SimplicialComplex             S = barycentric_subdivision(a.complex);
    auto const&                   K = a.complex;
    std::vector<std::vector<int>> perms;
    for (std::size_t g = 0; g < a.group.order(); ++g) {
      std::vector<int> p(S.num_vertices());
      for (std::size_t d = 0; d <= std::size_t(std::max(K.dimension(), 0)); ++d)
        for (std::size_t i = 0; i < K.count(d); ++i) {
          auto [j, sign] = a.act(d, i, int(g));
          (void) sign;
          p[S.vertices().at(K.label(K.simplex(d, i)))] = S.vertices().at(K.label(K.simplex(d, std::size_t(j))));
        }
      perms.push_back(std::move(p));
    }
    SimplicialAction out{std::move(S), a.group, std::move(perms)};
    return out;
  }

  // Restriction to an invariant set of vertices (full subcomplex).
  inline SimplicialAction restrict_action(SimplicialAction const& a, std::vector<int> const& vertices) {
    std::vector<char> in(a.complex.num_vertices(), 0);
    for (int v : vertices)
      in[v] = 1;
    for (auto const& p : a.perm)
      for (int v : vertices)
        if (!in[p[v]])
          throw ValidationError("NotInvariant", {a.complex.vertices()[v]}, "vertex set is not invariant");
    SimplicialComplex sub = a.complex.full_subcomplex(vertices);
    std::vector<std::vector<int>> perms;
    for (auto const& p : a.perm) {
      std::vector<int> q(sub.num_vertices());
      for (std::size_t v = 0; v < sub.num_vertices(); ++v)
        q[v] = sub.vertices().at(a.complex.vertices()[p[a.complex.vertices().at(sub.vertices()[int(v)])]]);
      perms.push_back(std::move(q));
    }
    return SimplicialAction{std::move(sub), a.group, std::move(perms)};
  }

}  // namespace groupoidal
