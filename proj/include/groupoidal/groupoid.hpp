// Finite groupoids as explicit tables, their validation, and functors.
//
// Objects and morphisms carry string ids and are stored in sorted id order;
// everything else refers to them by dense index. `comp(a, b)` is a∘b (first
// b, then a), defined when dom a == cod b.

#pragma once

#include <array>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "error.hpp"
#include "ids.hpp"

namespace groupoidal {

  struct RawMorphism {
    std::string id, dom, cod;
  };

  // The string-level form of a groupoid, as read from or written to JSON.
  struct RawGroupoid {
    std::vector<std::string>               objects;
    std::vector<RawMorphism>               morphisms;
    std::map<std::string, std::string>     unit;
    std::map<std::string, std::string>     inv;
    std::vector<std::array<std::string, 3>> comp;  // [g', g, g'∘g]
  };

  namespace detail {
    constexpr std::size_t max_reported_violations = 256;
  }

  class FiniteGroupoid;
  using GroupoidRef = std::shared_ptr<FiniteGroupoid const>;

  class FiniteGroupoid {
   public:
    FiniteGroupoid() = default;

    // Index-level tables; see `check` for the axioms verified.
    struct Tables {
      IdTable          objects, morphisms;
      std::vector<int> dom, cod, unit, inv;
      std::vector<int> comp;  // |G1|^2, -1 where not composable
    };

    // Returns the axiom violations of `raw`, empty when it is a groupoid.
    // Unknown or duplicate ids throw SchemaError instead.
    static std::vector<Violation> check(RawGroupoid const& raw) { return check_tables(index(raw)); }

    // Validated construction; throws ValidationError listing the violations.
    static FiniteGroupoid validate(RawGroupoid const& raw) { return from_tables(index(raw)); }

    static FiniteGroupoid from_tables(Tables t) {
      auto vs = check_tables(t);
      if (!vs.empty())
        throw ValidationError(std::move(vs));
      FiniteGroupoid g;
      g._t = std::move(t);
      g.build_adjacency();
      return g;
    }

    std::size_t num_objects() const noexcept { return _t.objects.size(); }
    std::size_t num_morphisms() const noexcept { return _t.morphisms.size(); }

    std::string const& object_id(int a) const { return _t.objects[a]; }
    std::string const& morphism_id(int g) const { return _t.morphisms[g]; }
    int                object(std::string const& id) const { return _t.objects.at(id, "object"); }
    int                morphism(std::string const& id) const { return _t.morphisms.at(id, "morphism"); }
    IdTable const&     objects() const noexcept { return _t.objects; }
    IdTable const&     morphisms() const noexcept { return _t.morphisms; }

    int dom(int g) const { return _t.dom[g]; }
    int cod(int g) const { return _t.cod[g]; }
    int unit(int a) const { return _t.unit[a]; }
    int inv(int g) const { return _t.inv[g]; }
    // a∘b, or -1 when dom a != cod b.
    int comp(int a, int b) const { return _t.comp[std::size_t(a) * num_morphisms() + b]; }
    bool is_unit(int g) const { return _t.unit[_t.dom[g]] == g; }

    // Morphisms with the given domain / codomain, in index order.
    std::vector<int> const& from(int a) const { return _from[a]; }
    std::vector<int> const& into(int a) const { return _into[a]; }

    // G(a, b): morphisms with dom a and cod b.
    std::vector<int> hom(int a, int b) const {
      std::vector<int> out;
      for (int g : _from[a])
        if (cod(g) == b)
          out.push_back(g);
      return out;
    }

    Tables const& tables() const noexcept { return _t; }

    RawGroupoid to_raw() const {
      RawGroupoid r;
      r.objects = _t.objects.ids();
      for (std::size_t g = 0; g < num_morphisms(); ++g)
        r.morphisms.push_back({morphism_id(int(g)), object_id(dom(int(g))), object_id(cod(int(g)))});
      for (std::size_t a = 0; a < num_objects(); ++a)
        r.unit[object_id(int(a))] = morphism_id(unit(int(a)));
      for (std::size_t g = 0; g < num_morphisms(); ++g)
        r.inv[morphism_id(int(g))] = morphism_id(inv(int(g)));
      for (std::size_t a = 0; a < num_morphisms(); ++a)
        for (std::size_t b = 0; b < num_morphisms(); ++b) {
          int c = comp(int(a), int(b));
          if (c >= 0)
            r.comp.push_back({morphism_id(int(a)), morphism_id(int(b)), morphism_id(c)});
        }
      return r;
    }

    bool operator==(FiniteGroupoid const& o) const {
      return _t.objects == o._t.objects && _t.morphisms == o._t.morphisms && _t.dom == o._t.dom
             && _t.cod == o._t.cod && _t.unit == o._t.unit && _t.inv == o._t.inv && _t.comp == o._t.comp;
    }

   private:
    static Tables index(RawGroupoid const& raw) {
      Tables t;
      t.objects = IdTable(raw.objects);
      std::vector<std::string> mids;
      for (auto const& m : raw.morphisms)
        mids.push_back(m.id);
      t.morphisms               = IdTable(mids);
      std::size_t const n       = t.morphisms.size();
      t.dom.assign(n, -1);
      t.cod.assign(n, -1);
      for (auto const& m : raw.morphisms) {
        int g    = t.morphisms.at(m.id, "morphism");
        t.dom[g] = t.objects.at(m.dom, "object");
        t.cod[g] = t.objects.at(m.cod, "object");
      }
      t.unit.assign(t.objects.size(), -1);
      for (auto const& [a, u] : raw.unit)
        t.unit[t.objects.at(a, "object")] = t.morphisms.at(u, "morphism");
      t.inv.assign(n, -1);
      for (auto const& [g, h] : raw.inv)
        t.inv[t.morphisms.at(g, "morphism")] = t.morphisms.at(h, "morphism");
      t.comp.assign(n * n, -1);
      for (auto const& [a, b, c] : raw.comp) {
        int ia = t.morphisms.at(a, "morphism"), ib = t.morphisms.at(b, "morphism");
        int ic = t.morphisms.at(c, "morphism");
        int& slot = t.comp[std::size_t(ia) * n + ib];
        if (slot >= 0 && slot != ic)
          throw SchemaError("conflicting composites", {a, b});
        slot = ic;
      }
      return t;
    }

    static std::vector<Violation> check_tables(Tables const& t) {
      std::vector<Violation> vs;
      auto                   add = [&](std::string code, std::vector<std::string> ids, std::string msg = {}) {
        if (vs.size() < detail::max_reported_violations)
          vs.push_back({std::move(code), std::move(ids), std::move(msg)});
      };
      std::size_t const n  = t.morphisms.size();
      std::size_t const no = t.objects.size();
      if (t.dom.size() != n || t.cod.size() != n || t.inv.size() != n || t.unit.size() != no
          || t.comp.size() != n * n) {
        add("DomCodMismatch", {}, "table sizes disagree");
        return vs;
      }
      auto M    = [&](int g) { return t.morphisms[g]; };
      auto O    = [&](int a) { return t.objects[a]; };
      auto comp = [&](int a, int b) { return t.comp[std::size_t(a) * n + b]; };

      for (std::size_t g = 0; g < n; ++g)
        if (t.dom[g] < 0 || t.cod[g] < 0)
          add("DomCodMismatch", {M(int(g))}, "morphism without domain or codomain");
      if (!vs.empty())
        return vs;

      // Composites: defined exactly on composable pairs, with the right ends.
      bool comp_ok = true;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          int  c          = comp(int(a), int(b));
          bool composable = t.dom[a] == t.cod[b];
          if (!composable && c >= 0) {
            add("DomCodMismatch", {M(int(a)), M(int(b))}, "composite given for a non-composable pair");
            comp_ok = false;
          } else if (composable && c < 0) {
            add("MissingComposite", {M(int(a)), M(int(b))}, "composable pair without composite");
            comp_ok = false;
          } else if (composable && (t.dom[c] != t.dom[b] || t.cod[c] != t.cod[a])) {
            add("DomCodMismatch", {M(int(a)), M(int(b)), M(c)}, "composite has the wrong ends");
            comp_ok = false;
          }
        }

      for (std::size_t x = 0; x < no; ++x) {
        int u = t.unit[x];
        if (u < 0 || t.dom[u] != int(x) || t.cod[u] != int(x)) {
          add("MissingUnit", {O(int(x))}, "no unit morphism");
          continue;
        }
        if (!comp_ok)
          continue;
        for (std::size_t g = 0; g < n; ++g) {
          if ((t.cod[g] == int(x) && comp(u, int(g)) != int(g)) || (t.dom[g] == int(x) && comp(int(g), u) != int(g))) {
            add("MissingUnit", {O(int(x)), M(int(g))}, "unit law fails");
            break;
          }
        }
      }

      for (std::size_t g = 0; g < n; ++g) {
        int h = t.inv[g];
        if (h < 0 || t.dom[h] != t.cod[g] || t.cod[h] != t.dom[g]) {
          add("BadInverse", {M(int(g))}, "inverse missing or with the wrong ends");
          continue;
        }
        if (!comp_ok)
          continue;
        int ug = t.unit[t.cod[g]], ud = t.unit[t.dom[g]];
        if (ug < 0 || ud < 0 || comp(int(g), h) != ug || comp(h, int(g)) != ud)
          add("BadInverse", {M(int(g))}, "inverse does not compose to units");
      }

      if (!comp_ok)
        return vs;
      // (a∘b)∘c == a∘(b∘c) over all composable triples.
      std::vector<std::vector<int>> from(no);
      for (std::size_t g = 0; g < n; ++g)
        from[t.dom[g]].push_back(int(g));
      for (std::size_t c = 0; c < n; ++c)
        for (int b : from[t.cod[c]])
          for (int a : from[t.cod[b]]) {
            if (comp(comp(a, b), int(c)) != comp(a, comp(b, int(c))))
              add("NonAssociative", {M(a), M(b), M(int(c))});
          }
      return vs;
    }

    void build_adjacency() {
      _from.assign(num_objects(), {});
      _into.assign(num_objects(), {});
      for (std::size_t g = 0; g < num_morphisms(); ++g) {
        _from[dom(int(g))].push_back(int(g));
        _into[cod(int(g))].push_back(int(g));
      }
    }

    Tables                        _t;
    std::vector<std::vector<int>> _from, _into;
  };

  inline GroupoidRef share(FiniteGroupoid g) { return std::make_shared<FiniteGroupoid const>(std::move(g)); }

  // Structural equality through references.
  inline bool same_groupoid(GroupoidRef const& a, GroupoidRef const& b) {
    return a == b || (a && b && *a == *b);
  }

  // A functor between finite groupoids, by object and morphism maps.
  struct Functor {
    GroupoidRef      source, target;
    std::vector<int> obj;  // source object -> target object
    std::vector<int> mor;  // source morphism -> target morphism

    int operator()(int g) const { return mor[g]; }
  };

  inline std::vector<Violation> check_functor(Functor const& f) {
    std::vector<Violation> vs;
    auto const&            G = *f.source;
    auto const&            H = *f.target;
    if (f.obj.size() != G.num_objects() || f.mor.size() != G.num_morphisms()) {
      vs.push_back({"NotAFunctor", {}, "map sizes do not match the source groupoid"});
      return vs;
    }
    for (int v : f.obj)
      if (v < 0 || std::size_t(v) >= H.num_objects())
        return {{"NotAFunctor", {}, "object image out of range"}};
    for (int v : f.mor)
      if (v < 0 || std::size_t(v) >= H.num_morphisms())
        return {{"NotAFunctor", {}, "morphism image out of range"}};
    for (std::size_t g = 0; g < G.num_morphisms(); ++g) {
      int fg = f.mor[g];
      if (H.dom(fg) != f.obj[G.dom(int(g))] || H.cod(fg) != f.obj[G.cod(int(g))])
        vs.push_back({"NotAFunctor", {G.morphism_id(int(g))}, "ends not preserved"});
    }
    for (std::size_t a = 0; a < G.num_objects(); ++a)
      if (f.mor[G.unit(int(a))] != H.unit(f.obj[a]))
        vs.push_back({"NotAFunctor", {G.object_id(int(a))}, "unit not preserved"});
    for (std::size_t a = 0; a < G.num_morphisms(); ++a)
      for (int b : G.into(G.dom(int(a))))
        if (f.mor[G.comp(int(a), b)] != H.comp(f.mor[a], f.mor[b]))
          vs.push_back({"NotAFunctor", {G.morphism_id(int(a)), G.morphism_id(b)}, "composition not preserved"});
    return vs;
  }

  inline Functor validate_functor(Functor f) {
    auto vs = check_functor(f);
    if (!vs.empty())
      throw ValidationError(std::move(vs));
    return f;
  }

  inline Functor identity_functor(GroupoidRef const& g) {
    Functor f{g, g, {}, {}};
    for (std::size_t a = 0; a < g->num_objects(); ++a)
      f.obj.push_back(int(a));
    for (std::size_t m = 0; m < g->num_morphisms(); ++m)
      f.mor.push_back(int(m));
    return f;
  }

  // psi∘phi.
  inline Functor compose(Functor const& psi, Functor const& phi) {
    if (!same_groupoid(phi.target, psi.source))
      throw ValidationError("SourceTargetMismatch", {}, "functors are not composable");
    Functor f{phi.source, psi.target, {}, {}};
    for (int a : phi.obj)
      f.obj.push_back(psi.obj[a]);
    for (int g : phi.mor)
      f.mor.push_back(psi.mor[g]);
    return f;
  }

}  // namespace groupoidal
