// JSON reading and writing for every object the CLI handles.
//
// Groupoid references are either an inline description, a path (relative to
// the referring file) or a builder string: "point", "pair(n)", "cyclic(k)",
// "discrete(n)", "rot(k,m)". Action references accept "rot(k,m)" as well.
// Dumps use ids, except the algebra and bimodule tensors which use basis
// indices and exact numerator/denominator pairs.
#pragma once

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "bibundle.hpp"
#include "builders.hpp"
#include "chain_complex.hpp"
#include "cocycle.hpp"
#include "convolution.hpp"
#include "fundamental_group.hpp"
#include "groupoid.hpp"
#include "leaves.hpp"
#include "simplicial.hpp"

namespace groupoidal::io {

  using json = nlohmann::json;
  namespace fs = std::filesystem;

  namespace detail {
    inline json const& field(json const& j, char const* key) {
      if (!j.is_object())
        throw SchemaError("expected an object", {key});
      auto it = j.find(key);
      if (it == j.end())
        throw SchemaError("missing key", {key});
      return *it;
    }

    inline std::string str(json const& j, char const* what) {
      if (!j.is_string())
        throw SchemaError("expected a string", {what});
      return j.get<std::string>();
    }

    inline long long integer(json const& j, char const* what) {
      if (!j.is_number_integer())
        throw SchemaError("expected an integer", {what});
      return j.get<long long>();
    }

    inline std::vector<std::string> strings(json const& j, char const* what) {
      if (!j.is_array())
        throw SchemaError("expected an array", {what});
      std::vector<std::string> out;
      for (auto const& x : j)
        out.push_back(str(x, what));
      return out;
    }

    inline std::map<std::string, std::string> string_map(json const& j, char const* what) {
      if (!j.is_object())
        throw SchemaError("expected an object", {what});
      std::map<std::string, std::string> out;
      for (auto const& [k, v] : j.items())
        out[k] = str(v, what);
      return out;
    }

    inline std::array<std::string, 3> triple(json const& j, char const* what) {
      auto v = strings(j, what);
      if (v.size() != 3)
        throw SchemaError("expected three ids", {what});
      return {v[0], v[1], v[2]};
    }

    inline std::map<std::string, std::vector<std::string>> hulls(json const& j, char const* what) {
      if (!j.is_object())
        throw SchemaError("expected an object", {what});
      std::map<std::string, std::vector<std::string>> out;
      for (auto const& [k, v] : j.items())
        out[k] = strings(v, what);
      return out;
    }

    inline std::optional<std::vector<int>> builder_args(std::string const& s, std::string const& name, std::size_t n) {
      static std::regex const re(R"(^\s*([a-z_]+)\s*(?:\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\))?\s*$)");
      std::smatch             m;
      if (!std::regex_match(s, m, re) || m[1] != name)
        return std::nullopt;
      std::vector<int> args;
      for (std::size_t i = 2; i <= 3; ++i)
        if (m[i].matched)
          args.push_back(std::stoi(m[i].str()));
      if (args.size() != n)
        throw SchemaError("wrong number of builder arguments", {s});
      return args;
    }

    inline json integer_json(Integer const& v) {
      if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return json(static_cast<long long>(v));
      return json(v.str());
    }

    inline Integer integer_of(json const& j) {
      if (j.is_number_integer())
        return Integer(j.get<long long>());
      if (j.is_string())
        try {
          return Integer(j.get<std::string>());
        } catch (std::exception const&) {
        }
      throw SchemaError("expected an integer");
    }

    inline json hull_json(FiniteTopology const& t, IdTable const& ids) {
      json out = json::object();
      for (std::size_t x = 0; x < t.size(); ++x) {
        json h = json::array();
        for (int y : t.open_hull(int(x)))
          h.push_back(ids[y]);
        out[ids[int(x)]] = h;
      }
      return out;
    }
  }  // namespace detail

  inline json read_json(fs::path const& path) {
    std::ifstream in(path);
    if (!in)
      throw SchemaError("cannot open file", {path.string()});
    try {
      return json::parse(in);
    } catch (json::exception const& e) {
      throw SchemaError(std::string("malformed JSON: ") + e.what(), {path.string()});
    }
  }

  // ---------------------------------------------------------------------
  // Groupoids and functors

  inline json dump_groupoid(FiniteGroupoid const& g) {
    RawGroupoid const r = g.to_raw();
    json              j;
    j["objects"]   = r.objects;
    json mors      = json::array();
    for (auto const& m : r.morphisms)
      mors.push_back({{"id", m.id}, {"dom", m.dom}, {"cod", m.cod}});
    j["morphisms"] = mors;
    j["unit"]      = r.unit;
    j["inv"]       = r.inv;
    json comp      = json::array();
    for (auto const& c : r.comp)
      comp.push_back({c[0], c[1], c[2]});
    j["comp"] = comp;
    return j;
  }

  inline RawGroupoid parse_raw_groupoid(json const& j) {
    RawGroupoid r;
    r.objects = detail::strings(detail::field(j, "objects"), "objects");
    auto const& ms = detail::field(j, "morphisms");
    if (!ms.is_array())
      throw SchemaError("expected an array", {"morphisms"});
    for (auto const& m : ms)
      r.morphisms.push_back({detail::str(detail::field(m, "id"), "id"), detail::str(detail::field(m, "dom"), "dom"),
                             detail::str(detail::field(m, "cod"), "cod")});
    r.unit = detail::string_map(detail::field(j, "unit"), "unit");
    r.inv  = detail::string_map(detail::field(j, "inv"), "inv");
    auto const& cs = detail::field(j, "comp");
    if (!cs.is_array())
      throw SchemaError("expected an array", {"comp"});
    for (auto const& c : cs)
      r.comp.push_back(detail::triple(c, "comp"));
    return r;
  }

  inline std::optional<FiniteGroupoid> builder_groupoid(std::string const& s) {
    if (detail::builder_args(s, "point", 0))
      return point();
    if (auto a = detail::builder_args(s, "pair", 1))
      return pair_groupoid((*a)[0]);
    if (auto a = detail::builder_args(s, "cyclic", 1))
      return cyclic((*a)[0]);
    if (auto a = detail::builder_args(s, "discrete", 1))
      return discrete_set((*a)[0]);
    if (auto a = detail::builder_args(s, "rot", 2))
      return vertex_action_groupoid(rotation_action((*a)[0], (*a)[1]));
    return std::nullopt;
  }

  // Inline description, builder string, or path relative to `dir`.
  inline GroupoidRef load_groupoid(json const& j, fs::path const& dir = {}) {
    if (j.is_string()) {
      auto const s = j.get<std::string>();
      if (auto g = builder_groupoid(s))
        return share(std::move(*g));
      return load_groupoid(read_json(dir / s), (dir / s).parent_path());
    }
    return share(FiniteGroupoid::validate(parse_raw_groupoid(j)));
  }

  inline json dump_functor(Functor const& f) {
    json j;
    j["source"] = dump_groupoid(*f.source);
    j["target"] = dump_groupoid(*f.target);
    json objs = json::object(), mors = json::object();
    for (std::size_t a = 0; a < f.obj.size(); ++a)
      objs[f.source->object_id(int(a))] = f.target->object_id(f.obj[a]);
    for (std::size_t m = 0; m < f.mor.size(); ++m)
      mors[f.source->morphism_id(int(m))] = f.target->morphism_id(f.mor[m]);
    j["objects"]   = objs;
    j["morphisms"] = mors;
    return j;
  }

  // {"source", "target", "objects": {b: a}, "morphisms": {h: g}}.
  inline Functor load_functor(json const& j, fs::path const& dir = {}) {
    if (j.is_string())
      return load_functor(read_json(dir / j.get<std::string>()), (dir / j.get<std::string>()).parent_path());
    Functor f{load_groupoid(detail::field(j, "source"), dir), load_groupoid(detail::field(j, "target"), dir), {}, {}};
    auto const objs = detail::string_map(detail::field(j, "objects"), "objects");
    auto const mors = detail::string_map(detail::field(j, "morphisms"), "morphisms");
    f.obj.assign(f.source->num_objects(), -1);
    f.mor.assign(f.source->num_morphisms(), -1);
    for (auto const& [a, b] : objs)
      f.obj[f.source->object(a)] = f.target->object(b);
    for (auto const& [a, b] : mors)
      f.mor[f.source->morphism(a)] = f.target->morphism(b);
    for (std::size_t a = 0; a < f.obj.size(); ++a)
      if (f.obj[a] < 0)
        throw SchemaError("object without image", {f.source->object_id(int(a))});
    for (std::size_t m = 0; m < f.mor.size(); ++m)
      if (f.mor[m] < 0)
        throw SchemaError("morphism without image", {f.source->morphism_id(int(m))});
    return validate_functor(std::move(f));
  }

  // ---------------------------------------------------------------------
  // Bibundles

  inline json dump_bibundle(Bibundle const& b) {
    BibundleData const d = to_data(b);
    json               j;
    j["left"]  = dump_groupoid(*b.left);
    j["right"] = dump_groupoid(*b.right);
    j["total"] = d.total;
    j["p"]     = d.p;
    j["w"]     = d.w;
    json la = json::array(), ra = json::array();
    for (auto const& t : d.left_act)
      la.push_back({t[0], t[1], t[2]});
    for (auto const& t : d.right_act)
      ra.push_back({t[0], t[1], t[2]});
    j["left_act"]  = la;
    j["right_act"] = ra;
    if (b.topology)
      j["topology"] = {{"total", detail::hull_json(b.topology->total, b.total)},
                       {"base", detail::hull_json(b.topology->base, b.right->objects())}};
    return j;
  }

  // Besides the explicit form, {"unit": groupoid} and {"functor": functor}
  // build the unit bibundle and the bibundle of a functor.
  inline Bibundle load_bibundle(json const& j, fs::path const& dir = {}) {
    if (j.is_string())
      return load_bibundle(read_json(dir / j.get<std::string>()), (dir / j.get<std::string>()).parent_path());
    if (j.is_object() && j.contains("unit"))
      return unit_bibundle(load_groupoid(j["unit"], dir));
    if (j.is_object() && j.contains("functor"))
      return functor_bibundle(load_functor(j["functor"], dir));
    BibundleData d;
    d.left  = load_groupoid(detail::field(j, "left"), dir);
    d.right = load_groupoid(detail::field(j, "right"), dir);
    d.total = detail::strings(detail::field(j, "total"), "total");
    d.p     = detail::string_map(detail::field(j, "p"), "p");
    d.w     = detail::string_map(detail::field(j, "w"), "w");
    for (auto const& t : detail::field(j, "left_act"))
      d.left_act.push_back(detail::triple(t, "left_act"));
    for (auto const& t : detail::field(j, "right_act"))
      d.right_act.push_back(detail::triple(t, "right_act"));
    if (j.contains("topology")) {
      auto const& t = j["topology"];
      if (t.contains("total"))
        d.total_open = detail::hulls(t["total"], "topology.total");
      if (t.contains("base"))
        d.base_open = detail::hulls(t["base"], "topology.base");
    }
    return make_bibundle(d);
  }

  // ---------------------------------------------------------------------
  // Cocycles

  inline json dump_cocycle(Cocycle const& c) {
    json j;
    j["base"]   = c.cover.base.ids();
    json pieces = json::array();
    for (auto const& p : c.cover.pieces) {
      json q = json::array();
      for (int x : p)
        q.push_back(c.cover.base[x]);
      pieces.push_back(q);
    }
    j["pieces"] = pieces;
    j["target"] = dump_groupoid(*c.target);
    json maps   = json::array();
    for (std::size_t i = 0; i < c.pieces(); ++i)
      for (std::size_t k = 0; k < c.pieces(); ++k)
        for (std::size_t x = 0; x < c.cover.base.size(); ++x)
          if (int g = c.at(i, k, int(x)); g >= 0)
            maps.push_back({i, k, c.cover.base[int(x)], c.target->morphism_id(g)});
    j["maps"] = maps;
    if (c.cover.topology)
      j["topology"] = detail::hull_json(*c.cover.topology, c.cover.base);
    return j;
  }

  // {"base", "pieces", "target", "maps": [[i, j, x, g]], "topology"?: {x: hull}}.
  inline Cocycle load_cocycle(json const& j, fs::path const& dir = {}) {
    if (j.is_string())
      return load_cocycle(read_json(dir / j.get<std::string>()), (dir / j.get<std::string>()).parent_path());
    auto const base = detail::strings(detail::field(j, "base"), "base");
    std::vector<std::vector<std::string>> pieces;
    for (auto const& p : detail::field(j, "pieces"))
      pieces.push_back(detail::strings(p, "pieces"));
    std::optional<std::vector<std::vector<std::string>>> hull;
    if (j.contains("topology")) {
      hull.emplace();
      for (auto const& [x, h] : detail::hulls(j["topology"], "topology")) {
        std::vector<std::string> v{x};
        v.insert(v.end(), h.begin(), h.end());
        hull->push_back(std::move(v));
      }
    }
    Cover cover = make_cover(base, pieces, hull);
    check_cover(cover);
    Cocycle c = empty_cocycle(std::move(cover), load_groupoid(detail::field(j, "target"), dir));
    for (auto const& m : detail::field(j, "maps")) {
      if (!m.is_array() || m.size() != 4)
        throw SchemaError("expected [i, j, x, g]", {"maps"});
      long long const i = detail::integer(m[0], "maps"), k = detail::integer(m[1], "maps");
      if (i < 0 || k < 0 || std::size_t(i) >= c.pieces() || std::size_t(k) >= c.pieces())
        throw SchemaError("piece index out of range", {"maps"});
      int const x = c.cover.base.at(detail::str(m[2], "maps"), "point");
      if (!c.cover.contains(std::size_t(i), x) || !c.cover.contains(std::size_t(k), x))
        throw SchemaError("point outside the overlap", {std::to_string(i), std::to_string(k), m[2].get<std::string>()});
      c.at(std::size_t(i), std::size_t(k), x) = c.target->morphism(detail::str(m[3], "maps"));
    }
    return validate_cocycle(std::move(c));
  }

  // ---------------------------------------------------------------------
  // Complexes and actions

  inline json dump_complex(SimplicialComplex const& K) {
    json j;
    j["vertices"] = K.vertices().ids();
    json facets   = json::array();
    for (auto const& f : K.facets()) {
      json s = json::array();
      for (int v : f)
        s.push_back(K.vertices()[v]);
      facets.push_back(s);
    }
    j["facets"] = facets;
    return j;
  }

  inline SimplicialComplex load_complex(json const& j, fs::path const& dir = {}) {
    if (j.is_string())
      return load_complex(read_json(dir / j.get<std::string>()), (dir / j.get<std::string>()).parent_path());
    auto const vs = detail::strings(detail::field(j, "vertices"), "vertices");
    std::vector<std::vector<std::string>> facets;
    for (auto const& f : detail::field(j, "facets"))
      facets.push_back(detail::strings(f, "facets"));
    return SimplicialComplex(vs, facets);
  }

  // Generators as vertex maps {v: v·g}.
  inline json dump_action(SimplicialAction const& a) {
    json j;
    j["complex"] = dump_complex(a.complex);
    json gens    = json::array();
    for (int g : a.group.generators()) {
      json m = json::object();
      for (std::size_t v = 0; v < a.complex.num_vertices(); ++v)
        m[a.complex.vertices()[int(v)]] = a.complex.vertices()[a.perm[g][v]];
      gens.push_back(m);
    }
    j["generators"] = gens;
    return j;
  }

  inline SimplicialAction load_action(json const& j, fs::path const& dir = {}) {
    if (j.is_string()) {
      auto const s = j.get<std::string>();
      if (auto a = detail::builder_args(s, "rot", 2))
        return rotation_action((*a)[0], (*a)[1]);
      return load_action(read_json(dir / s), (dir / s).parent_path());
    }
    SimplicialComplex K = load_complex(detail::field(j, "complex"), dir);
    std::vector<std::vector<int>> gens;
    for (auto const& g : detail::field(j, "generators")) {
      auto const m = detail::string_map(g, "generators");
      std::vector<int> perm(K.num_vertices(), -1);
      for (auto const& [v, w] : m)
        perm[K.vertices().at(v, "vertex")] = K.vertices().at(w, "vertex");
      for (std::size_t v = 0; v < perm.size(); ++v)
        if (perm[v] < 0)
          perm[v] = int(v);
      gens.push_back(std::move(perm));
    }
    return make_action(std::move(K), gens);
  }

  // Same complex and the same set of vertex permutations.
  inline bool same_action(SimplicialAction const& a, SimplicialAction const& b) {
    if (!(a.complex == b.complex))
      return false;
    auto pa = a.perm, pb = b.perm;
    std::sort(pa.begin(), pa.end());
    std::sort(pb.begin(), pb.end());
    return pa == pb;
  }

  // ---------------------------------------------------------------------
  // Reports

  inline json dump_invariants(AbelianInvariants const& a) {
    json t = json::array();
    for (auto const& x : a.torsion)
      t.push_back(detail::integer_json(x));
    return {{"rank", a.rank}, {"torsion", t}};
  }

  inline json dump_homology(std::size_t n, AbelianInvariants const& a) {
    json j = dump_invariants(a);
    j["n"] = n;
    return j;
  }

  inline AbelianInvariants load_invariants(json const& j) {
    AbelianInvariants a;
    a.rank = std::size_t(detail::integer(detail::field(j, "rank"), "rank"));
    for (auto const& t : detail::field(j, "torsion"))
      a.torsion.push_back(detail::integer_of(t));
    return a;
  }

  inline json dump_presentation(Presentation const& p) {
    json rel = json::array();
    for (auto const& w : p.relators)
      rel.push_back(w);
    return {{"generators", p.generators}, {"relators", rel}};
  }

  inline Presentation load_presentation(json const& j) {
    Presentation p;
    p.generators = detail::strings(detail::field(j, "generators"), "generators");
    for (auto const& w : detail::field(j, "relators")) {
      Word word;
      for (auto const& x : w)
        word.push_back(int(detail::integer(x, "relators")));
      p.relators.push_back(std::move(word));
    }
    p.check();
    return p;
  }

  inline json dump_leaves(Bibundle const& E, std::vector<Leaf> const& ls) {
    auto const& G  = *E.left;
    auto const& H  = *E.right;
    json        out = json::array();
    for (auto const& l : ls) {
      json comp = json::array(), under = json::array(), gens = json::array();
      for (int e : l.component)
        comp.push_back(E.id(e));
      for (int x : l.underlying)
        under.push_back(H.object_id(x));
      for (int g : l.holonomy_generators)
        gens.push_back(G.morphism_id(g));
      out.push_back({{"fiber_object", G.object_id(l.fiber_object)},
                     {"component", comp},
                     {"underlying", under},
                     {"holonomy_order", l.holonomy.size()},
                     {"holonomy_generators", gens}});
    }
    return out;
  }

  inline json rational_pair(Rational const& r) {
    return {detail::integer_json(numerator(r)), detail::integer_json(denominator(r))};
  }

  inline Rational rational_of(json const& num, json const& den) {
    Integer const d = detail::integer_of(den);
    if (d == 0)
      throw SchemaError("zero denominator");
    return Rational(detail::integer_of(num), d);
  }

  // Algebra: {"basis", "structure_constants": [[i, j, k, num, den]]} with
  // δ_i * δ_j = Σ (num/den) δ_k.
  inline json dump_algebra(Algebra const& A) {
    json sc = json::array();
    for (auto const& s : structure_constants(A)) {
      auto q = rational_pair(s.value);
      sc.push_back({s.i, s.j, s.k, q[0], q[1]});
    }
    json basis = json::array();
    for (std::size_t m = 0; m < A.dim(); ++m)
      basis.push_back(A.groupoid->morphism_id(int(m)));
    return {{"basis", basis}, {"structure_constants", sc}};
  }

  inline std::vector<StructureConstant> load_structure_constants(json const& j) {
    std::vector<StructureConstant> out;
    for (auto const& t : detail::field(j, "structure_constants")) {
      if (!t.is_array() || t.size() != 5)
        throw SchemaError("expected [i, j, k, num, den]", {"structure_constants"});
      out.push_back({std::size_t(detail::integer(t[0], "i")), std::size_t(detail::integer(t[1], "j")),
                     std::size_t(detail::integer(t[2], "k")), rational_of(t[3], t[4])});
    }
    return out;
  }

  namespace detail {
    // [g, i, k, num, den]: the action of morphism g sends basis i to num/den of basis k.
    inline json action_tensor(std::vector<RatMatrix> const& acts) {
      json out = json::array();
      for (std::size_t g = 0; g < acts.size(); ++g)
        for (std::size_t i = 0; i < acts[g].cols(); ++i)
          for (std::size_t k = 0; k < acts[g].rows(); ++k)
            if (acts[g](k, i) != 0) {
              auto q = rational_pair(acts[g](k, i));
              out.push_back({g, i, k, q[0], q[1]});
            }
      return out;
    }

    inline std::vector<RatMatrix> load_action_tensor(json const& j, std::size_t count, std::size_t dim) {
      std::vector<RatMatrix> acts(count, RatMatrix(dim, dim));
      for (auto const& t : j) {
        if (!t.is_array() || t.size() != 5)
          throw SchemaError("expected [g, i, k, num, den]");
        long long const g = integer(t[0], "g"), i = integer(t[1], "i"), k = integer(t[2], "k");
        if (g < 0 || i < 0 || k < 0 || std::size_t(g) >= count || std::size_t(i) >= dim || std::size_t(k) >= dim)
          throw SchemaError("index out of range");
        acts[std::size_t(g)](std::size_t(k), std::size_t(i)) = rational_of(t[3], t[4]);
      }
      return acts;
    }
  }  // namespace detail

  inline json dump_bimodule(Bimodule const& M) {
    return {{"left", dump_groupoid(*M.left)},
            {"right", dump_groupoid(*M.right)},
            {"basis", M.basis},
            {"left_action", detail::action_tensor(M.left_action)},
            {"right_action", detail::action_tensor(M.right_action)}};
  }

  inline Bimodule load_bimodule(json const& j, fs::path const& dir = {}) {
    Bimodule M;
    M.left            = load_groupoid(detail::field(j, "left"), dir);
    M.right           = load_groupoid(detail::field(j, "right"), dir);
    M.basis           = detail::strings(detail::field(j, "basis"), "basis");
    M.left_action     = detail::load_action_tensor(detail::field(j, "left_action"), M.left->num_morphisms(), M.dim());
    M.right_action    = detail::load_action_tensor(detail::field(j, "right_action"), M.right->num_morphisms(), M.dim());
    return validate_module(std::move(M));
  }

}  // namespace groupoidal::io
