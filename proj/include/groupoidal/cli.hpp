// Command-line front end. `run` takes the arguments after the program name
// and writes one report (or one error object) to `out`.
//
// Exit codes: 0 success, 1 validation failure, 2 budget exhausted, 3 I/O,
// schema or usage error.
#pragma once

#include <CLI11.hpp>

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "bibundle.hpp"
#include "cocycle.hpp"
#include "convolution.hpp"
#include "fundamental_group.hpp"
#include "groupoid_homology.hpp"
#include "groupoid_ops.hpp"
#include "json_io.hpp"
#include "leaves.hpp"
#include "morita.hpp"

namespace groupoidal::cli {

  using io::json;
  namespace fs = std::filesystem;

  struct Options {
    std::string                 format = "json";
    std::optional<std::uint64_t> budget;
    std::optional<std::size_t>  n;
    std::optional<std::string>  base;
    std::string                 loop;
    std::string                 coefficients = "Z";
    std::string                 U, V;
    std::vector<std::string>    files;
  };

  namespace detail {
    // An argument is inline JSON when it starts with '{', a file when one
    // exists under that name, otherwise a builder string such as "pair(3)".
    struct Input {
      json     doc;
      fs::path dir;
    };

    inline Input input(std::string const& arg) {
      if (!arg.empty() && arg[0] == '{')
        try {
          return {json::parse(arg), {}};
        } catch (json::exception const& e) {
          throw SchemaError(std::string("malformed JSON: ") + e.what(), {"argument"});
        }
      fs::path p(arg);
      if (fs::exists(p))
        return {io::read_json(p), p.parent_path()};
      if (io::builder_groupoid(arg) || arg.rfind("rot(", 0) == 0)
        return {json(arg), {}};
      throw SchemaError("cannot open file", {arg});
    }

    enum class Kind { groupoid, functor, bibundle, cocycle, complex, action };

    inline Kind kind_of(json const& j) {
      if (j.is_string())
        return j.get<std::string>().rfind("rot(", 0) == 0 ? Kind::action : Kind::groupoid;
      if (!j.is_object())
        throw SchemaError("expected an object at the top level");
      if (j.contains("complex") && j.contains("generators"))
        return Kind::action;
      if (j.contains("vertices") && j.contains("facets"))
        return Kind::complex;
      if (j.contains("pieces"))
        return Kind::cocycle;
      if (j.contains("unit") && !j.contains("objects"))
        return Kind::bibundle;
      if (j.contains("functor") || (j.contains("left") && j.contains("right") && j.contains("total")))
        return Kind::bibundle;
      if (j.contains("source") && j.contains("target"))
        return Kind::functor;
      if (j.contains("objects") && j.contains("morphisms"))
        return Kind::groupoid;
      throw SchemaError("unrecognised document");
    }

    inline GroupoidRef groupoid(Input const& in) { return io::load_groupoid(in.doc, in.dir); }
    inline Bibundle    bibundle(Input const& in) { return io::load_bibundle(in.doc, in.dir); }
    inline Cocycle     cocycle(Input const& in) { return io::load_cocycle(in.doc, in.dir); }

    inline std::vector<std::string> split(std::string const& s) {
      std::vector<std::string> out;
      std::stringstream        ss(s);
      std::string              item;
      while (std::getline(ss, item, ','))
        if (!item.empty())
          out.push_back(item);
      return out;
    }

    inline PresentedGroup coefficients(std::string const& s) {
      if (s == "Z")
        return PresentedGroup::free(1);
      if (s.rfind("Z/", 0) == 0) {
        int m = 0;
        try {
          m = std::stoi(s.substr(2));
        } catch (std::exception const&) {
        }
        if (m >= 2)
          return PresentedGroup::from_invariants({0, {Integer(m)}});
      }
      throw SchemaError("coefficients must be Z or Z/m with m >= 2", {s});
    }

    inline json ids_of(IdTable const& t, std::vector<int> const& xs) {
      json out = json::array();
      for (int x : xs)
        out.push_back(t[x]);
      return out;
    }

    inline json group_json(FiniteGroup const& g) {
      json gens = json::array();
      for (int x : g.generators())
        gens.push_back(g.name(x));
      return {{"order", g.order()}, {"elements", g.names()}, {"generators", gens}, {"abelian", g.is_abelian()}};
    }

    inline json kind_json(BundleKind const& k) {
      json j{{"principal", k.principal}, {"transitive", k.transitive}};
      if (!k.reason.empty())
        j["reason"] = k.reason;
      return j;
    }

    inline int object_of(FiniteGroupoid const& g, std::optional<std::string> const& base) {
      return base ? g.objects().at(*base, "object") : 0;
    }

    struct Simplicial {
      bool             simplicial = false;
      SimplicialAction action;
      GroupoidRef      groupoid;
    };

    // Simplicial tier for actions, discrete tier for plain groupoids.
    inline Simplicial space(Input const& in) {
      Simplicial s;
      if (kind_of(in.doc) == Kind::action) {
        s.simplicial = true;
        s.action     = io::load_action(in.doc, in.dir);
      } else {
        s.groupoid = groupoid(in);
      }
      return s;
    }

    inline GroupoidChains chains(Simplicial const& s, std::size_t top) {
      return s.simplicial ? groupoid_chain_complex(s.action, top) : groupoid_chain_complex(*s.groupoid, top);
    }

    inline std::vector<int> vertex_list(SimplicialComplex const& K, std::string const& s) {
      std::vector<int> out;
      for (auto const& v : split(s))
        out.push_back(K.vertices().at(v, "vertex"));
      return out;
    }

    // Text rendering: one "key: value" line per top-level key.
    inline std::string text(json const& j) {
      std::string out;
      if (!j.is_object())
        return j.dump() + "\n";
      for (auto const& [k, v] : j.items())
        out += k + ": " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
      return out;
    }

    inline json error_json(Error const& e) {
      static char const* const names[] = {"", "validation", "budget", "schema"};
      json                     vs      = json::array();
      for (auto const& v : e.violations())
        vs.push_back({{"code", v.code}, {"ids", v.ids}, {"message", v.message}});
      return {{"error", {{"class", names[int(e.error_class())]}, {"code", e.code()}, {"violations", vs}}}};
    }
  }  // namespace detail

  using Handler = std::function<json(Options const&, Budget&)>;

  struct Command {
    char const* name;
    char const* help;
    std::size_t files;
    Handler     handler;
  };

  inline std::vector<Command> const& commands() {
    using namespace detail;
    static std::vector<Command> const table = {
        {"validate", "check the axioms of a description and summarise it", 1,
         [](Options const& o, Budget&) -> json {
           auto const in = input(o.files[0]);
           switch (kind_of(in.doc)) {
             case Kind::groupoid: {
               auto g = groupoid(in);
               return {{"kind", "groupoid"},
                       {"objects", g->num_objects()},
                       {"morphisms", g->num_morphisms()},
                       {"orbits", orbit_space(*g).blocks.size()}};
             }
             case Kind::functor: {
               auto f = io::load_functor(in.doc, in.dir);
               return {{"kind", "functor"}, {"source_objects", f.source->num_objects()},
                       {"target_objects", f.target->num_objects()}};
             }
             case Kind::bibundle: {
               auto E = bibundle(in);
               json j = kind_json(classify_bundle(E));
               j["kind"] = "bibundle";
               j["size"] = E.size();
               return j;
             }
             case Kind::cocycle: {
               auto c = cocycle(in);
               return {{"kind", "cocycle"}, {"points", c.cover.base.size()}, {"pieces", c.pieces()}};
             }
             case Kind::complex: {
               auto K = io::load_complex(in.doc, in.dir);
               return {{"kind", "complex"}, {"vertices", K.num_vertices()}, {"dimension", K.dimension()}};
             }
             case Kind::action: {
               auto a = io::load_action(in.doc, in.dir);
               require_free_regular(a);
               return {{"kind", "action"}, {"vertices", a.complex.num_vertices()}, {"group_order", a.group.order()}};
             }
           }
           return {};
         }},
        {"info", "sizes, orbits and vertex groups of a groupoid", 1,
         [](Options const& o, Budget&) -> json {
           auto       g  = groupoid(input(o.files[0]));
           auto const os = orbit_space(*g);
           json       vg = json::array();
           for (auto const& b : os.blocks) {
             auto grp = vertex_group(*g, b.front());
             vg.push_back({{"object", g->object_id(b.front())}, {"order", grp.order()}, {"abelian", grp.is_abelian()}});
           }
           return {{"objects", g->num_objects()},
                   {"morphisms", g->num_morphisms()},
                   {"orbits", os.blocks.size()},
                   {"effective", is_effective(*g)},
                   {"vertex_groups", vg}};
         }},
        {"orbits", "orbit space of a groupoid", 1,
         [](Options const& o, Budget&) -> json {
           auto g  = groupoid(input(o.files[0]));
           json bs = json::array();
           for (auto const& b : orbit_space(*g).blocks)
             bs.push_back(ids_of(g->objects(), b));
           return {{"orbits", bs}};
         }},
        {"vertex-group", "vertex group at --base", 1,
         [](Options const& o, Budget&) -> json {
           auto g = groupoid(input(o.files[0]));
           int  a = object_of(*g, o.base);
           json j = group_json(vertex_group(*g, a));
           j["object"] = g->object_id(a);
           return j;
         }},
        {"effect", "effect groupoid", 1,
         [](Options const& o, Budget&) -> json {
           auto e = effect(groupoid(input(o.files[0])));
           return {{"already_effective", e.already_effective}, {"effect", io::dump_groupoid(*e.groupoid)}};
         }},
        {"ess-equiv", "is a functor an essential equivalence", 1,
         [](Options const& o, Budget&) -> json {
           auto const in = input(o.files[0]);
           auto       r  = is_essential_equivalence(io::load_functor(in.doc, in.dir));
           json       j{{"essential_equivalence", r.yes}};
           if (!r.yes)
             j["reason"] = r.reason, j["witness"] = r.witness;
           return j;
         }},
        {"tensor", "tensor product of two bibundles", 2,
         [](Options const& o, Budget&) -> json {
           auto T = tensor(bibundle(input(o.files[0])), bibundle(input(o.files[1])));
           json j = kind_json(classify_bundle(T));
           j["bundle"] = io::dump_bibundle(T);
           return j;
         }},
        {"invert", "inverse of an invertible bibundle", 1,
         [](Options const& o, Budget& b) -> json {
           return {{"inverse", io::dump_bibundle(invert(bibundle(input(o.files[0])), b))}};
         }},
        {"iso", "isomorphism of two bibundles", 2,
         [](Options const& o, Budget& b) -> json {
           auto E = bibundle(input(o.files[0]));
           auto F = bibundle(input(o.files[1]));
           auto m = are_isomorphic(E, F, b);
           json j{{"isomorphic", m.has_value()}};
           if (m) {
             json map = json::object();
             for (std::size_t e = 0; e < m->size(); ++e)
               map[E.id(int(e))] = F.id((*m)[e]);
             j["map"] = map;
           }
           return j;
         }},
        {"morita", "Morita equivalence of two groupoids", 2,
         [](Options const& o, Budget& b) -> json {
           auto g = groupoid(input(o.files[0]));
           auto h = groupoid(input(o.files[1]));
           auto r = morita_equivalent(g, h, b);
           json j{{"verdict", to_string(r.verdict)}};
           if (!r.reason.empty())
             j["reason"] = r.reason;
           if (r.witness)
             j["witness"] = io::dump_bibundle(*r.witness);
           return j;
         }},
        {"leaves", "leaves and holonomy groups of a transitive bundle", 1,
         [](Options const& o, Budget&) -> json {
           auto E  = bibundle(input(o.files[0]));
           auto ls = leaves(E);
           auto cj = check_leaf_conjugation(E);
           auto as = check_associated_leaves(E);
           json j{{"leaves", io::dump_leaves(E, ls)}, {"conjugation_ok", cj.ok}, {"associated_ok", !as.has_value()}};
           if (!cj.ok)
             j["conjugation_failure"] = cj.failure;
           if (as)
             j["associated_failure"] = *as;
           return j;
         }},
        {"holonomy", "holonomy of --loop (comma-separated morphisms, @x for a point step) at element --base", 1,
         [](Options const& o, Budget&) -> json {
           auto E = bibundle(input(o.files[0]));
           if (!o.base)
             throw SchemaError("--base names the starting element");
           int const e = E.element(*o.base);
           HLoop     l{E.w[e], {}};
           for (auto const& s : split(o.loop)) {
             if (s[0] == '@')
               l.steps.push_back({LoopStep::point, E.right->object(s.substr(1))});
             else
               l.steps.push_back({LoopStep::morphism, E.right->morphism(s)});
           }
           return {{"element", E.id(e)},
                   {"endpoint", E.id(lift_loop(E, e, l))},
                   {"holonomy", E.left->morphism_id(holonomy_of_loop(E, e, l))}};
         }},
        {"sigma", "bundle glued from a cocycle", 1,
         [](Options const& o, Budget&) -> json {
           return {{"bundle", io::dump_bibundle(sigma(cocycle(input(o.files[0]))))}};
         }},
        {"extract-cocycle", "cocycle of a principal bundle over a space", 1,
         [](Options const& o, Budget&) -> json {
           return {{"cocycle", io::dump_cocycle(extract_cocycle(bibundle(input(o.files[0]))).cocycle)}};
         }},
        {"cohomologous", "are two cocycles on one cover cohomologous", 2,
         [](Options const& o, Budget& b) -> json {
           auto c  = cocycle(input(o.files[0]));
           auto c2 = cocycle(input(o.files[1]));
           auto r  = cohomologous(c, c2, b);
           json j{{"cohomologous", r.has_value()}};
           if (r) {
             json w = json::array();
             for (auto const& row : *r) {
               json v = json::array();
               for (int g : row)
                 v.push_back(g < 0 ? json(nullptr) : json(c.target->morphism_id(g)));
               w.push_back(v);
             }
             j["intertwiner"] = w;
           }
           return j;
         }},
        {"homology", "H_n with --coefficients Z or Z/m", 1,
         [](Options const& o, Budget&) -> json {
           std::size_t const n = o.n.value_or(0);
           auto const        c = chains(space(input(o.files[0])), n + 2);
           return io::dump_homology(n, groupoid_homology(c, n, coefficients(o.coefficients)));
         }},
        {"balanced", "balanced homology BH_n", 1,
         [](Options const& o, Budget&) -> json {
           std::size_t const n = o.n.value_or(0);
           auto const        r = balanced_homology(chains(space(input(o.files[0])), n + 2), n);
           json              j = io::dump_homology(n, r.group);
           j["sequence_exact"]  = r.sequence.exact;
           return j;
         }},
        {"mv-check", "Mayer-Vietoris exactness for invariant vertex sets --U and --V up to --n", 1,
         [](Options const& o, Budget&) -> json {
           auto const in = input(o.files[0]);
           auto const a  = io::load_action(in.doc, in.dir);
           auto const r  = mayer_vietoris_check(a, vertex_list(a.complex, o.U), vertex_list(a.complex, o.V),
                                                o.n.value_or(1));
           return {{"exact", r.sequence.exact}, {"failures", r.sequence.failures}};
         }},
        {"pi1", "fundamental group at --base", 1,
         [](Options const& o, Budget&) -> json {
           auto const s = space(input(o.files[0]));
           if (!s.simplicial) {
             int  a = object_of(*s.groupoid, o.base);
             json j = group_json(pi1_discrete(*s.groupoid, a));
             j["object"] = s.groupoid->object_id(a);
             return j;
           }
           int const v = o.base ? s.action.complex.vertices().at(*o.base, "vertex") : 0;
           auto      r = pi1_action_groupoid(s.action, v);
           return {{"groupoid", io::dump_presentation(r.groupoid)},
                   {"space", io::dump_presentation(r.space)},
                   {"abelianization", io::dump_invariants(abelianization(r.groupoid))},
                   {"index", r.index.index},
                   {"index_verdict", to_string(r.index.verdict)},
                   {"group_order", r.group_order},
                   {"composite_trivial", r.composite_trivial},
                   {"projection_onto", r.projection_onto},
                   {"subdivided", r.subdivided}};
         }},
        {"algebra", "structure constants of the convolution algebra", 1,
         [](Options const& o, Budget&) -> json { return io::dump_algebra(groupoid_algebra(groupoid(input(o.files[0])))); }},
        {"bimodule", "convolution bimodule of a principal bibundle", 1,
         [](Options const& o, Budget&) -> json {
           return io::dump_bimodule(bimodule_of_bibundle(bibundle(input(o.files[0]))));
         }},
        {"mho-check", "is C(E) balanced-tensor C(F) -> C(E tensor F) a bimodule isomorphism", 2,
         [](Options const& o, Budget&) -> json {
           auto r = mho_iso_check(bibundle(input(o.files[0])), bibundle(input(o.files[1])));
           json j{{"dim_lhs", r.source_dim},
                  {"dim_rhs", r.target_dim},
                  {"bijective", r.bijective},
                  {"well_defined", r.well_defined},
                  {"equivariant", r.equivariant}};
           if (!r.failure.empty())
             j["failure"] = r.failure;
           return j;
         }},
        {"algebra-morita", "Morita equivalence of convolution algebras with verified round trips", 2,
         [](Options const& o, Budget& b) -> json {
           auto r = algebra_morita_check(groupoid(input(o.files[0])), groupoid(input(o.files[1])), b);
           json j{{"verdict", to_string(r.verdict)}};
           if (!r.reason.empty())
             j["reason"] = r.reason;
           if (r.module) {
             j["module_dim"]         = r.module->dim();
             j["inverse_module_dim"] = r.inverse_module->dim();
             j["left_round_trip"]    = r.left_trip.ok;
             j["right_round_trip"]   = r.right_trip.ok;
           }
           return j;
         }},
    };
    return table;
  }

  inline int run(std::vector<std::string> args, std::ostream& out) {
    CLI::App app{"Finite groupoids, bibundles and their invariants", "groupoidal"};
    Options  o;
    app.add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--budget", o.budget, "search budget in nodes (default GROUPOIDAL_BUDGET or 1000000)");
    app.add_option("--n", o.n, "degree");
    app.add_option("--base", o.base, "object, vertex or element");
    app.add_option("--loop", o.loop, "loop steps for holonomy");
    app.add_option("--coefficients", o.coefficients, "Z or Z/m");
    app.add_option("--U", o.U, "comma-separated vertices");
    app.add_option("--V", o.V, "comma-separated vertices");
    app.require_subcommand(1);
    app.fallthrough();
    Command const* chosen = nullptr;
    for (auto const& c : commands()) {
      auto* sub = app.add_subcommand(c.name, c.help);
      sub->add_option("files", o.files, "input files or builder strings")->expected(int(c.files))->required();
      sub->fallthrough();
      sub->callback([&chosen, &c] { chosen = &c; });
    }
    std::reverse(args.begin(), args.end());
    auto fail = [&](Error const& e) {
      json const j = detail::error_json(e);
      out << (o.format == "text" ? detail::text(j["error"]) : j.dump() + "\n");
      return int(e.error_class());
    };
    try {
      app.parse(args);
    } catch (CLI::Success const&) {
      out << app.help();
      return 0;
    } catch (CLI::ParseError const& e) {
      return fail(SchemaError(e.what(), {"usage"}));
    }
    try {
      Budget     budget(o.budget.value_or(Budget::from_env()));
      json const r = chosen->handler(o, budget);
      out << (o.format == "text" ? detail::text(r) : r.dump() + "\n");
      return 0;
    } catch (Error const& e) {
      return fail(e);
    } catch (json::exception const& e) {
      return fail(SchemaError(e.what()));
    }
  }

}  // namespace groupoidal::cli
