// Acceptance run: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails. Searches use a budget of 10^6 nodes.
#include <groupoidal/cli.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "corpus.hpp"

using namespace groupoidal;

namespace {

  constexpr std::uint64_t search_budget = 1'000'000;

  struct Outcome {
    bool        ok = true;
    std::string detail;
    std::size_t checks = 0;

    void expect(bool cond, std::string const& what) {
      ++checks;
      if (!cond && ok) {
        ok     = false;
        detail = what;
      } else if (!cond) {
        detail += "; " + what;
      }
    }
  };

  std::optional<std::vector<int>> iso(Bibundle const& E, Bibundle const& F) {
    Budget b(search_budget);
    auto   m = are_isomorphic(E, F, b);
    if (m && !is_equivariant_iso(E, F, *m))
      throw std::logic_error("isomorphism witness does not verify");
    return m;
  }

  bool throws_code(std::function<void()> const& f, std::string const& code) {
    try {
      f();
    } catch (Error const& e) {
      for (auto const& v : e.violations())
        if (v.code == code)
          return true;
    }
    return false;
  }

  // Associativity, units and inverses straight from the tables.
  bool axioms_by_brute_force(FiniteGroupoid const& g) {
    std::size_t const n = g.num_morphisms();
    for (std::size_t a = 0; a < n; ++a) {
      int ia = int(a);
      if (g.comp(g.unit(g.cod(ia)), ia) != ia || g.comp(ia, g.unit(g.dom(ia))) != ia)
        return false;
      if (g.comp(ia, g.inv(ia)) != g.unit(g.cod(ia)) || g.comp(g.inv(ia), ia) != g.unit(g.dom(ia)))
        return false;
      for (std::size_t b = 0; b < n; ++b) {
        int ab = g.comp(ia, int(b));
        if ((ab >= 0) != (g.dom(ia) == g.cod(int(b))))
          return false;
        if (ab < 0)
          continue;
        for (std::size_t c = 0; c < n; ++c) {
          int bc = g.comp(int(b), int(c));
          if (bc >= 0 && g.comp(ab, int(c)) != g.comp(ia, bc))
            return false;
        }
      }
    }
    return true;
  }

  Outcome axiom_suites() {
    Outcome o;
    for (auto const& [name, g] : corpus::groupoids().all()) {
      o.expect(FiniteGroupoid::check(g->to_raw()).empty(), name + " fails validation");
      o.expect(axioms_by_brute_force(*g), name + " fails the brute-force axioms");
    }
    for (char const* file : {"pair3.json", "cyclic4.json"}) {
      auto g = io::load_groupoid(io::read_json(std::filesystem::path(GROUPOIDAL_SAMPLES) / file));
      o.expect(axioms_by_brute_force(*g), std::string(file) + " fails the brute-force axioms");
    }
    auto const c4 = cyclic(4).to_raw();
    auto const p3 = pair_groupoid(3).to_raw();
    auto       corrupt = [&](RawGroupoid raw, std::string const& code, auto&& edit) {
      edit(raw);
      o.expect(throws_code([&] { FiniteGroupoid::validate(raw); }, code), "corruption not reported as " + code);
    };
    corrupt(p3, "MissingComposite", [](RawGroupoid& r) { r.comp.pop_back(); });
    corrupt(c4, "NonAssociative", [](RawGroupoid& r) {
      for (auto& t : r.comp)
        if (t[0] == "r1" && t[1] == "r1")
          t[2] = "r3";
    });
    corrupt(c4, "BadInverse", [](RawGroupoid& r) { r.inv["r1"] = "r1"; });
    corrupt(c4, "MissingUnit", [](RawGroupoid& r) { r.unit["*"] = "r2"; });
    corrupt(p3, "DomCodMismatch", [](RawGroupoid& r) {
      for (auto& m : r.morphisms)
        if (m.id == "(0,1)")
          m.dom = "2";
    });
    o.detail = o.ok ? std::to_string(corpus::groupoids().all().size() + 2) + " groupoids, 5 corruptions" : o.detail;
    return o;
  }

  Outcome category_laws() {
    Outcome     o;
    auto const  fs  = corpus::functors();
    std::size_t pairs = 0, triples = 0;
    std::set<FiniteGroupoid const*> touched;
    for (auto const& [nf, f] : fs) {
      touched.insert(f.source.get());
      touched.insert(f.target.get());
      auto const P = functor_bibundle(f);
      o.expect(iso(tensor(unit_bibundle(f.target), P), P).has_value(), "left unit law fails for " + nf);
      o.expect(iso(tensor(P, unit_bibundle(f.source)), P).has_value(), "right unit law fails for " + nf);
      for (auto const& [ng, g] : fs) {
        if (!same_groupoid(f.target, g.source))
          continue;
        ++pairs;
        o.expect(iso(tensor(functor_bibundle(g), P), functor_bibundle(compose(g, f))).has_value(),
                 "<" + ng + "> ⊗ <" + nf + "> differs from the composite");
      }
    }
    auto const bs = corpus::bibundles();
    for (auto const& [ne, E] : bs)
      for (auto const& [nf, F] : bs) {
        if (!same_groupoid(E.right, F.left))
          continue;
        auto const EF = tensor(E, F);
        for (auto const& [nk, K] : bs) {
          if (!same_groupoid(F.right, K.left))
            continue;
          ++triples;
          o.expect(iso(tensor(EF, K), tensor(E, tensor(F, K))).has_value(),
                   "associativity fails on " + ne + ", " + nf + ", " + nk);
        }
      }
    o.expect(fs.size() >= 10 && touched.size() >= 6, "corpus too small");
    if (o.ok)
      o.detail = std::to_string(fs.size()) + " functors over " + std::to_string(touched.size()) + " groupoids, "
                 + std::to_string(pairs) + " composable pairs, " + std::to_string(triples) + " triples";
    return o;
  }

  Outcome tensor_classification() {
    Outcome     o;
    auto const  bs = corpus::bibundles();
    std::size_t principal = 0, transitive = 0;
    for (auto const& [ne, E] : bs)
      for (auto const& [nf, F] : bs) {
        if (!same_groupoid(E.right, F.left))
          continue;
        auto const ke = classify_bundle(E), kf = classify_bundle(F);
        auto const kt = classify_bundle(tensor(E, F));
        if (ke.principal && kf.principal) {
          ++principal;
          o.expect(kt.principal, ne + " ⊗ " + nf + " not principal");
        }
        if (ke.transitive && kf.transitive) {
          ++transitive;
          o.expect(kt.transitive, ne + " ⊗ " + nf + " not transitive");
        }
      }
    if (o.ok)
      o.detail = std::to_string(principal) + " principal pairs, " + std::to_string(transitive) + " transitive pairs";
    return o;
  }

  Outcome invertibility() {
    Outcome     o;
    std::size_t invertible = 0;
    for (auto const& [nf, f] : corpus::functors()) {
      bool const ess = is_essential_equivalence(f).yes;
      auto const P   = functor_bibundle(f);
      std::optional<Bibundle> inv;
      try {
        Budget b(search_budget);
        inv = invert(P, b);
      } catch (ValidationError const& e) {
        o.expect(e.code() == "NotInvertible", nf + ": unexpected " + e.what());
      }
      o.expect(inv.has_value() == ess, nf + ": invert disagrees with essential equivalence");
      if (inv) {
        ++invertible;
        o.expect(iso(tensor(P, *inv), unit_bibundle(f.target)).has_value(), nf + ": E ⊗ E⁻¹ is not the unit");
        o.expect(iso(tensor(*inv, P), unit_bibundle(f.source)).has_value(), nf + ": E⁻¹ ⊗ E is not the unit");
      }
    }
    auto const pt = share(point());
    for (int n = 1; n <= 5; ++n) {
      auto const g = share(pair_groupoid(n));
      Budget     b(search_budget);
      auto const r = morita_equivalent(g, pt, b);
      o.expect(r.verdict == Verdict::yes && r.witness && r.inverse, "pair(" + std::to_string(n) + ") not equivalent to a point");
      if (r.witness && r.inverse) {
        o.expect(iso(tensor(*r.witness, *r.inverse), unit_bibundle(g)).has_value(), "round trip over pair fails");
        o.expect(iso(tensor(*r.inverse, *r.witness), unit_bibundle(pt)).has_value(), "round trip over point fails");
      }
    }
    o.expect(morita_equivalent(share(cyclic(2)), share(cyclic(3))).verdict == Verdict::no, "cyclic(2) ~ cyclic(3)");
    if (o.ok)
      o.detail = std::to_string(invertible) + " invertible functor bundles, pair(1..5) ~ point, cyclic(2) !~ cyclic(3)";
    return o;
  }

  Outcome cocycle_round_trips() {
    Outcome    o;
    auto const cs = corpus::cocycles();
    for (auto const& [name, c] : cs) {
      auto const E  = sigma(c);
      auto const ex = extract_cocycle(E);
      o.expect(iso(sigma(ex.cocycle, E.right), E).has_value(), name + ": sigma of the extracted cocycle differs");
      bool found = false;
      for (auto const& tau : refinement_maps(c.cover, ex.cocycle.cover)) {
        Budget b(search_budget);
        if (cohomologous(refine(c, ex.cocycle.cover, tau), ex.cocycle, b)) {
          found = true;
          break;
        }
      }
      o.expect(found, name + ": extracted cocycle is not cohomologous to the original");
    }
    auto const& g   = corpus::groupoids();
    auto const  tw  = sigma(corpus::circle(g.c2, "r1"));
    auto const  tri = sigma(constant_cocycle(four_point_circle(), g.c2, 0));
    o.expect(!iso(tw, tri).has_value(), "twisted and trivial bundles are isomorphic");
    if (o.ok)
      o.detail = std::to_string(cs.size()) + " cocycles; twisted and trivial circle bundles not isomorphic";
    return o;
  }

  // Morphism steps out of y, and point steps to neighbours of y.
  std::vector<LoopStep> steps_from(Bibundle const& E, int y) {
    std::vector<LoopStep> out;
    for (int h : E.right->from(y))
      out.push_back({LoopStep::morphism, h});
    for (std::size_t z = 0; z < E.right->num_objects(); ++z)
      if (int(z) != y && groupoidal::detail::neighbours(E.topology, y, int(z)))
        out.push_back({LoopStep::point, int(z)});
    return out;
  }

  int step_end(Bibundle const& E, LoopStep s) { return s.kind == LoopStep::morphism ? E.right->cod(s.index) : s.index; }

  std::vector<HLoop> short_loops(Bibundle const& E, int b) {
    std::vector<HLoop> out;
    for (auto s1 : steps_from(E, b)) {
      int y = step_end(E, s1);
      if (y == b)
        out.push_back({b, {s1}});
      for (auto s2 : steps_from(E, y))
        if (step_end(E, s2) == b)
          out.push_back({b, {s1, s2}});
    }
    return out;
  }

  Outcome leaves_and_holonomy() {
    Outcome         o;
    auto            bs = corpus::bibundles();
    for (auto const& [name, c] : corpus::cocycles())
      bs.push_back({"sigma " + name, sigma(c)});
    std::size_t nleaves = 0, formula = 0, pushed = 0;
    for (auto const& [name, E] : bs) {
      auto const k = classify_bundle(E);
      if (!k.transitive)
        continue;
      auto const ls = leaves(E);
      nleaves += ls.size();
      auto const cj = check_leaf_conjugation(E);
      o.expect(cj.ok, name + ": " + cj.failure);
      auto const as = check_associated_leaves(E);
      o.expect(!as, name + ": " + as.value_or(""));
      if (!k.principal)
        continue;
      for (auto const& l : ls)
        o.expect(holonomy_acts_freely(E, l), name + ": holonomy does not act freely");
      auto const pf = effect_pushforward(E);
      for (std::size_t e = 0; e < E.size(); ++e)
        for (auto const& loop : short_loops(E, E.w[e])) {
          int lhs = pf.map.psi.mor[std::size_t(holonomy_of_loop(E, int(e), loop))];
          int rhs = holonomy_of_loop(pf.bundle, pf.map.map[e], push_loop(pf.map.phi, loop));
          ++pushed;
          o.expect(lhs == rhs, name + ": pushforward identity fails");
        }
    }
    for (auto const& [name, f] : corpus::functors()) {
      auto const  E = functor_bibundle(f);
      auto const& G = *f.target;
      auto const& H = *f.source;
      for (std::size_t b = 0; b < H.num_objects(); ++b) {
        int const e = E.element("(" + G.morphism_id(G.unit(f.obj[b])) + "," + H.object_id(int(b)) + ")");
        for (int h1 : H.from(int(b))) {
          if (H.cod(h1) == int(b)) {
            ++formula;
            o.expect(holonomy_of_loop(E, e, {int(b), {{LoopStep::morphism, h1}}}) == f.mor[std::size_t(h1)],
                     name + ": one-step holonomy");
          }
          for (int h2 : H.hom(H.cod(h1), int(b))) {
            ++formula;
            int expected = G.comp(f.mor[std::size_t(h2)], f.mor[std::size_t(h1)]);
            o.expect(holonomy_of_loop(E, e, {int(b), {{LoopStep::morphism, h1}, {LoopStep::morphism, h2}}}) == expected,
                     name + ": two-step holonomy");
          }
        }
      }
    }
    if (o.ok)
      o.detail = std::to_string(nleaves) + " leaves, " + std::to_string(formula) + " formula loops, "
                 + std::to_string(pushed) + " pushforward loops";
    return o;
  }

  AbelianInvariants Z() { return {1, {}}; }
  AbelianInvariants zero() { return {}; }

  Outcome homology_values() {
    Outcome o;
    auto    t0 = std::chrono::steady_clock::now();
    for (int k : {2, 3, 5}) {
      auto const c = groupoid_chain_complex(cyclic(k), 5);
      for (std::size_t n = 0; n <= 3; ++n)
        o.expect(groupoid_homology(c, n) == (n == 0 ? Z() : zero()),
                 "H_" + std::to_string(n) + "(cyclic(" + std::to_string(k) + "))");
    }
    for (auto [k, m] : std::vector<std::pair<int, int>>{{2, 3}, {3, 3}, {4, 3}}) {
      auto const a = rotation_action(k, m);
      auto const c = groupoid_chain_complex(a, 4);
      // the quotient is an m-cycle, built directly
      auto const q  = cycle_complex(m).chain_complex(4);
      auto const q2 = quotient_complex(a).chain_complex(4);
      std::string const tag = "Rot(" + std::to_string(k) + "," + std::to_string(m) + ")";
      for (std::size_t n = 0; n <= 3; ++n) {
        o.expect(groupoid_homology(c, n) == homology(q, n), tag + " H_" + std::to_string(n));
        o.expect(homology(q2, n) == homology(q, n), tag + " orbit complex H_" + std::to_string(n));
      }
      o.expect(balanced_homology(c, 0).group == AbelianInvariants{0, {Integer(k)}}, tag + " BH_0");
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.expect(secs < 5.0, "took " + std::to_string(secs) + " s");
    if (o.ok) {
      std::ostringstream s;
      s << o.checks << " values in " << secs << " s";
      o.detail = s.str();
    }
    return o;
  }

  Outcome exactness() {
    Outcome     o;
    std::size_t splits = 0;
    for (auto const& [name, g] : corpus::groupoids().all()) {
      ++splits;
      o.expect(check_splitting(groupoid_chain_complex(*g, 4)), name + " does not split");
    }
    std::size_t les = 0;
    for (auto const& [name, a] : corpus::actions()) {
      auto const c = groupoid_chain_complex(a, 4);
      ++splits;
      o.expect(check_splitting(c), name + " does not split");
      ++les;
      auto const r = balanced_homology(c, 2);
      o.expect(r.sequence.exact, name + ": balanced sequence not exact");
    }
    // Invariant vertex sets by orbit residue: U misses residue m-1, V misses 1.
    std::size_t mv = 0;
    for (auto [k, m] : std::vector<std::pair<int, int>>{{2, 4}, {3, 4}, {2, 5}, {1, 4}}) {
      auto const       a = rotation_action(k, m);
      std::vector<int> U, V;
      for (int i = 0; i < k * m; ++i) {
        int v = a.complex.vertices().at("v" + padded(std::size_t(i), std::size_t(k * m)));
        if (i % m != m - 1)
          U.push_back(v);
        if (i % m != 1)
          V.push_back(v);
      }
      ++mv;
      auto const r = mayer_vietoris_check(a, U, V, 2);
      o.expect(r.sequence.exact, "Mayer-Vietoris not exact on Rot(" + std::to_string(k) + "," + std::to_string(m) + ")");
    }
    auto const c   = groupoid_chain_complex(rotation_action(2, 3), 4);
    auto const Z2  = PresentedGroup::from_invariants({0, {Integer(2)}});
    auto const cof = coefficient_les_check(c, PresentedGroup::free(1), PresentedGroup::free(1), Z2, IntMatrix{{2}},
                                           IntMatrix{{1}}, 2);
    o.expect(cof.exact, "coefficient sequence not exact on Rot(2,3)");
    if (o.ok)
      o.detail = std::to_string(splits) + " splittings, " + std::to_string(les) + " balanced sequences, "
                 + std::to_string(mv) + " Mayer-Vietoris, coefficient sequence";
    return o;
  }

  Outcome effect_invariance() {
    Outcome o;
    for (auto const& [name, g] : corpus::groupoids().all()) {
      auto const r = effect_homology_check(g, 3);
      o.expect(r.all(), name + ": effect changes homology");
    }
    if (o.ok)
      o.detail = std::to_string(o.checks) + " groupoids, degrees 0..3";
    return o;
  }

  Outcome fundamental_groups() {
    Outcome o;
    for (int k = 2; k <= 6; ++k) {
      auto const g = pi1_discrete(cyclic(k), 0);
      bool       cyc = false;
      for (std::size_t x = 0; x < g.order(); ++x)
        cyc = cyc || g.element_order(int(x)) == k;
      o.expect(g.order() == std::size_t(k) && cyc, "pi1(cyclic(" + std::to_string(k) + "))");
    }
    for (auto const& [name, a] : corpus::actions()) {
      auto const p  = pi1_action_groupoid(a, 0);
      auto const h1 = groupoid_homology(groupoid_chain_complex(a, 3), 1);
      o.expect(abelianization(p.groupoid) == h1, name + ": abelianization differs from H_1");
    }
    auto const r = pi1_action_groupoid(rotation_action(2, 3), 0);
    o.expect(r.index.verdict == Verdict::yes && r.index.index == 2, "index on Rot(2,3)");
    if (o.ok)
      o.detail = "cyclic(2..6), " + std::to_string(corpus::actions().size()) + " actions, Rot(2,3) index 2";
    return o;
  }

  RatVector random_vector(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<int> d(-3, 3);
    RatVector                          v(n);
    for (auto& x : v)
      x = Rational(d(rng), 1 + (d(rng) + 3) % 3);
    return v;
  }

  Outcome algebra() {
    Outcome o;
    for (int n = 1; n <= 4; ++n) {
      auto const  g = share(pair_groupoid(n));
      auto const  A = groupoid_algebra(g);
      std::size_t const d = A.dim();
      // e_ij e_kl = δ_jk e_il, with e_ij the morphism from j to i
      std::vector<Rational> expected(d * d * d), actual(d * d * d);
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
          if (g->dom(int(a)) == g->cod(int(b))) {
            int il = g->hom(g->dom(int(b)), g->cod(int(a))).front();
            expected[(a * d + b) * d + std::size_t(il)] = 1;
          }
      for (auto const& s : structure_constants(A))
        actual[(s.i * d + s.j) * d + s.k] = s.value;
      o.expect(expected == actual, "matrix units fail for pair(" + std::to_string(n) + ")");
    }
    std::vector<Bibundle> principal;
    for (auto const& [name, E] : corpus::bibundles())
      if (classify_bundle(E).principal)
        principal.push_back(E);
    std::vector<std::array<std::size_t, 3>> triples;
    for (std::size_t i = 0; i < principal.size(); ++i)
      for (std::size_t j = 0; j < principal.size(); ++j)
        for (std::size_t k = 0; k < principal.size(); ++k)
          if (same_groupoid(principal[i].right, principal[j].left)
              && same_groupoid(principal[j].right, principal[k].left))
            triples.push_back({i, j, k});
    std::mt19937 rng(20240613);
    for (int t = 0; t < 100; ++t) {
      auto const [i, j, k] = triples[std::uniform_int_distribution<std::size_t>(0, triples.size() - 1)(rng)];
      auto const& E = principal[i];
      auto const& F = principal[j];
      auto const& K = principal[k];
      auto const  m = random_vector(rng, E.size()), m2 = random_vector(rng, F.size()), m3 = random_vector(rng, K.size());
      auto const  lhs = wp(tensor(E, F), K, wp(E, F, m, m2), m3);
      auto const  rhs = wp(E, tensor(F, K), m, wp(F, K, m2, m3));
      auto const  a   = associator(E, F, K);
      bool        eq  = lhs.size() == a.size() && rhs.size() == a.size();
      for (std::size_t c = 0; eq && c < a.size(); ++c)
        eq = lhs[c] == rhs[std::size_t(a[c])];
      o.expect(eq, "pairing not associative on triple " + std::to_string(t));
    }
    std::size_t mhos = 0;
    for (auto const& E : principal)
      for (auto const& F : principal)
        if (same_groupoid(E.right, F.left) && E.size() <= 12 && F.size() <= 12) {
          ++mhos;
          auto const r = mho_iso_check(E, F);
          o.expect(r.ok(), "tensor map fails: " + r.failure);
        }
    Budget     b(search_budget);
    auto const am = algebra_morita_check(share(pair_groupoid(3)), share(point()), b);
    o.expect(am.verdict == Verdict::yes && am.left_trip.ok && am.right_trip.ok && am.module
                 && check_bimodule(*am.module).empty() && check_bimodule(*am.inverse_module).empty(),
             "pair(3) and point algebras: " + am.reason);
    if (o.ok)
      o.detail = "matrix units n <= 4, 100 pairing triples, " + std::to_string(mhos)
                 + " tensor maps bijective, pair(3) ~ point with invertible bimodules";
    return o;
  }

  std::vector<std::vector<std::string>> cli_suite() {
    std::string const s = GROUPOIDAL_SAMPLES;
    auto              f = [&](char const* name) { return s + "/" + name; };
    return {
        {"validate", f("pair3.json")},
        {"validate", f("broken_groupoid.json")},
        {"info", f("cyclic4.json")},
        {"orbits", "rot(2,3)"},
        {"vertex-group", f("cyclic4.json")},
        {"effect", f("cyclic4.json")},
        {"ess-equiv", f("c4_to_point.json")},
        {"tensor", f("pair3_point.json"), f("pair3_point.json")},
        {"invert", f("pair3_point.json")},
        {"invert", f("bundle_c4_point.json")},
        {"iso", f("unit_c3.json"), f("unit_c3.json")},
        {"morita", "pair(3)", "point"},
        {"morita", "cyclic(2)", "cyclic(3)"},
        {"leaves", f("unit_c3.json")},
        {"holonomy", f("unit_c3.json"), "--base", "r0", "--loop", "r1,r1"},
        {"sigma", f("circle_twisted.json")},
        {"cohomologous", f("circle_twisted.json"), f("circle_trivial.json")},
        {"homology", f("rot33.json"), "--n", "1"},
        {"homology", "cyclic(4)", "--n", "1", "--coefficients", "Z/2"},
        {"balanced", f("rot23.json"), "--n", "0"},
        {"mv-check", f("rot23.json"), "--U", "v0,v1,v3,v4", "--V", "v0,v1,v2,v3,v4,v5"},
        {"pi1", f("rot23.json")},
        {"pi1", "cyclic(5)"},
        {"algebra", "pair(2)"},
        {"bimodule", f("unit_c3.json")},
        {"mho-check", f("unit_c3.json"), f("unit_c3.json")},
        {"algebra-morita", "pair(3)", "point"},
        {"--format", "text", "info", "pair(3)"},
        {"--budget", "1", "iso", f("pair3_point.json"), f("pair3_point.json")},
    };
  }

  std::string run_suite() {
    std::ostringstream all;
    for (auto const& args : cli_suite()) {
      std::ostringstream out;
      int                code = cli::run(args, out);
      all << code << " " << out.str();
    }
    return all.str();
  }

  Outcome determinism() {
    Outcome           o;
    std::string const a = run_suite(), b = run_suite();
    o.expect(a == b, "reports differ between runs");
    o.expect(a.find("{\"kind\":\"groupoid\",\"morphisms\":9,\"objects\":3,\"orbits\":1}") != std::string::npos,
             "validate summary missing");
    o.expect(a.find("{\"n\":1,\"rank\":1,\"torsion\":[]}") != std::string::npos, "homology report missing");
    o.expect(a.find("{\"bijective\":true,\"dim_lhs\":3,\"dim_rhs\":3") != std::string::npos, "tensor map report missing");
    if (o.ok)
      o.detail = std::to_string(cli_suite().size()) + " commands, " + std::to_string(a.size()) + " bytes identical";
    return o;
  }

}  // namespace

int main() {
  std::vector<std::pair<char const*, std::function<Outcome()>>> const criteria = {
      {"axiom suites", axiom_suites},
      {"category laws", category_laws},
      {"tensor classification", tensor_classification},
      {"invertibility and Morita", invertibility},
      {"cocycle round trips", cocycle_round_trips},
      {"leaves and holonomy", leaves_and_holonomy},
      {"homology values", homology_values},
      {"exactness", exactness},
      {"effect invariance", effect_invariance},
      {"fundamental groups", fundamental_groups},
      {"convolution algebra", algebra},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto const t0 = std::chrono::steady_clock::now();
    Outcome    o;
    try {
      o = criteria[i].second();
    } catch (std::exception const& e) {
      o.ok     = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += o.ok ? 0 : 1;
    std::printf("criterion %2zu %-26s %s  %s (%.2f s)\n", i + 1, criteria[i].first, o.ok ? "PASS" : "FAIL",
                o.detail.c_str(), secs);
  }
  return failures == 0 ? 0 : 1;
}
