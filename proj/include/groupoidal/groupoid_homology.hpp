// Chain complexes of groupoids and the checks built on them.
//
// For a groupoid G the complex S(G) is the cokernel of cod# - dom# on the
// chains of the morphisms, the chains of the objects modulo the action. Two
// models are provided:
//   * discrete tier: G0 and G1 are finite discrete spaces, so S(G0) is the
//     singular complex of |G0| points (Z in each degree per point, with the
//     identity as differential in even degrees >= 2);
//   * simplicial tier: G is the action groupoid of a free, regular
//     simplicial action, and S(G0) is the simplicial chain complex, with
//     S(G) the coinvariants (orbit basis with orientation signs).
// The balanced complex BS(G) is the kernel of S(G0) -> S(G).

#pragma once

#include <string>
#include <vector>

#include "chain_complex.hpp"
#include "groupoid.hpp"
#include "groupoid_ops.hpp"
#include "simplicial.hpp"

namespace groupoidal {

  struct GroupoidChains {
    PresentedComplex objects;   // S(G0)
    PresentedComplex quotient;  // S(G)
    PresentedComplex balanced;  // BS(G)
    ChainMap         epsilon;   // S(G0) -> S(G)
    ChainMap         iota;      // BS(G) -> S(G0)
    ChainMap         section;   // S(G) -> S(G0), orbit -> representative

    ShortExactSequence sequence() const { return {balanced, objects, quotient, iota, epsilon}; }
  };

  namespace detail {
    // Given per-degree orbit labels and signs of the basis of a free complex,
    // builds the quotient and balanced complexes and the maps between them.
    inline GroupoidChains chains_from_orbits(PresentedComplex                     objects,
                                             std::vector<std::vector<int>> const& orbit,
                                             std::vector<std::vector<int>> const& sign,
                                             std::vector<std::vector<int>> const& reps) {
      GroupoidChains c;
      std::size_t const top = objects.top();
      std::vector<std::vector<int>> nonrep(top + 1);
      for (std::size_t n = 0; n <= top; ++n) {
        std::size_t const cn = objects.gens[n];
        std::size_t const on = reps[n].size();
        IntMatrix         eps(on, cn), sec(cn, on);
        for (std::size_t j = 0; j < cn; ++j)
          eps(std::size_t(orbit[n][j]), j) = sign[n][j];
        for (std::size_t o = 0; o < on; ++o)
          sec(std::size_t(reps[n][o]), o) = 1;
        std::vector<char> is_rep(cn, 0);
        for (int r : reps[n])
          is_rep[r] = 1;
        for (std::size_t j = 0; j < cn; ++j)
          if (!is_rep[j])
            nonrep[n].push_back(int(j));
        IntMatrix io(cn, nonrep[n].size());
        for (std::size_t k = 0; k < nonrep[n].size(); ++k) {
          int j = nonrep[n][k];
          io(std::size_t(j), k) += 1;
          io(std::size_t(reps[n][orbit[n][j]]), k) -= sign[n][j];
        }
        c.epsilon.m.push_back(std::move(eps));
        c.section.m.push_back(std::move(sec));
        c.iota.m.push_back(std::move(io));
      }
      std::vector<std::size_t> qg, bg;
      std::vector<IntMatrix>   qd, bd;
      for (std::size_t n = 0; n <= top; ++n) {
        qg.push_back(reps[n].size());
        bg.push_back(nonrep[n].size());
      }
      qd.emplace_back(0, qg[0]);
      bd.emplace_back(0, bg[0]);
      for (std::size_t n = 1; n <= top; ++n) {
        qd.push_back(c.epsilon.m[n - 1] * objects.d[n] * c.section.m[n]);
        IntMatrix full = objects.d[n] * c.iota.m[n];
        IntMatrix b(nonrep[n - 1].size(), nonrep[n].size());
        for (std::size_t k = 0; k < nonrep[n - 1].size(); ++k)
          for (std::size_t j = 0; j < nonrep[n].size(); ++j)
            b(k, j) = full(std::size_t(nonrep[n - 1][k]), j);
        bd.push_back(std::move(b));
      }
      c.objects  = std::move(objects);
      c.quotient = PresentedComplex::free(qg, qd);
      c.balanced = PresentedComplex::free(bg, bd);
      return c;
    }
  }  // namespace detail

  // Discrete tier, truncated at degree `top`.
  inline GroupoidChains groupoid_chain_complex(FiniteGroupoid const& g, std::size_t top) {
    Orbits const      o  = orbit_space(g);
    std::size_t const no = g.num_objects();
    std::vector<std::size_t> gens(top + 1, no);
    std::vector<IntMatrix>   d{IntMatrix(0, no)};
    for (std::size_t n = 1; n <= top; ++n)
      d.push_back(n % 2 == 0 ? IntMatrix::identity(no) : IntMatrix(no, no));
    std::vector<std::vector<int>> orbit(top + 1, o.orbit_of), sign(top + 1, std::vector<int>(no, 1)),
        reps(top + 1);
    for (auto const& b : o.blocks)
      for (std::size_t n = 0; n <= top; ++n)
        reps[n].push_back(b.front());
    return detail::chains_from_orbits(PresentedComplex::free(gens, d), orbit, sign, reps);
  }

  // Simplicial tier, truncated at degree `top`. Requires a free, regular action.
  inline GroupoidChains groupoid_chain_complex(SimplicialAction const& a, std::size_t top) {
    require_free_regular(a);
    auto const&                   K = a.complex;
    std::vector<std::vector<int>> orbit(top + 1), sign(top + 1), reps(top + 1);
    for (std::size_t n = 0; n <= top; ++n) {
      std::size_t const cn = K.count(n);
      orbit[n].assign(cn, -1);
      sign[n].assign(cn, 0);
      for (std::size_t i = 0; i < cn; ++i) {
        if (orbit[n][i] >= 0)
          continue;
        int const o = int(reps[n].size());
        reps[n].push_back(int(i));
        for (std::size_t g = 0; g < a.group.order(); ++g) {
          auto [j, s]  = a.act(n, i, int(g));
          orbit[n][j] = o;
          sign[n][j]  = s;
        }
      }
    }
    return detail::chains_from_orbits(K.chain_complex(top), orbit, sign, reps);
  }

  // H_n(G; A) and H^n(G; A).
  inline AbelianInvariants groupoid_homology(GroupoidChains const& c, std::size_t n,
                                             PresentedGroup const& A = PresentedGroup::free(1)) {
    return homology(tensor(c.quotient, A), n);
  }

  inline AbelianInvariants groupoid_cohomology(GroupoidChains const& c, std::size_t n,
                                               PresentedGroup const& A = PresentedGroup::free(1)) {
    return cohomology(c.quotient, n, A);
  }

  // The splitting of 0 -> BS -> S(G0) -> S(G) -> 0: epsilon∘section = 1 and
  // [iota | section] is unimodular in every degree.
  inline bool check_splitting(GroupoidChains const& c) {
    for (std::size_t n = 0; n <= c.objects.top(); ++n) {
      if (!(c.epsilon.m[n] * c.section.m[n] == IntMatrix::identity(c.quotient.gens[n])))
        return false;
      if (!(c.epsilon.m[n] * c.iota.m[n]).is_zero())
        return false;
      IntMatrix both = hcat(c.iota.m[n], c.section.m[n]);
      if (both.cols() != both.rows())
        return false;
      SmithForm s = smith_normal_form(both);
      if (s.rank != both.rows())
        return false;
      for (auto const& dv : s.diagonal)
        if (dv != 1)
          return false;
    }
    return true;
  }

  struct BalancedReport {
    AbelianInvariants group;  // BH_n
    LongExactReport   sequence;
  };

  // BH_n together with exactness of BH -> H(G0) -> H(G) -> BH up to degree n.
  inline BalancedReport balanced_homology(GroupoidChains const& c, std::size_t n) {
    BalancedReport r;
    r.sequence = check_long_exact(c.sequence(), n);
    r.group    = r.sequence.hx[n];
    return r;
  }

  namespace detail {
    // Inclusion of a full subcomplex on the simplex level.
    inline IntMatrix simplex_inclusion(SimplicialComplex const& sub, SimplicialComplex const& K, std::size_t n) {
      IntMatrix m(K.count(n), sub.count(n));
      for (std::size_t i = 0; i < sub.count(n); ++i) {
        Simplex s;
        for (int v : sub.simplex(n, i))
          s.push_back(K.vertices().at(sub.vertices()[v]));
        m(std::size_t(K.find(s)), i) = 1;
      }
      return m;
    }

    inline ChainMap quotient_inclusion(SimplicialAction const& sub, GroupoidChains const& cs,
                                       SimplicialAction const& whole, GroupoidChains const& cw) {
      ChainMap f;
      for (std::size_t n = 0; n <= cw.objects.top(); ++n)
        f.m.push_back(cw.epsilon.m[n] * simplex_inclusion(sub.complex, whole.complex, n) * cs.section.m[n]);
      return f;
    }

    inline PresentedComplex direct_sum(PresentedComplex const& a, PresentedComplex const& b) {
      std::vector<std::size_t> gens;
      std::vector<IntMatrix>   d;
      for (std::size_t n = 0; n <= a.top(); ++n)
        gens.push_back(a.gens[n] + b.gens[n]);
      d.emplace_back(0, gens[0]);
      for (std::size_t n = 1; n <= a.top(); ++n) {
        IntMatrix m(gens[n - 1], gens[n]);
        for (std::size_t i = 0; i < a.d[n].rows(); ++i)
          for (std::size_t j = 0; j < a.d[n].cols(); ++j)
            m(i, j) = a.d[n](i, j);
        for (std::size_t i = 0; i < b.d[n].rows(); ++i)
          for (std::size_t j = 0; j < b.d[n].cols(); ++j)
            m(a.gens[n - 1] + i, a.gens[n] + j) = b.d[n](i, j);
        d.push_back(std::move(m));
      }
      return PresentedComplex::free(gens, d);
    }
  }  // namespace detail

  struct MayerVietorisReport {
    LongExactReport sequence;  // X = S(G|U∩V), Y = S(G|U) ⊕ S(G|V), W = S(G)
  };

  // U and V are invariant vertex sets whose full subcomplexes cover every
  // simplex. Checks exactness of the Mayer-Vietoris sequence up to max_degree.
  inline MayerVietorisReport mayer_vietoris_check(SimplicialAction const& a, std::vector<int> U, std::vector<int> V,
                                                  std::size_t max_degree) {
    auto const& K = a.complex;
    std::sort(U.begin(), U.end());
    std::sort(V.begin(), V.end());
    std::vector<char> inU(K.num_vertices(), 0), inV(K.num_vertices(), 0);
    for (int v : U)
      inU[v] = 1;
    for (int v : V)
      inV[v] = 1;
    for (std::size_t n = 0; n <= std::size_t(std::max(K.dimension(), 0)); ++n)
      for (auto const& s : K.simplices(n)) {
        bool u = true, v = true;
        for (int x : s) {
          u = u && inU[x];
          v = v && inV[x];
        }
        if (!u && !v)
          throw ValidationError("NotCovering", {K.label(s)}, "simplex in neither piece");
      }
    std::vector<int> W;
    std::set_intersection(U.begin(), U.end(), V.begin(), V.end(), std::back_inserter(W));
    std::size_t const top = max_degree + 2;
    auto const        aU = restrict_action(a, U), aV = restrict_action(a, V), aW = restrict_action(a, W);
    auto const        cK = groupoid_chain_complex(a, top);
    auto const        cU = groupoid_chain_complex(aU, top);
    auto const        cV = groupoid_chain_complex(aV, top);
    auto const        cW = groupoid_chain_complex(aW, top);
    ChainMap const    iU = detail::quotient_inclusion(aW, cW, aU, cU);
    ChainMap const    iV = detail::quotient_inclusion(aW, cW, aV, cV);
    ChainMap const    jU = detail::quotient_inclusion(aU, cU, a, cK);
    ChainMap const    jV = detail::quotient_inclusion(aV, cV, a, cK);
    ShortExactSequence s;
    s.X = cW.quotient;
    s.Y = detail::direct_sum(cU.quotient, cV.quotient);
    s.W = cK.quotient;
    for (std::size_t n = 0; n <= top; ++n) {
      s.f.m.push_back(vcat(iU.m[n], -iV.m[n]));
      s.g.m.push_back(hcat(jU.m[n], jV.m[n]));
    }
    return {check_long_exact(s, max_degree)};
  }

  // Exactness of 0 -> A -> B -> C -> 0 as presented abelian groups.
  inline std::string check_module_ses(PresentedGroup const& A, PresentedGroup const& B, PresentedGroup const& C,
                                      IntMatrix const& alpha, IntMatrix const& beta) {
    auto point = [](PresentedGroup const& G) {
      PresentedComplex c;
      c.gens      = {G.gens};
      c.relations = {G.relations};
      c.d         = {IntMatrix(0, G.gens)};
      return c;
    };
    if (alpha.rows() != B.gens || alpha.cols() != A.gens || beta.rows() != C.gens || beta.cols() != B.gens)
      return "map shapes do not match";
    return check_degreewise_exact({point(A), point(B), point(C), {{alpha}}, {{beta}}});
  }

  // The long exact sequence in H(G; -) induced by 0 -> A -> B -> C -> 0.
  inline LongExactReport coefficient_les_check(GroupoidChains const& c, PresentedGroup const& A,
                                               PresentedGroup const& B, PresentedGroup const& C,
                                               IntMatrix const& alpha, IntMatrix const& beta,
                                               std::size_t max_degree) {
    if (auto why = check_module_ses(A, B, C, alpha, beta); !why.empty())
      throw ValidationError("NotExactInput", {}, why);
    ShortExactSequence s;
    s.X = tensor(c.quotient, A);
    s.Y = tensor(c.quotient, B);
    s.W = tensor(c.quotient, C);
    for (std::size_t n = 0; n <= c.quotient.top(); ++n) {
      s.f.m.push_back(kronecker(IntMatrix::identity(c.quotient.gens[n]), alpha));
      s.g.m.push_back(kronecker(IntMatrix::identity(c.quotient.gens[n]), beta));
    }
    return check_long_exact(s, max_degree);
  }

  struct EffectHomologyReport {
    bool                           functor_ok = false;  // bijective on objects, onto on morphisms
    std::vector<AbelianInvariants> source, target;
    std::vector<bool>              isomorphic;  // induced map bijective, per degree
    bool all() const {
      if (!functor_ok)
        return false;
      for (bool b : isomorphic)
        if (!b)
          return false;
      return true;
    }
  };

  // The effect functor G -> Eff(G) induces isomorphisms H_n(G) -> H_n(Eff(G)).
  inline EffectHomologyReport effect_homology_check(GroupoidRef const& g, std::size_t max_degree) {
    EffectHomologyReport r;
    Effect const         e = effect(g);
    {
      std::vector<char> hit(e.groupoid->num_morphisms(), 0);
      for (int m : e.quotient.mor)
        hit[m] = 1;
      bool onto = std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
      std::vector<int> objs = e.quotient.obj;
      std::sort(objs.begin(), objs.end());
      bool bij = std::adjacent_find(objs.begin(), objs.end()) == objs.end()
                 && objs.size() == e.groupoid->num_objects();
      r.functor_ok = onto && bij && check_functor(e.quotient).empty();
    }
    std::size_t const top = max_degree + 1;
    auto const        cs  = groupoid_chain_complex(*g, top);
    auto const        ct  = groupoid_chain_complex(*e.groupoid, top);
    Orbits const      os = orbit_space(*g), ot = orbit_space(*e.groupoid);
    ChainMap          f;
    for (std::size_t n = 0; n <= top; ++n) {
      IntMatrix m(ot.blocks.size(), os.blocks.size());
      for (std::size_t b = 0; b < os.blocks.size(); ++b)
        m(std::size_t(ot.orbit_of[e.quotient.obj[os.blocks[b].front()]]), b) = 1;
      f.m.push_back(std::move(m));
    }
    if (!is_chain_map(cs.quotient, ct.quotient, f))
      throw ValidationError("NotAChainMap", {}, "effect functor does not induce a chain map");
    for (std::size_t n = 0; n <= max_degree; ++n) {
      auto hs = homology_spot(cs.quotient, n);
      auto ht = homology_spot(ct.quotient, n);
      auto fn = induced(hs, f.m[n]);
      r.source.push_back(hs.group);
      r.target.push_back(ht.group);
      r.isomorphic.push_back(induced_injective(hs, fn, ht) && induced_surjective(fn, ht));
    }
    return r;
  }

}  // namespace groupoidal
