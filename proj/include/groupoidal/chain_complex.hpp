// Chain complexes of finitely presented abelian groups and the homological
// algebra needed here: homology with torsion, chain maps, degreewise exact
// sequences, connecting maps and exactness of long exact sequences, all as
// lattice computations over the integers.
//
// Degree n is Z^{g_n} modulo the column span of `relations[n]`; `d[n]` maps
// degree n to degree n-1 (d[0] is unused).

#pragma once

#include <string>
#include <vector>

#include "error.hpp"
#include "integer_matrix.hpp"

namespace groupoidal {

  // A finitely generated abelian group Z^rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k, t_i | t_(i+1).
  struct AbelianInvariants {
    std::size_t          rank = 0;
    std::vector<Integer> torsion;

    bool operator==(AbelianInvariants const&) const = default;

    bool is_zero() const { return rank == 0 && torsion.empty(); }

    std::string to_string() const {
      std::vector<std::string> parts;
      if (rank == 1)
        parts.push_back("Z");
      else if (rank > 1)
        parts.push_back("Z^" + std::to_string(rank));
      for (auto const& t : torsion)
        parts.push_back("Z/" + t.str());
      if (parts.empty())
        return "0";
      std::string s = parts[0];
      for (std::size_t i = 1; i < parts.size(); ++i)
        s += " + " + parts[i];
      return s;
    }
  };

  // Invariants of Z^n / span(R).
  inline AbelianInvariants cokernel_invariants(IntMatrix const& R, std::size_t n) {
    AbelianInvariants a;
    if (R.cols() == 0) {
      a.rank = n;
      return a;
    }
    SmithForm s = smith_normal_form(R);
    a.rank      = n - s.rank;
    for (auto const& d : s.diagonal)
      if (d != 1)
        a.torsion.push_back(d);
    return a;
  }

  // A finitely presented abelian group Z^gens / span(relations).
  struct PresentedGroup {
    std::size_t gens = 0;
    IntMatrix   relations;  // gens x r

    static PresentedGroup free(std::size_t n) { return {n, IntMatrix(n, 0)}; }

    // Z^rank ⊕ Z/t_1 ⊕ ...
    static PresentedGroup from_invariants(AbelianInvariants const& a) {
      std::size_t    n = a.rank + a.torsion.size();
      PresentedGroup g{n, IntMatrix(n, a.torsion.size())};
      for (std::size_t i = 0; i < a.torsion.size(); ++i)
        g.relations(a.rank + i, i) = a.torsion[i];
      return g;
    }

    AbelianInvariants invariants() const { return cokernel_invariants(relations, gens); }
  };

  struct PresentedComplex {
    std::vector<std::size_t> gens;       // per degree, 0..top
    std::vector<IntMatrix>   relations;  // gens[n] x r_n
    std::vector<IntMatrix>   d;          // d[n]: gens[n-1] x gens[n]

    std::size_t top() const { return gens.size() - 1; }

    static PresentedComplex free(std::vector<std::size_t> gens, std::vector<IntMatrix> d) {
      PresentedComplex c;
      c.gens = std::move(gens);
      for (auto g : c.gens)
        c.relations.emplace_back(g, 0);
      c.d = std::move(d);
      if (c.d.empty() || c.d[0].rows() != 0 || c.d[0].cols() != c.gens[0])
        c.d.insert(c.d.begin(), IntMatrix(0, c.gens[0]));
      return c;
    }

    // Outgoing differential from degree n (zero map out of degree 0).
    IntMatrix out_of(std::size_t n) const { return n == 0 ? IntMatrix(0, gens[0]) : d[n]; }

    // Incoming differential into degree n (zero beyond the top).
    IntMatrix into(std::size_t n) const { return n + 1 <= top() ? d[n + 1] : IntMatrix(gens[n], 0); }

    IntMatrix relations_at(std::size_t n) const { return n < gens.size() ? relations[n] : IntMatrix(0, 0); }
  };

  // Cycles, boundaries and homology at one spot of a complex, as lattices in
  // the ambient Z^{g_n}. Boundaries include the relations of the module.
  struct HomologySpot {
    IntMatrix         cycles;      // basis, gens x z
    IntMatrix         boundaries;  // generators, gens x b
    AbelianInvariants group;
  };

  // Homology of  prev --in--> (Z^g / R) --out--> (Z^g' / R').
  inline HomologySpot homology_at(IntMatrix const& in, IntMatrix const& R, IntMatrix const& out, IntMatrix const& R_next,
                                  std::size_t g) {
    HomologySpot h;
    IntMatrix    Z = out.rows() == 0 ? IntMatrix::identity(g) : preimage(out, R_next);
    h.cycles       = image_basis(Z);
    if (h.cycles.cols() == 0 && g > 0)
      h.cycles = IntMatrix(g, 0);
    h.boundaries = hcat(in, R);
    if (h.boundaries.rows() != g)
      h.boundaries = IntMatrix(g, 0);
    std::size_t const z = h.cycles.cols();
    if (h.boundaries.cols() == 0 || h.boundaries.is_zero()) {
      h.group.rank = z;
      return h;
    }
    auto coords = IntegerSolver(h.cycles).solve(h.boundaries);
    if (!coords)
      throw ValidationError("NotAComplex", {}, "boundaries are not cycles");
    h.group = cokernel_invariants(*coords, z);
    return h;
  }

  inline HomologySpot homology_spot(PresentedComplex const& c, std::size_t n) {
    if (n >= c.top())
      throw ValidationError("DegreeOutOfRange", {std::to_string(n)}, "complex truncated below this degree");
    IntMatrix Rn = n == 0 ? IntMatrix(0, 0) : c.relations[n - 1];
    return homology_at(c.into(n), c.relations[n], c.out_of(n), Rn, c.gens[n]);
  }

  inline AbelianInvariants homology(PresentedComplex const& c, std::size_t n) { return homology_spot(c, n).group; }

  // Cohomology of the cochain complex Hom(C, A) for a complex of free modules.
  inline AbelianInvariants cohomology(PresentedComplex const& c, std::size_t n, PresentedGroup const& A) {
    if (n >= c.top())
      throw ValidationError("DegreeOutOfRange", {std::to_string(n)});
    auto const hom_gens = [&](std::size_t k) { return c.gens[k] * A.gens; };
    auto const hom_rel  = [&](std::size_t k) { return kronecker(IntMatrix::identity(c.gens[k]), A.relations); };
    // delta^k : Hom(C_k, A) -> Hom(C_{k+1}, A) is d_{k+1}^T ⊗ 1
    auto const coboundary = [&](std::size_t k) { return kronecker(c.d[k + 1].transpose(), IntMatrix::identity(A.gens)); };
    IntMatrix in  = n == 0 ? IntMatrix(hom_gens(0), 0) : coboundary(n - 1);
    IntMatrix out = coboundary(n);
    return homology_at(in, hom_rel(n), out, hom_rel(n + 1), hom_gens(n)).group;
  }

  // C ⊗ A for a complex of free modules.
  inline PresentedComplex tensor(PresentedComplex const& c, PresentedGroup const& A) {
    PresentedComplex t;
    IntMatrix const  one = IntMatrix::identity(A.gens);
    for (std::size_t n = 0; n <= c.top(); ++n) {
      t.gens.push_back(c.gens[n] * A.gens);
      t.relations.push_back(kronecker(IntMatrix::identity(c.gens[n]), A.relations));
      t.d.push_back(n == 0 ? IntMatrix(0, t.gens[0]) : kronecker(c.d[n], one));
    }
    return t;
  }

  // A degreewise map of complexes, m[n]: source degree n -> target degree n.
  struct ChainMap {
    std::vector<IntMatrix> m;
  };

  inline ChainMap tensor(ChainMap const& f, IntMatrix const& coefficient_map) {
    ChainMap t;
    for (auto const& mn : f.m)
      t.m.push_back(kronecker(mn, coefficient_map));
    return t;
  }

  // d' f - f d lands in the relations, and relations go to relations.
  inline bool is_chain_map(PresentedComplex const& src, PresentedComplex const& tgt, ChainMap const& f) {
    std::size_t const top = std::min(src.top(), tgt.top());
    for (std::size_t n = 0; n <= top; ++n) {
      if (!lattice_contains(tgt.relations[n], f.m[n] * src.relations[n]))
        return false;
      if (n == 0)
        continue;
      IntMatrix diff = tgt.d[n] * f.m[n] - f.m[n - 1] * src.d[n];
      if (!lattice_contains(tgt.relations[n - 1], diff))
        return false;
    }
    return true;
  }

  namespace detail {
    // Kernel of the map (given on cycle coordinates) into a target with
    // boundaries B, as a lattice in the source ambient, plus source boundaries.
    inline IntMatrix kernel_lattice(HomologySpot const& src, IntMatrix const& on_cycles, IntMatrix const& tgt_boundaries) {
      IntMatrix c = preimage(on_cycles, tgt_boundaries);
      return hcat(src.cycles * c, src.boundaries);
    }

    inline IntMatrix image_lattice(IntMatrix const& on_cycles, HomologySpot const& tgt) {
      return hcat(on_cycles, tgt.boundaries);
    }
  }  // namespace detail

  // A map on homology H(src) -> H(tgt), given by its values on a basis of the
  // source cycles (columns, in the target ambient).
  struct HomologyMap {
    IntMatrix on_cycles;
  };

  inline HomologyMap induced(HomologySpot const& src, IntMatrix const& chain_map) { return {chain_map * src.cycles}; }

  inline bool induced_injective(HomologySpot const& src, HomologyMap const& f, HomologySpot const& tgt) {
    return lattice_equal(detail::kernel_lattice(src, f.on_cycles, tgt.boundaries), src.boundaries.cols() ? src.boundaries : IntMatrix(src.cycles.rows(), 0));
  }

  inline bool induced_surjective(HomologyMap const& f, HomologySpot const& tgt) {
    return lattice_equal(detail::image_lattice(f.on_cycles, tgt), hcat(tgt.cycles, tgt.boundaries));
  }

  // Exactness of  A --f--> B --g--> C  at B on homology.
  inline bool exact_at(HomologySpot const& B, HomologyMap const& f, HomologyMap const& g, HomologySpot const& C) {
    return lattice_equal(detail::kernel_lattice(B, g.on_cycles, C.boundaries), detail::image_lattice(f.on_cycles, B));
  }

  // Degreewise short exact sequence 0 -> X -> Y -> W -> 0 of presented modules.
  struct ShortExactSequence {
    PresentedComplex X, Y, W;
    ChainMap         f, g;
  };

  // Returns an empty string when every degree is exact, otherwise a reason.
  inline std::string check_degreewise_exact(ShortExactSequence const& s) {
    std::size_t const top = std::min({s.X.top(), s.Y.top(), s.W.top()});
    for (std::size_t n = 0; n <= top; ++n) {
      auto const& f  = s.f.m[n];
      auto const& g  = s.g.m[n];
      auto const& RX = s.X.relations[n];
      auto const& RY = s.Y.relations[n];
      auto const& RW = s.W.relations[n];
      std::string deg = " in degree " + std::to_string(n);
      if (!lattice_equal(hcat(preimage(f, RY), RX), hcat(RX, IntMatrix(s.X.gens[n], 0))))
        return "first map not injective" + deg;
      if (!lattice_contains(RW, g * f))
        return "composite not zero" + deg;
      if (!lattice_equal(hcat(preimage(g, RW), RY), hcat(f, RY)))
        return "kernel differs from image" + deg;
      if (!lattice_equal(hcat(g, RW), IntMatrix::identity(s.W.gens[n])))
        return "second map not surjective" + deg;
    }
    if (!is_chain_map(s.X, s.Y, s.f) || !is_chain_map(s.Y, s.W, s.g))
      return "maps do not commute with the differentials";
    return {};
  }

  // Connecting map H_n(W) -> H_{n-1}(X): lift through g, apply d, pull back
  // through f.
  inline HomologyMap connecting_map(ShortExactSequence const& s, HomologySpot const& Wn, std::size_t n) {
    IntMatrix const& z = Wn.cycles;
    IntMatrix        lift_sys = hcat(s.g.m[n], s.W.relations[n]);
    auto             lifted   = IntegerSolver(lift_sys).solve(z);
    if (!lifted)
      throw ValidationError("NotExactInput", {std::to_string(n)}, "cycle does not lift");
    IntMatrix y      = lifted->rows_range(0, s.Y.gens[n]);
    IntMatrix dy     = s.Y.d[n] * y;
    auto      pulled = IntegerSolver(hcat(s.f.m[n - 1], s.Y.relations[n - 1])).solve(dy);
    if (!pulled)
      throw ValidationError("NotExactInput", {std::to_string(n)}, "boundary does not come from the subcomplex");
    return {pulled->rows_range(0, s.X.gens[n - 1])};
  }

  struct LongExactReport {
    bool                     exact = true;
    std::vector<std::string> failures;  // joints where exactness fails
    std::vector<AbelianInvariants> hx, hy, hw;  // homology by degree
  };

  // Checks exactness of
  //   ... -> H_n(X) -> H_n(Y) -> H_n(W) -> H_{n-1}(X) -> ... -> H_0(W) -> 0
  // at every joint up to degree `max_degree` (needs complexes of top degree
  // at least max_degree + 2).
  inline LongExactReport check_long_exact(ShortExactSequence const& s, std::size_t max_degree) {
    if (auto why = check_degreewise_exact(s); !why.empty())
      throw ValidationError("NotExactInput", {}, why);
    LongExactReport           r;
    std::vector<HomologySpot> X, Y, W;
    for (std::size_t n = 0; n <= max_degree + 1; ++n) {
      X.push_back(homology_spot(s.X, n));
      Y.push_back(homology_spot(s.Y, n));
      W.push_back(homology_spot(s.W, n));
    }
    for (std::size_t n = 0; n <= max_degree; ++n) {
      r.hx.push_back(X[n].group);
      r.hy.push_back(Y[n].group);
      r.hw.push_back(W[n].group);
    }
    std::vector<HomologyMap> F, G, D(max_degree + 2);
    for (std::size_t n = 0; n <= max_degree + 1; ++n) {
      F.push_back(induced(X[n], s.f.m[n]));
      G.push_back(induced(Y[n], s.g.m[n]));
      if (n >= 1)
        D[n] = connecting_map(s, W[n], n);
    }
    auto fail = [&](std::string what) {
      r.exact = false;
      r.failures.push_back(std::move(what));
    };
    for (std::size_t n = 0; n <= max_degree; ++n) {
      if (!exact_at(X[n], D[n + 1], F[n], Y[n]))
        fail("H" + std::to_string(n) + "(X)");
      if (!exact_at(Y[n], F[n], G[n], W[n]))
        fail("H" + std::to_string(n) + "(Y)");
      if (n == 0) {
        if (!induced_surjective(G[0], W[0]))
          fail("H0(W)");
      } else if (!exact_at(W[n], G[n], D[n], X[n - 1])) {
        fail("H" + std::to_string(n) + "(W)");
      }
    }
    return r;
  }

}  // namespace groupoidal
