// Convolution algebras of finite groupoids over the rationals, the bimodules
// of principal bibundles, the pairing of functions on two composable
// bibundles, balanced tensor products and bimodule isomorphisms.
//
// Functions are coefficient vectors on a basis of indicator functions.
// Module actions are matrices on column vectors: x·m = L_x m and
// m·y = R_y m, so R_{a∘b} = R_b R_a.

#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bibundle.hpp"
#include "error.hpp"
#include "finite_group.hpp"
#include "morita.hpp"
#include "rational_matrix.hpp"

namespace groupoidal {

  using RatVector = std::vector<Rational>;

  inline RatVector indicator(std::size_t dim, int i) {
    RatVector v(dim);
    v[std::size_t(i)] = 1;
    return v;
  }

  // ---------------------------------------------------------------------
  // Algebras

  struct Algebra {
    GroupoidRef groupoid;

    std::size_t dim() const { return groupoid->num_morphisms(); }

    // (x x')(g) = sum over g = g'∘g'' of x(g') x'(g'').
    RatVector multiply(RatVector const& x, RatVector const& y) const {
      auto const& G = *groupoid;
      RatVector   out(dim());
      for (std::size_t a = 0; a < dim(); ++a) {
        if (x[a] == 0)
          continue;
        for (int b : G.into(G.dom(int(a))))
          if (y[std::size_t(b)] != 0)
            out[std::size_t(G.comp(int(a), b))] += x[a] * y[std::size_t(b)];
      }
      return out;
    }

    // Sum of the units at every object touched by the supports.
    RatVector local_unit(std::vector<RatVector> const& elems) const {
      auto const&       G = *groupoid;
      std::vector<char> touched(G.num_objects(), 0);
      for (auto const& x : elems)
        for (std::size_t a = 0; a < dim(); ++a)
          if (x[a] != 0)
            touched[std::size_t(G.dom(int(a)))] = touched[std::size_t(G.cod(int(a)))] = 1;
      RatVector u(dim());
      for (std::size_t o = 0; o < G.num_objects(); ++o)
        if (touched[o])
          u[std::size_t(G.unit(int(o)))] = 1;
      return u;
    }
  };

  inline Algebra groupoid_algebra(GroupoidRef const& g) {
    Algebra     A{g};
    auto const& G = *g;
    for (std::size_t a = 0; a < A.dim(); ++a)
      for (int b : G.into(G.dom(int(a))))
        for (int c : G.into(G.dom(b))) {
          auto l = A.multiply(A.multiply(indicator(A.dim(), int(a)), indicator(A.dim(), b)), indicator(A.dim(), c));
          auto r = A.multiply(indicator(A.dim(), int(a)), A.multiply(indicator(A.dim(), b), indicator(A.dim(), c)));
          if (l != r)
            throw ValidationError("InternalError", {G.morphism_id(int(a)), G.morphism_id(b), G.morphism_id(c)},
                                  "convolution is not associative");
        }
    std::vector<RatVector> all;
    for (std::size_t a = 0; a < A.dim(); ++a)
      all.push_back(indicator(A.dim(), int(a)));
    auto u = A.local_unit(all);
    for (auto const& x : all)
      if (A.multiply(u, x) != x || A.multiply(x, u) != x)
        throw ValidationError("InternalError", {}, "sum of units is not a unit");
    return A;
  }

  // [i, j, k, coefficient]: basis_i basis_j has coefficient at basis_k.
  struct StructureConstant {
    std::size_t i, j, k;
    Rational    value;
  };

  inline std::vector<StructureConstant> structure_constants(Algebra const& A) {
    std::vector<StructureConstant> out;
    for (std::size_t i = 0; i < A.dim(); ++i)
      for (std::size_t j = 0; j < A.dim(); ++j) {
        auto p = A.multiply(indicator(A.dim(), int(i)), indicator(A.dim(), int(j)));
        for (std::size_t k = 0; k < A.dim(); ++k)
          if (p[k] != 0)
            out.push_back({i, j, k, p[k]});
      }
    return out;
  }

  // ---------------------------------------------------------------------
  // Bimodules

  struct Bimodule {
    GroupoidRef              left, right;
    std::vector<std::string> basis;
    std::vector<RatMatrix>   left_action;   // per morphism of the left groupoid
    std::vector<RatMatrix>   right_action;  // per morphism of the right groupoid

    std::size_t dim() const { return basis.size(); }

    RatVector act_left(RatVector const& x, RatVector const& m) const {
      RatVector out(dim());
      for (std::size_t g = 0; g < x.size(); ++g)
        if (x[g] != 0) {
          auto v = left_action[g] * m;
          for (std::size_t i = 0; i < dim(); ++i)
            out[i] += x[g] * v[i];
        }
      return out;
    }

    RatVector act_right(RatVector const& m, RatVector const& y) const {
      RatVector out(dim());
      for (std::size_t h = 0; h < y.size(); ++h)
        if (y[h] != 0) {
          auto v = right_action[h] * m;
          for (std::size_t i = 0; i < dim(); ++i)
            out[i] += y[h] * v[i];
        }
      return out;
    }
  };

  // Action laws on both sides, interchange, and the sum of all units acting
  // as the identity (finite, so local units can be taken global).
  inline std::vector<Violation> check_bimodule(Bimodule const& M) {
    std::vector<Violation> vs;
    auto const&            G = *M.left;
    auto const&            H = *M.right;
    std::size_t const      n = M.dim();
    auto                   zero = RatMatrix(n, n);
    if (M.left_action.size() != G.num_morphisms() || M.right_action.size() != H.num_morphisms())
      return {{"NotABimodule", {}, "action table sizes"}};
    for (std::size_t a = 0; a < G.num_morphisms(); ++a)
      for (std::size_t b = 0; b < G.num_morphisms(); ++b) {
        int  c    = G.comp(int(a), int(b));
        auto want = c < 0 ? zero : M.left_action[std::size_t(c)];
        if (M.left_action[a] * M.left_action[b] != want)
          vs.push_back({"NotABimodule", {G.morphism_id(int(a)), G.morphism_id(int(b))}, "left action law"});
      }
    for (std::size_t a = 0; a < H.num_morphisms(); ++a)
      for (std::size_t b = 0; b < H.num_morphisms(); ++b) {
        int  c    = H.comp(int(a), int(b));
        auto want = c < 0 ? zero : M.right_action[std::size_t(c)];
        if (M.right_action[b] * M.right_action[a] != want)
          vs.push_back({"NotABimodule", {H.morphism_id(int(a)), H.morphism_id(int(b))}, "right action law"});
      }
    for (std::size_t a = 0; a < G.num_morphisms(); ++a)
      for (std::size_t b = 0; b < H.num_morphisms(); ++b)
        if (M.left_action[a] * M.right_action[b] != M.right_action[b] * M.left_action[a])
          vs.push_back({"NotABimodule", {G.morphism_id(int(a)), H.morphism_id(int(b))}, "actions do not commute"});
    RatMatrix lu(n, n), ru(n, n);
    for (std::size_t o = 0; o < G.num_objects(); ++o)
      lu = lu + M.left_action[std::size_t(G.unit(int(o)))];
    for (std::size_t o = 0; o < H.num_objects(); ++o)
      ru = ru + M.right_action[std::size_t(H.unit(int(o)))];
    if (lu != RatMatrix::identity(n) || ru != RatMatrix::identity(n))
      vs.push_back({"NotABimodule", {}, "not locally unital"});
    return vs;
  }

  inline Bimodule validate_module(Bimodule M) {
    auto vs = check_bimodule(M);
    if (!vs.empty())
      throw ValidationError(std::move(vs));
    return M;
  }

  // Functions on E: (x·m)(e) = sum over cod g = p(e) of x(g) m(g⁻¹·e) and
  // (m·y)(e) = sum over cod h = w(e) of m(e·h) y(h⁻¹). On indicators,
  // g·δ_e = δ_{g·e} and δ_e·h = δ_{e·h}.
  inline Bimodule bimodule_of_bibundle(Bibundle const& E) {
    require_principal(E);
    auto const&       G = *E.left;
    auto const&       H = *E.right;
    std::size_t const n = E.size();
    Bimodule          M{E.left, E.right, E.total.ids(), {}, {}};
    M.left_action.assign(G.num_morphisms(), RatMatrix(n, n));
    M.right_action.assign(H.num_morphisms(), RatMatrix(n, n));
    for (std::size_t e = 0; e < n; ++e) {
      for (int g : G.from(E.p[e]))
        M.left_action[std::size_t(g)](std::size_t(E.act(g, int(e))), e) = 1;
      for (int h : H.into(E.w[e]))
        M.right_action[std::size_t(h)](std::size_t(E.act_right(int(e), h)), e) = 1;
    }
    return validate_module(std::move(M));
  }

  inline Bimodule regular_bimodule(GroupoidRef const& g) { return bimodule_of_bibundle(unit_bibundle(g)); }

  // ---------------------------------------------------------------------
  // The pairing of functions on E and F into functions on E ⊗ F

  // Column (a, b) = a * |F| + b holds the pairing of the indicators of a
  // and b: at the class of (e, f), the number of h with cod h = w(e),
  // e·h = a and h⁻¹·f = b. Every representative of every class is used and
  // must agree.
  inline RatMatrix pairing_matrix(Bibundle const& E, Bibundle const& F, TensorProduct const& tp) {
    auto const&       H  = *E.right;
    std::size_t const nf = F.size();
    std::size_t const nt = tp.bundle.size();
    RatMatrix         m(nt, E.size() * nf);
    std::vector<char> filled(nt, 0);
    for (std::size_t e = 0; e < E.size(); ++e)
      for (std::size_t f = 0; f < nf; ++f) {
        int c = tp.class_of[e * nf + f];
        if (c < 0)
          continue;
        RatVector row(E.size() * nf);
        for (int h : H.into(E.w[e])) {
          int a = E.act_right(int(e), h);
          int b = F.act(H.inv(h), int(f));
          row[std::size_t(a) * nf + std::size_t(b)] += 1;
        }
        if (!filled[std::size_t(c)]) {
          for (std::size_t j = 0; j < row.size(); ++j)
            m(std::size_t(c), j) = row[j];
          filled[std::size_t(c)] = 1;
          continue;
        }
        for (std::size_t j = 0; j < row.size(); ++j)
          if (m(std::size_t(c), j) != row[j])
            throw ValidationError("NotWellDefined", {tp.bundle.id(c), E.id(int(e)), F.id(int(f))},
                                  "pairing depends on the representative");
      }
    return m;
  }

  inline RatVector wp(Bibundle const& E, Bibundle const& F, RatVector const& m, RatVector const& m2) {
    if (!same_groupoid(E.right, F.left))
      throw ValidationError("GroupoidMismatch", {}, "right groupoid of the first factor differs from the left of the second");
    auto const tp = tensor_with_classes(E, F);
    auto const P  = pairing_matrix(E, F, tp);
    RatVector  v(E.size() * F.size());
    for (std::size_t a = 0; a < E.size(); ++a)
      if (m[a] != 0)
        for (std::size_t b = 0; b < F.size(); ++b)
          v[a * F.size() + b] = m[a] * m2[b];
    return P * v;
  }

  // (E ⊗ F) ⊗ K -> E ⊗ (F ⊗ K) on classes.
  inline std::vector<int> associator(Bibundle const& E, Bibundle const& F, Bibundle const& K) {
    auto const ef   = tensor_with_classes(E, F);
    auto const fk   = tensor_with_classes(F, K);
    auto const ef_k = tensor_with_classes(ef.bundle, K);
    auto const e_fk = tensor_with_classes(E, fk.bundle);
    std::vector<int> map(ef_k.bundle.size(), -1);
    for (std::size_t e = 0; e < E.size(); ++e)
      for (std::size_t f = 0; f < F.size(); ++f) {
        int c1 = ef.class_of[e * F.size() + f];
        if (c1 < 0)
          continue;
        for (std::size_t k = 0; k < K.size(); ++k) {
          int c2 = fk.class_of[f * K.size() + k];
          if (c2 < 0)
            continue;
          map[std::size_t(ef_k.class_of[std::size_t(c1) * K.size() + k])] =
              e_fk.class_of[e * fk.bundle.size() + std::size_t(c2)];
        }
      }
    return map;
  }

  // ---------------------------------------------------------------------
  // Balanced tensor products

  constexpr std::size_t balanced_tensor_cap = 4096;

  struct BalancedTensor {
    Bimodule  module;
    RatMatrix projection;  // quotient coordinates of a plain tensor
    RatMatrix section;     // plain tensor of each quotient basis vector
    RatMatrix relations;   // rows spanning the balancing relations (reduced)
  };

  inline BalancedTensor balanced_tensor(Bimodule const& M, Bimodule const& N) {
    if (!same_groupoid(M.right, N.left))
      throw ValidationError("AlgebraMismatch", {}, "middle algebras differ");
    std::size_t const m = M.dim(), n = N.dim(), mn = m * n;
    if (mn > balanced_tensor_cap)
      throw ValidationError("TooLarge", {std::to_string(mn)}, "plain tensor exceeds " + std::to_string(balanced_tensor_cap));
    auto const&            B = *M.right;
    std::vector<RatVector> rows;
    for (std::size_t b = 0; b < B.num_morphisms(); ++b)
      for (std::size_t i = 0; i < m; ++i) {
        auto mi = M.right_action[b].column(i);
        for (std::size_t j = 0; j < n; ++j) {
          auto      nj = N.left_action[b].column(j);
          RatVector r(mn);
          for (std::size_t k = 0; k < m; ++k)
            if (mi[k] != 0)
              r[k * n + j] += mi[k];
          for (std::size_t k = 0; k < n; ++k)
            if (nj[k] != 0)
              r[i * n + k] -= nj[k];
          bool nonzero = false;
          for (auto const& v : r)
            nonzero = nonzero || v != 0;
          if (nonzero)
            rows.push_back(std::move(r));
        }
      }
    RatMatrix W(rows.size(), mn);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t j = 0; j < mn; ++j)
        W(r, j) = rows[r][j];
    Echelon const     ech = row_reduce(W);
    std::vector<int>  free_pos(mn, -1);
    std::vector<char> is_pivot(mn, 0);
    for (auto p : ech.pivots)
      is_pivot[p] = 1;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < mn; ++j)
      if (!is_pivot[j]) {
        free_pos[j] = int(free_cols.size());
        free_cols.push_back(j);
      }
    std::size_t const q = free_cols.size();
    BalancedTensor    t;
    t.projection = RatMatrix(q, mn);
    t.section    = RatMatrix(mn, q);
    for (std::size_t f = 0; f < q; ++f) {
      t.projection(f, free_cols[f]) = 1;
      t.section(free_cols[f], f)    = 1;
    }
    for (std::size_t r = 0; r < ech.pivots.size(); ++r)
      for (std::size_t f = 0; f < q; ++f)
        t.projection(f, ech.pivots[r]) = -ech.reduced(r, free_cols[f]);
    t.relations = RatMatrix(ech.rank(), mn);
    for (std::size_t r = 0; r < ech.rank(); ++r)
      for (std::size_t j = 0; j < mn; ++j)
        t.relations(r, j) = ech.reduced(r, j);
    Bimodule& Q = t.module;
    Q.left      = M.left;
    Q.right     = N.right;
    for (auto c : free_cols)
      Q.basis.push_back(M.basis[c / n] + "⊗" + N.basis[c % n]);
    auto lift_act = [&](auto&& plain) {
      RatMatrix out(q, q);
      for (std::size_t f = 0; f < q; ++f) {
        auto v = t.projection * plain(free_cols[f] / n, free_cols[f] % n);
        for (std::size_t k = 0; k < q; ++k)
          out(k, f) = v[k];
      }
      return out;
    };
    for (std::size_t a = 0; a < M.left->num_morphisms(); ++a)
      Q.left_action.push_back(lift_act([&](std::size_t i, std::size_t j) {
        RatVector v(mn);
        auto      col = M.left_action[a].column(i);
        for (std::size_t k = 0; k < m; ++k)
          v[k * n + j] = col[k];
        return v;
      }));
    for (std::size_t c = 0; c < N.right->num_morphisms(); ++c)
      Q.right_action.push_back(lift_act([&](std::size_t i, std::size_t j) {
        RatVector v(mn);
        auto      col = N.right_action[c].column(j);
        for (std::size_t k = 0; k < n; ++k)
          v[i * n + k] = col[k];
        return v;
      }));
    validate_module(Q);
    return t;
  }

  // ---------------------------------------------------------------------
  // Bimodule maps

  // X: M -> N (dim N x dim M) commutes with both actions.
  inline bool is_bimodule_map(Bimodule const& M, Bimodule const& N, RatMatrix const& X) {
    if (!same_groupoid(M.left, N.left) || !same_groupoid(M.right, N.right))
      return false;
    if (X.rows() != N.dim() || X.cols() != M.dim())
      return false;
    for (std::size_t g = 0; g < M.left_action.size(); ++g)
      if (X * M.left_action[g] != N.left_action[g] * X)
        return false;
    for (std::size_t h = 0; h < M.right_action.size(); ++h)
      if (X * M.right_action[h] != N.right_action[h] * X)
        return false;
    return true;
  }

  inline bool is_bimodule_iso(Bimodule const& M, Bimodule const& N, RatMatrix const& X) {
    return is_bimodule_map(M, N, X) && M.dim() == N.dim() && rank(X) == M.dim();
  }

  // The map of indicator functions along an equivariant bijection E -> F.
  inline RatMatrix permutation_matrix(std::vector<int> const& map, std::size_t target_size) {
    RatMatrix P(target_size, map.size());
    for (std::size_t e = 0; e < map.size(); ++e)
      P(std::size_t(map[e]), e) = 1;
    return P;
  }

  constexpr std::size_t commutant_cap = 64;

  struct ModuleIso {
    Verdict                  verdict = Verdict::no;
    std::optional<RatMatrix> map;
    std::string              reason;
  };

  // Solves X L^M = L^N X and X R^M = R^N X and looks for an invertible
  // solution among the basis of solutions and seeded random combinations.
  inline ModuleIso bimodule_isomorphism(Bimodule const& M, Bimodule const& N, unsigned tries = 24) {
    ModuleIso out;
    if (!same_groupoid(M.left, N.left) || !same_groupoid(M.right, N.right))
      throw ValidationError("AlgebraMismatch", {}, "modules over different algebras");
    if (M.dim() != N.dim()) {
      out.reason = "dimensions differ";
      return out;
    }
    std::size_t const n = M.dim();
    if (n > commutant_cap)
      throw ValidationError("TooLarge", {std::to_string(n)}, "commutant search is capped at dimension 64");
    if (n == 0) {
      out.verdict = Verdict::yes;
      out.map     = RatMatrix(0, 0);
      return out;
    }
    std::vector<RatMatrix const*> ms, ns;
    for (std::size_t g = 0; g < M.left_action.size(); ++g) {
      ms.push_back(&M.left_action[g]);
      ns.push_back(&N.left_action[g]);
    }
    for (std::size_t h = 0; h < M.right_action.size(); ++h) {
      ms.push_back(&M.right_action[h]);
      ns.push_back(&N.right_action[h]);
    }
    // unknown X(i, j) at i * n + j; equation (X A - B X)(i, j) = 0
    RatMatrix eq(ms.size() * n * n, n * n);
    for (std::size_t t = 0; t < ms.size(); ++t) {
      auto const& A = *ms[t];
      auto const& B = *ns[t];
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          std::size_t row = (t * n + i) * n + j;
          for (std::size_t k = 0; k < n; ++k) {
            if (A(k, j) != 0)
              eq(row, i * n + k) += A(k, j);
            if (B(i, k) != 0)
              eq(row, k * n + j) -= B(i, k);
          }
        }
    }
    RatMatrix const sol = kernel(eq);
    if (sol.cols() == 0) {
      out.reason = "no nonzero bimodule map";
      return out;
    }
    auto as_matrix = [&](RatVector const& v) {
      RatMatrix X(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          X(i, j) = v[i * n + j];
      return X;
    };
    auto try_vector = [&](RatVector const& v) {
      RatMatrix X = as_matrix(v);
      if (rank(X) == n) {
        out.verdict = Verdict::yes;
        out.map     = X;
        return true;
      }
      return false;
    };
    for (std::size_t c = 0; c < sol.cols(); ++c)
      if (try_vector(sol.column(c)))
        return out;
    std::mt19937                       rng(12345);
    std::uniform_int_distribution<int> coeff(-7, 7);
    for (unsigned t = 0; t < tries; ++t) {
      RatVector v(n * n);
      for (std::size_t c = 0; c < sol.cols(); ++c) {
        Rational k = coeff(rng);
        auto     col = sol.column(c);
        for (std::size_t i = 0; i < v.size(); ++i)
          v[i] += k * col[i];
      }
      if (try_vector(v))
        return out;
    }
    out.verdict = Verdict::inconclusive;
    out.reason  = "no invertible solution found among sampled combinations";
    return out;
  }

  // ---------------------------------------------------------------------
  // The map C(E) ⊗ C(F) -> C(E ⊗ F)

  struct MhoReport {
    bool                     well_defined = false;
    bool                     equivariant  = false;
    bool                     bijective    = false;
    std::size_t              source_dim = 0, target_dim = 0;
    RatMatrix                matrix;  // target_dim x source_dim
    std::string              failure;
    std::optional<RatVector> witness;

    bool ok() const { return well_defined && equivariant && bijective; }
  };

  struct MhoData {
    BalancedTensor source;
    Bimodule       target;
    TensorProduct  tensor;
    MhoReport      report;
  };

  inline MhoData mho(Bibundle const& E, Bibundle const& F) {
    if (!same_groupoid(E.right, F.left))
      throw ValidationError("GroupoidMismatch", {}, "right groupoid of the first factor differs from the left of the second");
    require_principal(E);
    require_principal(F);
    auto const M  = bimodule_of_bibundle(E);
    auto const N  = bimodule_of_bibundle(F);
    MhoData    d{balanced_tensor(M, N), {}, tensor_with_classes(E, F), {}};
    d.target      = bimodule_of_bibundle(d.tensor.bundle);
    auto const P  = pairing_matrix(E, F, d.tensor);
    MhoReport& r  = d.report;
    r.source_dim  = d.source.module.dim();
    r.target_dim  = d.target.dim();
    r.well_defined = true;
    for (std::size_t k = 0; k < d.source.relations.rows() && r.well_defined; ++k) {
      RatVector rel(d.source.relations.cols());
      for (std::size_t j = 0; j < rel.size(); ++j)
        rel[j] = d.source.relations(k, j);
      auto img = P * rel;
      for (auto const& v : img)
        if (v != 0) {
          r.well_defined = false;
          r.failure      = "pairing does not vanish on a balancing relation";
          r.witness      = rel;
          break;
        }
    }
    r.matrix      = P * d.source.section;
    r.equivariant = is_bimodule_map(d.source.module, d.target, r.matrix);
    if (!r.equivariant && r.failure.empty())
      r.failure = "map does not commute with the actions";
    r.bijective = r.source_dim == r.target_dim && rank(r.matrix) == r.target_dim;
    if (!r.bijective && r.failure.empty())
      r.failure = "map is not bijective";
    return d;
  }

  inline MhoReport mho_iso_check(Bibundle const& E, Bibundle const& F) { return mho(E, F).report; }

  // ---------------------------------------------------------------------
  // Morita equivalence of convolution algebras

  struct RoundTrip {
    bool        ok = false;
    std::size_t dim = 0;
    std::string failure;
    RatMatrix   map;  // balanced tensor -> regular bimodule
  };

  struct AlgebraMorita {
    Verdict                 verdict = Verdict::no;
    std::string             reason;
    std::optional<Bimodule> module, inverse_module;
    RoundTrip               left_trip, right_trip;  // over G, over H
  };

  namespace detail {
    // M ⊗ N ≅ C(E ⊗ E') ≅ C(unit) through the pairing and a bundle iso.
    inline RoundTrip round_trip(Bibundle const& E, Bibundle const& E2, GroupoidRef const& g, Budget& budget) {
      RoundTrip  t;
      auto       d = mho(E, E2);
      t.dim        = d.source.module.dim();
      if (!d.report.ok()) {
        t.failure = d.report.failure;
        return t;
      }
      auto const unit  = unit_bibundle(g);
      auto const alpha = are_isomorphic(d.tensor.bundle, unit, budget);
      if (!alpha) {
        t.failure = "composite bundle is not the unit";
        return t;
      }
      auto const regular = bimodule_of_bibundle(unit);
      t.map              = permutation_matrix(*alpha, unit.size()) * d.report.matrix;
      t.ok               = is_bimodule_iso(d.source.module, regular, t.map);
      if (!t.ok)
        t.failure = "composite map is not a bimodule isomorphism";
      return t;
    }
  }  // namespace detail

  inline AlgebraMorita algebra_morita_check(GroupoidRef const& g, GroupoidRef const& h, Budget& budget) {
    AlgebraMorita out;
    auto          mr = morita_equivalent(g, h, budget);
    out.verdict      = mr.verdict;
    out.reason       = mr.reason;
    if (mr.verdict != Verdict::yes)
      return out;
    Bibundle const& E  = *mr.witness;
    Bibundle const  E2 = mr.inverse ? *mr.inverse : invert(E, budget);
    out.module         = bimodule_of_bibundle(E);
    out.inverse_module = bimodule_of_bibundle(E2);
    out.left_trip      = detail::round_trip(E, E2, g, budget);
    out.right_trip     = detail::round_trip(E2, E, h, budget);
    if (!out.left_trip.ok || !out.right_trip.ok) {
      out.verdict = Verdict::no;
      out.reason  = "round trip failed: " + (out.left_trip.ok ? out.right_trip.failure : out.left_trip.failure);
    }
    return out;
  }

  inline AlgebraMorita algebra_morita_check(GroupoidRef const& g, GroupoidRef const& h) {
    Budget b;
    return algebra_morita_check(g, h, b);
  }

}  // namespace groupoidal
