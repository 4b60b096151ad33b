// Dense integer matrices over arbitrary-precision integers, Smith normal form
// with unimodular transforms, and the lattice operations built on it
// (kernel, image, integer solve, containment).

#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace groupoidal {

  using Integer = boost::multiprecision::cpp_int;

  class IntMatrix {
   public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : _r(rows), _c(cols), _d(rows * cols) {}
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> data) : _r(rows), _c(cols), _d(std::move(data)) {}

    // Row-major literal, for tests and examples.
    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
      _r = rows.size();
      _c = _r ? rows.begin()->size() : 0;
      for (auto const& row : rows)
        for (long long v : row)
          _d.emplace_back(v);
    }

    static IntMatrix identity(std::size_t n) {
      IntMatrix m(n, n);
      for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
      return m;
    }

    std::size_t rows() const noexcept { return _r; }
    std::size_t cols() const noexcept { return _c; }

    Integer&       operator()(std::size_t i, std::size_t j) { return _d[i * _c + j]; }
    Integer const& operator()(std::size_t i, std::size_t j) const { return _d[i * _c + j]; }

    bool is_zero() const {
      return std::all_of(_d.begin(), _d.end(), [](Integer const& v) { return v == 0; });
    }

    IntMatrix transpose() const {
      IntMatrix t(_c, _r);
      for (std::size_t i = 0; i < _r; ++i)
        for (std::size_t j = 0; j < _c; ++j)
          t(j, i) = (*this)(i, j);
      return t;
    }

    IntMatrix column(std::size_t j) const {
      IntMatrix v(_r, 1);
      for (std::size_t i = 0; i < _r; ++i)
        v(i, 0) = (*this)(i, j);
      return v;
    }

    // Columns [from, to).
    IntMatrix columns(std::size_t from, std::size_t to) const {
      IntMatrix m(_r, to - from);
      for (std::size_t i = 0; i < _r; ++i)
        for (std::size_t j = from; j < to; ++j)
          m(i, j - from) = (*this)(i, j);
      return m;
    }

    IntMatrix rows_range(std::size_t from, std::size_t to) const {
      IntMatrix m(to - from, _c);
      for (std::size_t i = from; i < to; ++i)
        for (std::size_t j = 0; j < _c; ++j)
          m(i - from, j) = (*this)(i, j);
      return m;
    }

    friend IntMatrix operator*(IntMatrix const& a, IntMatrix const& b) {
      IntMatrix m(a._r, b._c);
      for (std::size_t i = 0; i < a._r; ++i)
        for (std::size_t k = 0; k < a._c; ++k) {
          Integer const& x = a(i, k);
          if (x == 0)
            continue;
          for (std::size_t j = 0; j < b._c; ++j)
            if (b(k, j) != 0)
              m(i, j) += x * b(k, j);
        }
      return m;
    }

    friend IntMatrix operator+(IntMatrix a, IntMatrix const& b) {
      for (std::size_t i = 0; i < a._d.size(); ++i)
        a._d[i] += b._d[i];
      return a;
    }

    friend IntMatrix operator-(IntMatrix a, IntMatrix const& b) {
      for (std::size_t i = 0; i < a._d.size(); ++i)
        a._d[i] -= b._d[i];
      return a;
    }

    IntMatrix operator-() const {
      IntMatrix m = *this;
      for (auto& v : m._d)
        v = -v;
      return m;
    }

    bool operator==(IntMatrix const& o) const = default;

    // Row swaps and additions used by the Smith reduction.
    void swap_rows(std::size_t i, std::size_t j) {
      for (std::size_t k = 0; k < _c; ++k)
        std::swap((*this)(i, k), (*this)(j, k));
    }
    void swap_cols(std::size_t i, std::size_t j) {
      for (std::size_t k = 0; k < _r; ++k)
        std::swap((*this)(k, i), (*this)(k, j));
    }
    void add_row(std::size_t dst, std::size_t src, Integer const& k) {
      if (k == 0)
        return;
      for (std::size_t j = 0; j < _c; ++j)
        if ((*this)(src, j) != 0)
          (*this)(dst, j) += k * (*this)(src, j);
    }
    void add_col(std::size_t dst, std::size_t src, Integer const& k) {
      if (k == 0)
        return;
      for (std::size_t i = 0; i < _r; ++i)
        if ((*this)(i, src) != 0)
          (*this)(i, dst) += k * (*this)(i, src);
    }
    void negate_row(std::size_t i) {
      for (std::size_t j = 0; j < _c; ++j)
        (*this)(i, j) = -(*this)(i, j);
    }
    void negate_col(std::size_t j) {
      for (std::size_t i = 0; i < _r; ++i)
        (*this)(i, j) = -(*this)(i, j);
    }

    std::string to_string() const {
      std::string s = "[";
      for (std::size_t i = 0; i < _r; ++i) {
        s += i ? ",[" : "[";
        for (std::size_t j = 0; j < _c; ++j)
          s += (j ? "," : "") + (*this)(i, j).str();
        s += "]";
      }
      return s + "]";
    }

   private:
    std::size_t          _r = 0, _c = 0;
    std::vector<Integer> _d;
  };

  inline IntMatrix hcat(IntMatrix const& a, IntMatrix const& b) {
    std::size_t const r = std::max(a.rows(), b.rows());
    IntMatrix         m(r, a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j)
        m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j)
        m(i, a.cols() + j) = b(i, j);
    return m;
  }

  inline IntMatrix vcat(IntMatrix const& a, IntMatrix const& b) { return hcat(a.transpose(), b.transpose()).transpose(); }

  // A ⊗ B (Kronecker product, A's index major).
  inline IntMatrix kronecker(IntMatrix const& a, IntMatrix const& b) {
    IntMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j)
        if (a(i, j) != 0)
          for (std::size_t k = 0; k < b.rows(); ++k)
            for (std::size_t l = 0; l < b.cols(); ++l)
              m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return m;
  }

  // U * M * V = D with D diagonal, d_1 | d_2 | ... | d_rank all positive.
  struct SmithForm {
    IntMatrix            D, U, Uinv, V, Vinv;
    std::size_t          rank = 0;
    std::vector<Integer> diagonal;  // the nonzero invariant factors
  };

  inline SmithForm smith_normal_form(IntMatrix const& M) {
    SmithForm s;
    IntMatrix& A = s.D;
    A            = M;
    std::size_t const r = M.rows(), c = M.cols();
    s.U    = IntMatrix::identity(r);
    s.Uinv = IntMatrix::identity(r);
    s.V    = IntMatrix::identity(c);
    s.Vinv = IntMatrix::identity(c);

    // Each operation on A is mirrored on the transforms.
    auto row_swap = [&](std::size_t i, std::size_t j) {
      A.swap_rows(i, j);
      s.U.swap_rows(i, j);
      s.Uinv.swap_cols(i, j);
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
      A.swap_cols(i, j);
      s.V.swap_cols(i, j);
      s.Vinv.swap_rows(i, j);
    };
    auto row_add = [&](std::size_t dst, std::size_t src, Integer const& k) {  // row_dst += k row_src
      A.add_row(dst, src, k);
      s.U.add_row(dst, src, k);
      s.Uinv.add_col(src, dst, -k);
    };
    auto col_add = [&](std::size_t dst, std::size_t src, Integer const& k) {  // col_dst += k col_src
      A.add_col(dst, src, k);
      s.V.add_col(dst, src, k);
      s.Vinv.add_row(src, dst, -k);
    };
    auto row_neg = [&](std::size_t i) {
      A.negate_row(i);
      s.U.negate_row(i);
      s.Uinv.negate_col(i);
    };

    std::size_t t = 0;
    for (; t < std::min(r, c); ++t) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      auto find_pivot = [&](bool whole) {
        std::size_t bi = r, bj = c;
        Integer     best;
        for (std::size_t i = t; i < r; ++i)
          for (std::size_t j = t; j < c; ++j) {
            if (!whole && i != t && j != t)
              continue;
            Integer const& v = A(i, j);
            if (v == 0)
              continue;
            Integer av = abs(v);
            if (bi == r || av < best) {
              best = av;
              bi   = i;
              bj   = j;
            }
          }
        return std::make_pair(bi, bj);
      };
      auto [pi, pj] = find_pivot(true);
      if (pi == r)
        break;
      row_swap(t, pi);
      col_swap(t, pj);
      for (;;) {
        bool clean = true;
        for (std::size_t i = t + 1; i < r; ++i)
          if (A(i, t) != 0) {
            row_add(i, t, -(A(i, t) / A(t, t)));
            clean = clean && A(i, t) == 0;
          }
        for (std::size_t j = t + 1; j < c; ++j)
          if (A(t, j) != 0) {
            col_add(j, t, -(A(t, j) / A(t, t)));
            clean = clean && A(t, j) == 0;
          }
        if (!clean) {
          auto [qi, qj] = find_pivot(false);
          row_swap(t, qi);
          col_swap(t, qj);
          continue;
        }
        bool divides = true;
        for (std::size_t i = t + 1; i < r && divides; ++i)
          for (std::size_t j = t + 1; j < c; ++j)
            if (A(i, j) % A(t, t) != 0) {
              row_add(t, i, 1);
              divides = false;
              break;
            }
        if (divides)
          break;
      }
      if (A(t, t) < 0)
        row_neg(t);
      s.diagonal.push_back(A(t, t));
    }
    s.rank = t;
    return s;
  }

  // Basis (as columns) of the lattice spanned by the columns of A.
  inline IntMatrix image_basis(IntMatrix const& A) {
    SmithForm s = smith_normal_form(A);
    IntMatrix B(A.rows(), s.rank);
    for (std::size_t j = 0; j < s.rank; ++j)
      for (std::size_t i = 0; i < A.rows(); ++i)
        B(i, j) = s.Uinv(i, j) * s.diagonal[j];
    return B;
  }

  // Basis (as columns) of the integer kernel of A.
  inline IntMatrix kernel_basis(IntMatrix const& A) {
    SmithForm s = smith_normal_form(A);
    return s.V.columns(s.rank, A.cols());
  }

  // An integer x with A x = b (b a column), if one exists.
  inline std::optional<IntMatrix> solve(IntMatrix const& A, IntMatrix const& b) {
    SmithForm s  = smith_normal_form(A);
    IntMatrix ub = s.U * b;
    IntMatrix y(A.cols(), 1);
    for (std::size_t i = 0; i < A.rows(); ++i) {
      if (i < s.rank) {
        if (ub(i, 0) % s.diagonal[i] != 0)
          return std::nullopt;
        y(i, 0) = ub(i, 0) / s.diagonal[i];
      } else if (ub(i, 0) != 0) {
        return std::nullopt;
      }
    }
    return s.V * y;
  }

  // Reusable solver for many right-hand sides against the same matrix.
  class IntegerSolver {
   public:
    explicit IntegerSolver(IntMatrix A) : _cols(A.cols()), _s(smith_normal_form(A)) {}

    std::optional<IntMatrix> solve(IntMatrix const& b) const {
      IntMatrix ub = _s.U * b;
      IntMatrix y(_cols, b.cols());
      for (std::size_t k = 0; k < b.cols(); ++k)
        for (std::size_t i = 0; i < ub.rows(); ++i) {
          if (i < _s.rank) {
            if (ub(i, k) % _s.diagonal[i] != 0)
              return std::nullopt;
            y(i, k) = ub(i, k) / _s.diagonal[i];
          } else if (ub(i, k) != 0) {
            return std::nullopt;
          }
        }
      return _s.V * y;
    }

   private:
    std::size_t _cols;
    SmithForm   _s;
  };

  // Every column of B lies in the lattice spanned by the columns of A.
  inline bool lattice_contains(IntMatrix const& A, IntMatrix const& B) {
    if (B.cols() == 0)
      return true;
    if (A.cols() == 0)
      return B.is_zero();
    return IntegerSolver(A).solve(B).has_value();
  }

  inline bool lattice_equal(IntMatrix const& A, IntMatrix const& B) {
    return lattice_contains(A, B) && lattice_contains(B, A);
  }

  // Generators of {x : A x ∈ span(R)} for A: Z^n -> Z^m and R with m rows.
  inline IntMatrix preimage(IntMatrix const& A, IntMatrix const& R) {
    std::size_t const n = A.cols();
    if (R.cols() == 0)
      return kernel_basis(A);
    IntMatrix K = kernel_basis(hcat(A, -R));
    return K.rows_range(0, n);
  }

}  // namespace groupoidal
