// Dense matrices over exact rationals: products, reduced row echelon form,
// rank, kernels and inverses.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <vector>

#include "error.hpp"

namespace groupoidal {

  using Rational = boost::multiprecision::cpp_rational;

  class RatMatrix {
   public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : _r(rows), _c(cols), _d(rows * cols) {}

    static RatMatrix identity(std::size_t n) {
      RatMatrix m(n, n);
      for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
      return m;
    }

    std::size_t rows() const noexcept { return _r; }
    std::size_t cols() const noexcept { return _c; }

    Rational&       operator()(std::size_t i, std::size_t j) { return _d[i * _c + j]; }
    Rational const& operator()(std::size_t i, std::size_t j) const { return _d[i * _c + j]; }

    bool operator==(RatMatrix const&) const = default;

    bool is_zero() const {
      for (auto const& v : _d)
        if (v != 0)
          return false;
      return true;
    }

    RatMatrix transpose() const {
      RatMatrix t(_c, _r);
      for (std::size_t i = 0; i < _r; ++i)
        for (std::size_t j = 0; j < _c; ++j)
          t(j, i) = (*this)(i, j);
      return t;
    }

    std::vector<Rational> column(std::size_t j) const {
      std::vector<Rational> v(_r);
      for (std::size_t i = 0; i < _r; ++i)
        v[i] = (*this)(i, j);
      return v;
    }

    void set_column(std::size_t j, std::vector<Rational> const& v) {
      for (std::size_t i = 0; i < _r; ++i)
        (*this)(i, j) = v[i];
    }

    friend RatMatrix operator*(RatMatrix const& a, RatMatrix const& b) {
      if (a._c != b._r)
        throw ValidationError("DimensionMismatch", {}, "matrix product");
      RatMatrix m(a._r, b._c);
      for (std::size_t i = 0; i < a._r; ++i)
        for (std::size_t k = 0; k < a._c; ++k) {
          Rational const& x = a(i, k);
          if (x == 0)
            continue;
          for (std::size_t j = 0; j < b._c; ++j)
            if (b(k, j) != 0)
              m(i, j) += x * b(k, j);
        }
      return m;
    }

    friend std::vector<Rational> operator*(RatMatrix const& a, std::vector<Rational> const& v) {
      std::vector<Rational> out(a._r);
      for (std::size_t i = 0; i < a._r; ++i)
        for (std::size_t k = 0; k < a._c; ++k)
          if (a(i, k) != 0 && v[k] != 0)
            out[i] += a(i, k) * v[k];
      return out;
    }

    friend RatMatrix operator-(RatMatrix a, RatMatrix const& b) {
      for (std::size_t i = 0; i < a._d.size(); ++i)
        a._d[i] -= b._d[i];
      return a;
    }

    friend RatMatrix operator+(RatMatrix a, RatMatrix const& b) {
      for (std::size_t i = 0; i < a._d.size(); ++i)
        a._d[i] += b._d[i];
      return a;
    }

   private:
    std::size_t           _r = 0, _c = 0;
    std::vector<Rational> _d;
  };

  inline RatMatrix kronecker(RatMatrix const& a, RatMatrix const& b) {
    RatMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j)
        if (a(i, j) != 0)
          for (std::size_t k = 0; k < b.rows(); ++k)
            for (std::size_t l = 0; l < b.cols(); ++l)
              m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return m;
  }

  struct Echelon {
    RatMatrix                reduced;  // nonzero rows first
    std::vector<std::size_t> pivots;   // pivot column of each nonzero row
    std::size_t              rank() const { return pivots.size(); }
  };

  inline Echelon row_reduce(RatMatrix m) {
    Echelon     e;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
      std::size_t piv = row;
      while (piv < m.rows() && m(piv, col) == 0)
        ++piv;
      if (piv == m.rows())
        continue;
      if (piv != row)
        for (std::size_t j = 0; j < m.cols(); ++j)
          std::swap(m(piv, j), m(row, j));
      Rational const inv = 1 / m(row, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        m(row, j) *= inv;
      for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i == row || m(i, col) == 0)
          continue;
        Rational const f = m(i, col);
        for (std::size_t j = col; j < m.cols(); ++j)
          if (m(row, j) != 0)
            m(i, j) -= f * m(row, j);
      }
      e.pivots.push_back(col);
      ++row;
    }
    e.reduced = std::move(m);
    return e;
  }

  inline std::size_t rank(RatMatrix const& m) { return row_reduce(m).rank(); }

  // Columns spanning {v : m v = 0}.
  inline RatMatrix kernel(RatMatrix const& m) {
    Echelon const     e = row_reduce(m);
    std::vector<char> is_pivot(m.cols(), 0);
    for (auto p : e.pivots)
      is_pivot[p] = 1;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!is_pivot[j])
        free_cols.push_back(j);
    RatMatrix k(m.cols(), free_cols.size());
    for (std::size_t f = 0; f < free_cols.size(); ++f) {
      k(free_cols[f], f) = 1;
      for (std::size_t r = 0; r < e.pivots.size(); ++r)
        k(e.pivots[r], f) = -e.reduced(r, free_cols[f]);
    }
    return k;
  }

  inline std::optional<RatMatrix> inverse(RatMatrix const& m) {
    if (m.rows() != m.cols())
      return std::nullopt;
    std::size_t const n = m.rows();
    RatMatrix         aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j)
        aug(i, j) = m(i, j);
      aug(i, n + i) = 1;
    }
    Echelon e = row_reduce(aug);
    if (e.rank() < n || e.pivots[n - 1] != n - 1)
      return std::nullopt;
    RatMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        inv(i, j) = e.reduced(i, n + j);
    return inv;
  }

}  // namespace groupoidal
