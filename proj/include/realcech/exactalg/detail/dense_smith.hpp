#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "realcech/exactalg/detail/checked_int.hpp"

namespace realcech::detail {

template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
  }
  // row dst += c * row src
  void add_row(std::size_t dst, std::size_t src, const T& c) {
    for (std::size_t k = 0; k < cols_; ++k)
      if (sgn((*this)(src, k)) != 0) (*this)(dst, k) += c * (*this)(src, k);
  }
  // col dst += c * col src
  void add_col(std::size_t dst, std::size_t src, const T& c) {
    for (std::size_t k = 0; k < rows_; ++k)
      if (sgn((*this)(k, src)) != 0) (*this)(k, dst) += c * (*this)(k, src);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = -(*this)(i, c);
  }
  void negate_col(std::size_t j) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, j) = -(*this)(r, j);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> a_;
};

// u * a * v = d, with the inverses kept in step.
template <class T>
struct SmithTransforms {
  DenseMatrix<T> u, u_inv, v, v_inv;

  SmithTransforms(std::size_t rows, std::size_t cols)
      : u(DenseMatrix<T>::identity(rows)),
        u_inv(DenseMatrix<T>::identity(rows)),
        v(DenseMatrix<T>::identity(cols)),
        v_inv(DenseMatrix<T>::identity(cols)) {}
};

// In-place Smith normal form by gcd-reducing row and column operations.
// Returns the diagonal (length min(rows, cols)); nonzero entries come first,
// are positive, and form a divisibility chain.
template <class T>
std::vector<T> dense_smith(DenseMatrix<T>& a, SmithTransforms<T>* tr) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();

  auto row_add = [&](std::size_t dst, std::size_t src, const T& c) {
    a.add_row(dst, src, c);
    if (tr) {
      tr->u.add_row(dst, src, c);
      tr->u_inv.add_col(src, dst, -c);
    }
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const T& c) {
    a.add_col(dst, src, c);
    if (tr) {
      tr->v.add_col(dst, src, c);
      tr->v_inv.add_row(src, dst, -c);
    }
  };
  auto row_swap = [&](std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    if (tr) {
      tr->u.swap_rows(i, j);
      tr->u_inv.swap_cols(i, j);
    }
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    a.swap_cols(i, j);
    if (tr) {
      tr->v.swap_cols(i, j);
      tr->v_inv.swap_rows(i, j);
    }
  };
  auto row_negate = [&](std::size_t i) {
    a.negate_row(i);
    if (tr) {
      tr->u.negate_row(i);
      tr->u_inv.negate_col(i);
    }
  };

  std::vector<T> diag;
  const std::size_t steps = std::min(m, n);
  std::size_t t = 0;
  for (; t < steps; ++t) {
    // Smallest nonzero of the trailing block goes to the pivot.
    std::size_t bi = m, bj = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (sgn(a(i, j)) != 0 && (bi == m || abs(a(i, j)) < abs(a(bi, bj)))) {
          bi = i;
          bj = j;
        }
    if (bi == m) break;
    row_swap(t, bi);
    col_swap(t, bj);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (sgn(a(i, t)) == 0) continue;
        T q = a(i, t) / a(t, t);
        if (sgn(q) != 0) row_add(i, t, -q);
        if (sgn(a(i, t)) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (sgn(a(t, j)) == 0) continue;
        T q = a(t, j) / a(t, t);
        if (sgn(q) != 0) col_add(j, t, -q);
        if (sgn(a(t, j)) != 0) clean = false;
      }
      if (!clean) {
        std::size_t bi2 = t, bj2 = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (sgn(a(i, t)) != 0 && abs(a(i, t)) < abs(a(bi2, bj2))) {
            bi2 = i;
            bj2 = t;
          }
        for (std::size_t j = t + 1; j < n; ++j)
          if (sgn(a(t, j)) != 0 && abs(a(t, j)) < abs(a(bi2, bj2))) {
            bi2 = t;
            bj2 = j;
          }
        row_swap(t, bi2);
        col_swap(t, bj2);
        continue;
      }
      // Pivot must divide the whole trailing block.
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (sgn(a(i, j) % a(t, t)) != 0) {
            row_add(t, i, T(1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (sgn(a(t, t)) < 0) row_negate(t);
    diag.push_back(a(t, t));
  }
  diag.resize(steps, T(0));
  return diag;
}

}  // namespace realcech::detail
