#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace realcech {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

// a / b in lowest terms; gmp arithmetic requires canonical operands.
inline Rational ratio(const Integer& a, const Integer& b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

struct MatrixEntry {
  std::size_t row;
  Integer value;
};

// Sparse integer matrix, column-major. Each column holds its nonzero entries
// sorted by row; zeros are never stored.
class IntMatrix {
 public:
  struct Triplet {
    std::size_t row;
    std::size_t col;
    Integer value;
  };

  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix from_dense(const std::vector<IntVector>& rows, std::size_t cols);
  // Duplicate (row, col) pairs are summed.
  static IntMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  std::size_t nonzeros() const;
  bool is_zero() const;

  Integer at(std::size_t row, std::size_t col) const;
  void set(std::size_t row, std::size_t col, const Integer& value);
  std::span<const MatrixEntry> column(std::size_t col) const { return columns_[col]; }

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& rhs) const;
  IntMatrix operator+(const IntMatrix& rhs) const;
  IntMatrix operator-(const IntMatrix& rhs) const;
  IntMatrix scaled(const Integer& factor) const;
  // Columns [first, first + count).
  IntMatrix column_block(std::size_t first, std::size_t count) const;

  IntVector apply(std::span<const Integer> x) const;
  RatVector apply(std::span<const Rational> x) const;

  std::vector<IntVector> to_dense() const;
  std::string to_string() const;

  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::vector<std::vector<MatrixEntry>> columns_;
};

bool is_zero_vector(std::span<const Integer> v);
bool is_zero_vector(std::span<const Rational> v);

}  // namespace realcech
