#include "realcech/exactalg/int_matrix.hpp"

#include <algorithm>
#include <sstream>

#include "realcech/errors.hpp"

namespace realcech {

namespace {

void require_shape(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::ShapeMismatch, what);
}

// Dense accumulator reused across the columns of one product.
class SparseAccumulator {
 public:
  explicit SparseAccumulator(std::size_t n) : values_(n), marked_(n, false) {}

  void add(std::size_t row, const Integer& a, const Integer& b) {
    if (!marked_[row]) {
      marked_[row] = true;
      touched_.push_back(row);
      values_[row] = a * b;
    } else {
      values_[row] += a * b;
    }
  }

  void add(std::size_t row, const Integer& a) {
    if (!marked_[row]) {
      marked_[row] = true;
      touched_.push_back(row);
      values_[row] = a;
    } else {
      values_[row] += a;
    }
  }

  std::vector<MatrixEntry> drain() {
    std::sort(touched_.begin(), touched_.end());
    std::vector<MatrixEntry> out;
    out.reserve(touched_.size());
    for (std::size_t r : touched_) {
      if (sgn(values_[r]) != 0) out.push_back({r, values_[r]});
      marked_[r] = false;
    }
    touched_.clear();
    return out;
  }

 private:
  std::vector<Integer> values_;
  std::vector<bool> marked_;
  std::vector<std::size_t> touched_;
};

}  // namespace

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.columns_[i].push_back({i, Integer(1)});
  return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  std::size_t cols = rows.size() == 0 ? 0 : rows.begin()->size();
  IntMatrix m(rows.size(), cols);
  std::size_t r = 0;
  for (const auto& row : rows) {
    require_shape(row.size() == cols, "ragged row in from_rows");
    std::size_t c = 0;
    for (long v : row) {
      if (v != 0) m.columns_[c].push_back({r, Integer(v)});
      ++c;
    }
    ++r;
  }
  return m;
}

IntMatrix IntMatrix::from_dense(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    require_shape(rows[r].size() == cols, "ragged row in from_dense");
    for (std::size_t c = 0; c < cols; ++c)
      if (sgn(rows[r][c]) != 0) m.columns_[c].push_back({r, rows[r][c]});
  }
  return m;
}

IntMatrix IntMatrix::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets) {
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < triplets.size();) {
    auto& t = triplets[i];
    require_shape(t.row < rows && t.col < cols, "triplet outside matrix");
    Integer sum = t.value;
    std::size_t j = i + 1;
    while (j < triplets.size() && triplets[j].row == t.row && triplets[j].col == t.col) sum += triplets[j++].value;
    if (sgn(sum) != 0) m.columns_[t.col].push_back({t.row, std::move(sum)});
    i = j;
  }
  return m;
}

std::size_t IntMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : columns_) n += c.size();
  return n;
}

bool IntMatrix::is_zero() const {
  return std::all_of(columns_.begin(), columns_.end(), [](const auto& c) { return c.empty(); });
}

Integer IntMatrix::at(std::size_t row, std::size_t col) const {
  require_shape(row < rows_ && col < cols(), "index outside matrix");
  const auto& c = columns_[col];
  auto it = std::lower_bound(c.begin(), c.end(), row, [](const MatrixEntry& e, std::size_t r) { return e.row < r; });
  if (it != c.end() && it->row == row) return it->value;
  return 0;
}

void IntMatrix::set(std::size_t row, std::size_t col, const Integer& value) {
  require_shape(row < rows_ && col < cols(), "index outside matrix");
  auto& c = columns_[col];
  auto it = std::lower_bound(c.begin(), c.end(), row, [](const MatrixEntry& e, std::size_t r) { return e.row < r; });
  bool present = it != c.end() && it->row == row;
  if (sgn(value) == 0) {
    if (present) c.erase(it);
  } else if (present) {
    it->value = value;
  } else {
    c.insert(it, {row, value});
  }
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols(), rows_);
  for (std::size_t c = 0; c < cols(); ++c)
    for (const auto& e : columns_[c]) t.columns_[e.row].push_back({c, e.value});
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  require_shape(cols() == rhs.rows(), "inner dimensions differ in product");
  IntMatrix out(rows_, rhs.cols());
  SparseAccumulator acc(rows_);
  for (std::size_t j = 0; j < rhs.cols(); ++j) {
    for (const auto& b : rhs.columns_[j])
      for (const auto& a : columns_[b.row]) acc.add(a.row, a.value, b.value);
    out.columns_[j] = acc.drain();
  }
  return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& rhs) const {
  require_shape(rows_ == rhs.rows_ && cols() == rhs.cols(), "shapes differ in sum");
  IntMatrix out(rows_, cols());
  SparseAccumulator acc(rows_);
  for (std::size_t j = 0; j < cols(); ++j) {
    for (const auto& e : columns_[j]) acc.add(e.row, e.value);
    for (const auto& e : rhs.columns_[j]) acc.add(e.row, e.value);
    out.columns_[j] = acc.drain();
  }
  return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const { return *this + rhs.scaled(-1); }

IntMatrix IntMatrix::scaled(const Integer& factor) const {
  if (sgn(factor) == 0) return IntMatrix(rows_, cols());
  IntMatrix out = *this;
  for (auto& c : out.columns_)
    for (auto& e : c) e.value *= factor;
  return out;
}

IntMatrix IntMatrix::column_block(std::size_t first, std::size_t count) const {
  require_shape(first + count <= cols(), "column block outside matrix");
  IntMatrix out(rows_, count);
  for (std::size_t j = 0; j < count; ++j) out.columns_[j] = columns_[first + j];
  return out;
}

IntVector IntMatrix::apply(std::span<const Integer> x) const {
  require_shape(x.size() == cols(), "vector length differs from column count");
  IntVector y(rows_);
  for (std::size_t c = 0; c < cols(); ++c) {
    if (sgn(x[c]) == 0) continue;
    for (const auto& e : columns_[c]) y[e.row] += e.value * x[c];
  }
  return y;
}

RatVector IntMatrix::apply(std::span<const Rational> x) const {
  require_shape(x.size() == cols(), "vector length differs from column count");
  RatVector y(rows_);
  for (std::size_t c = 0; c < cols(); ++c) {
    if (sgn(x[c]) == 0) continue;
    for (const auto& e : columns_[c]) y[e.row] += Rational(e.value) * x[c];
  }
  for (auto& v : y) v.canonicalize();
  return y;
}

std::vector<IntVector> IntMatrix::to_dense() const {
  std::vector<IntVector> out(rows_, IntVector(cols()));
  for (std::size_t c = 0; c < cols(); ++c)
    for (const auto& e : columns_[c]) out[e.row][c] = e.value;
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  auto dense = to_dense();
  os << "[";
  for (std::size_t r = 0; r < dense.size(); ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < dense[r].size(); ++c) os << (c ? ", " : "") << dense[r][c];
    os << "]";
  }
  os << "]";
  return os.str();
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols() != b.cols()) return false;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    const auto& x = a.columns_[c];
    const auto& y = b.columns_[c];
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i].row != y[i].row || x[i].value != y[i].value) return false;
  }
  return true;
}

bool is_zero_vector(std::span<const Integer> v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return sgn(x) == 0; });
}

bool is_zero_vector(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

}  // namespace realcech
