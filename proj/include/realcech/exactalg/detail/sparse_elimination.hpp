#pragma once

// Markowitz-ordered sparse elimination, shared by the integral (unit pivots
// only), rational and modular rank computations. Only column operations are
// performed: pivoting on (r, c) clears row r from every other column and then
// drops row r and column c, which removes one invariant factor equal to the
// pivot's associate class and leaves the rest of the Smith form unchanged.

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "realcech/exactalg/detail/checked_int.hpp"
#include "realcech/exactalg/detail/dense_smith.hpp"
#include "realcech/exactalg/int_matrix.hpp"
#include "realcech/kernels/modp.hpp"

namespace realcech::detail {

template <class T>
using SparseColumn = std::vector<std::pair<std::uint32_t, T>>;

template <class T>
struct UnitPivotPolicy {
  using value_type = T;
  bool is_zero(const T& a) const { return sgn(a) == 0; }
  bool eligible(const T& a) const { return a == T(1) || a == T(-1); }
  // Pivot is +-1, so it is its own inverse.
  T factor(const T& entry, const T& pivot) const { return entry * pivot; }
  T sub_mul(const T& x, const T& f, const T& y) const { return x - f * y; }
  T neg_mul(const T& f, const T& y) const { return -(f * y); }
};

struct RationalPolicy {
  using value_type = mpq_class;
  bool is_zero(const mpq_class& a) const { return sgn(a) == 0; }
  bool eligible(const mpq_class& a) const { return sgn(a) != 0; }
  mpq_class factor(const mpq_class& entry, const mpq_class& pivot) const { return entry / pivot; }
  mpq_class sub_mul(const mpq_class& x, const mpq_class& f, const mpq_class& y) const { return x - f * y; }
  mpq_class neg_mul(const mpq_class& f, const mpq_class& y) const { return -(f * y); }
};

struct ModPrimePolicy {
  using value_type = std::uint32_t;
  std::uint64_t p;

  bool is_zero(std::uint32_t a) const { return a == 0; }
  bool eligible(std::uint32_t a) const { return a != 0; }
  std::uint32_t factor(std::uint32_t entry, std::uint32_t pivot) const {
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(entry) * kernels::inverse_mod(pivot, static_cast<std::uint32_t>(p))) % p);
  }
  std::uint32_t sub_mul(std::uint32_t x, std::uint32_t f, std::uint32_t y) const {
    return static_cast<std::uint32_t>((x + p - (static_cast<std::uint64_t>(f) * y) % p) % p);
  }
  std::uint32_t neg_mul(std::uint32_t f, std::uint32_t y) const {
    return static_cast<std::uint32_t>((p - (static_cast<std::uint64_t>(f) * y) % p) % p);
  }
};

template <class Policy>
class MarkowitzEliminator {
 public:
  using T = typename Policy::value_type;
  using Column = SparseColumn<T>;

  MarkowitzEliminator(std::size_t rows, std::vector<Column> cols, Policy policy = {})
      : policy_(std::move(policy)),
        cols_(std::move(cols)),
        col_alive_(cols_.size(), 1),
        parked_(cols_.size(), 0),
        stamp_(cols_.size(), 0),
        row_count_(rows, 0),
        row_cols_(rows) {
    for (std::uint32_t c = 0; c < cols_.size(); ++c) {
      for (const auto& [r, v] : cols_[c]) {
        ++row_count_[r];
        row_cols_[r].push_back(c);
      }
      nonzeros_ += cols_[c].size();
      if (!cols_[c].empty()) {
        queue_.insert({static_cast<std::uint32_t>(cols_[c].size()), c});
        ++live_cols_;
      }
    }
    for (auto n : row_count_)
      if (n > 0) ++active_rows_;
  }

  // Pivots until no eligible entry is left, or until stop() returns true
  // (checked after each pivot). Returns the total number of pivots so far.
  template <class Stop>
  std::size_t eliminate(Stop&& stop) {
    while (!queue_.empty()) {
      auto [nnz, c] = *queue_.begin();
      std::uint32_t best = 0;
      bool found = false;
      bool best_unit = false;
      for (const auto& [r, v] : cols_[c]) {
        if (!policy_.eligible(v)) continue;
        bool unit = v == T(1) || v == T(-1);
        if (!found || row_count_[r] < row_count_[best] || (row_count_[r] == row_count_[best] && unit && !best_unit)) {
          best = r;
          best_unit = unit;
          found = true;
        }
      }
      if (!found) {
        queue_.erase(queue_.begin());
        parked_[c] = 1;
        continue;
      }
      pivot(best, c);
      if (stop()) break;
    }
    return pivots_;
  }

  std::size_t eliminate() {
    return eliminate([] { return false; });
  }

  std::size_t pivots() const { return pivots_; }
  std::size_t nonzeros() const { return nonzeros_; }

  // Remaining nonzero block (rows and columns that still carry entries).
  std::vector<std::uint32_t> active_columns() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t c = 0; c < cols_.size(); ++c)
      if (col_alive_[c] && !cols_[c].empty()) out.push_back(c);
    return out;
  }
  std::vector<std::uint32_t> active_rows() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t r = 0; r < row_count_.size(); ++r)
      if (row_count_[r] > 0) out.push_back(r);
    return out;
  }
  const Column& column(std::uint32_t c) const { return cols_[c]; }

  std::size_t active_row_count() const { return active_rows_; }
  std::size_t active_column_count() const { return live_cols_; }

 private:
  void bump_row(std::uint32_t r, int delta) {
    if (delta > 0) {
      if (row_count_[r]++ == 0) ++active_rows_;
    } else {
      if (--row_count_[r] == 0) --active_rows_;
    }
  }

  void pivot(std::uint32_t r, std::uint32_t c) {
    queue_.erase({static_cast<std::uint32_t>(cols_[c].size()), c});
    col_alive_[c] = 0;
    --live_cols_;
    Column pc = std::move(cols_[c]);
    cols_[c].clear();
    nonzeros_ -= pc.size();
    T pv{};
    for (const auto& [rr, v] : pc) {
      if (rr == r) pv = v;
      bump_row(rr, -1);
    }

    ++generation_;
    std::vector<std::uint32_t> candidates;
    candidates.swap(row_cols_[r]);
    for (std::uint32_t c2 : candidates) {
      if (!col_alive_[c2] || stamp_[c2] == generation_) continue;
      stamp_[c2] = generation_;
      Column& col = cols_[c2];
      auto it = std::lower_bound(col.begin(), col.end(), r, [](const auto& e, std::uint32_t x) { return e.first < x; });
      if (it == col.end() || it->first != r) continue;
      T f = policy_.factor(it->second, pv);
      if (!parked_[c2]) queue_.erase({static_cast<std::uint32_t>(col.size()), c2});
      nonzeros_ -= col.size();

      Column merged;
      merged.reserve(col.size() + pc.size());
      std::size_t i = 0, j = 0;
      while (i < col.size() || j < pc.size()) {
        if (j == pc.size() || (i < col.size() && col[i].first < pc[j].first)) {
          merged.push_back(std::move(col[i++]));
        } else if (i == col.size() || pc[j].first < col[i].first) {
          std::uint32_t row = pc[j].first;
          merged.emplace_back(row, policy_.neg_mul(f, pc[j].second));
          bump_row(row, +1);
          row_cols_[row].push_back(c2);
          ++j;
        } else {
          std::uint32_t row = col[i].first;
          T v = policy_.sub_mul(col[i].second, f, pc[j].second);
          if (policy_.is_zero(v))
            bump_row(row, -1);
          else
            merged.emplace_back(row, std::move(v));
          ++i;
          ++j;
        }
      }
      col = std::move(merged);
      nonzeros_ += col.size();
      parked_[c2] = 0;
      if (!col.empty())
        queue_.insert({static_cast<std::uint32_t>(col.size()), c2});
      else
        --live_cols_;
    }
    ++pivots_;
  }

  Policy policy_;
  std::vector<Column> cols_;
  std::vector<char> col_alive_;
  std::vector<char> parked_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t generation_ = 0;
  std::vector<std::uint32_t> row_count_;
  std::vector<std::vector<std::uint32_t>> row_cols_;
  std::set<std::pair<std::uint32_t, std::uint32_t>> queue_;
  std::size_t pivots_ = 0;
  std::size_t nonzeros_ = 0;
  std::size_t active_rows_ = 0;
  std::size_t live_cols_ = 0;
};

}  // namespace realcech::detail
