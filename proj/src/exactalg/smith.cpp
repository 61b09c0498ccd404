#include "realcech/exactalg/smith.hpp"

#include <algorithm>
#include <unordered_map>

#include "realcech/exactalg/detail/sparse_elimination.hpp"

namespace realcech {

namespace detail {

DenseMatrix<Integer> to_dense_matrix(const IntMatrix& m) {
  DenseMatrix<Integer> d(m.rows(), m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (const auto& e : m.column(c)) d(e.row, c) = e.value;
  return d;
}

IntMatrix to_int_matrix(const DenseMatrix<Integer>& m) {
  std::vector<IntMatrix::Triplet> t;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn(m(i, j)) != 0) t.push_back({i, j, m(i, j)});
  return IntMatrix::from_triplets(m.rows(), m.cols(), std::move(t));
}

SmithDecomposition smith_decomposition(const IntMatrix& m) {
  SmithDecomposition out{0, {}, SmithTransforms<Integer>(m.rows(), m.cols())};
  DenseMatrix<Integer> a = to_dense_matrix(m);
  out.diagonal = dense_smith(a, &out.transforms);
  for (const auto& d : out.diagonal)
    if (sgn(d) != 0) ++out.rank;
  return out;
}

}  // namespace detail

namespace {

using detail::CheckedInt;
using detail::DenseMatrix;
using detail::MarkowitzEliminator;
using detail::SparseColumn;

template <class T>
T convert(const Integer& z);
template <>
CheckedInt convert<CheckedInt>(const Integer& z) {
  return detail::to_checked(z);
}
template <>
Integer convert<Integer>(const Integer& z) {
  return z;
}

template <class T>
std::vector<SparseColumn<T>> sparse_columns(const IntMatrix& m) {
  std::vector<SparseColumn<T>> cols(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    cols[c].reserve(m.column(c).size());
    for (const auto& e : m.column(c)) cols[c].emplace_back(static_cast<std::uint32_t>(e.row), convert<T>(e.value));
  }
  return cols;
}

// The block left over after elimination, as a dense matrix.
template <class T, class Elim>
DenseMatrix<T> dense_core(const Elim& elim) {
  auto rows = elim.active_rows();
  auto cols = elim.active_columns();
  std::unordered_map<std::uint32_t, std::size_t> row_pos;
  for (std::size_t i = 0; i < rows.size(); ++i) row_pos[rows[i]] = i;
  DenseMatrix<T> d(rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [r, v] : elim.column(cols[j])) d(row_pos.at(r), j) = v;
  return d;
}

template <class T>
InvariantFactors invariant_factors_impl(const IntMatrix& m) {
  MarkowitzEliminator<detail::UnitPivotPolicy<T>> elim(m.rows(), sparse_columns<T>(m));
  InvariantFactors out;
  out.rank = elim.eliminate();
  DenseMatrix<T> core = dense_core<T>(elim);
  for (const auto& d : detail::dense_smith(core, static_cast<detail::SmithTransforms<T>*>(nullptr))) {
    if (sgn(d) == 0) continue;
    ++out.rank;
    if (d != T(1)) out.nontrivial.push_back(detail::to_mpz(d));
  }
  return out;
}

// Unit pivots first; the remaining block is returned for the caller to finish.
struct UnitReduction {
  std::size_t pivots = 0;
  IntMatrix core;
};

template <class T>
UnitReduction unit_reduce_impl(const IntMatrix& m) {
  MarkowitzEliminator<detail::UnitPivotPolicy<T>> elim(m.rows(), sparse_columns<T>(m));
  UnitReduction out;
  out.pivots = elim.eliminate();
  auto rows = elim.active_rows();
  auto cols = elim.active_columns();
  std::unordered_map<std::uint32_t, std::size_t> row_pos;
  for (std::size_t i = 0; i < rows.size(); ++i) row_pos[rows[i]] = i;
  std::vector<IntMatrix::Triplet> t;
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [r, v] : elim.column(cols[j])) t.push_back({row_pos.at(r), j, detail::to_mpz(v)});
  out.core = IntMatrix::from_triplets(rows.size(), cols.size(), std::move(t));
  return out;
}

UnitReduction unit_reduce(const IntMatrix& m) {
  try {
    return unit_reduce_impl<CheckedInt>(m);
  } catch (const detail::Overflow&) {
    return unit_reduce_impl<Integer>(m);
  }
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  auto dec = detail::smith_decomposition(m);
  std::vector<IntMatrix::Triplet> t;
  for (std::size_t i = 0; i < dec.diagonal.size(); ++i)
    if (sgn(dec.diagonal[i]) != 0) t.push_back({i, i, dec.diagonal[i]});
  return {IntMatrix::from_triplets(m.rows(), m.cols(), std::move(t)), detail::to_int_matrix(dec.transforms.u),
          detail::to_int_matrix(dec.transforms.v)};
}

InvariantFactors invariant_factors(const IntMatrix& m) {
  try {
    return invariant_factors_impl<CheckedInt>(m);
  } catch (const detail::Overflow&) {
    return invariant_factors_impl<Integer>(m);
  }
}

std::size_t rational_rank(const IntMatrix& m) {
  UnitReduction red = unit_reduce(m);
  std::vector<SparseColumn<Rational>> cols(red.core.cols());
  for (std::size_t c = 0; c < red.core.cols(); ++c)
    for (const auto& e : red.core.column(c)) cols[c].emplace_back(static_cast<std::uint32_t>(e.row), Rational(e.value));
  MarkowitzEliminator<detail::RationalPolicy> elim(red.core.rows(), std::move(cols));
  return red.pivots + elim.eliminate();
}

std::size_t rank_mod_prime(const IntMatrix& m, std::uint32_t p, kernels::Isa isa) {
  kernels::Modulus mod(p);
  const mpz_class pz(p);
  std::vector<SparseColumn<std::uint32_t>> cols(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    for (const auto& e : m.column(c)) {
      mpz_class r;
      mpz_fdiv_r(r.get_mpz_t(), e.value.get_mpz_t(), pz.get_mpz_t());
      if (sgn(r) != 0) cols[c].emplace_back(static_cast<std::uint32_t>(e.row), static_cast<std::uint32_t>(r.get_ui()));
    }
  }
  MarkowitzEliminator<detail::ModPrimePolicy> elim(m.rows(), std::move(cols), detail::ModPrimePolicy{p});
  // Sparse phase until the remaining block fills in, then the vector kernel.
  auto dense_enough = [&] {
    std::size_t r = elim.active_row_count();
    std::size_t c = elim.active_column_count();
    return r * c >= 1024 && elim.nonzeros() * 4 >= r * c;
  };
  std::size_t rank = elim.eliminate(dense_enough);
  auto rows = elim.active_rows();
  auto active = elim.active_columns();
  if (rows.empty() || active.empty()) return rank;
  std::unordered_map<std::uint32_t, std::size_t> row_pos;
  for (std::size_t i = 0; i < rows.size(); ++i) row_pos[rows[i]] = i;
  // Transposed: one dense row per remaining column, so the kernel runs along rows of the original.
  std::vector<std::vector<double>> dense(active.size(), std::vector<double>(rows.size(), 0.0));
  for (std::size_t j = 0; j < active.size(); ++j)
    for (const auto& [r, v] : elim.column(active[j])) dense[j][row_pos.at(r)] = static_cast<double>(v);
  return rank + kernels::dense_rank_mod(dense, mod, isa);
}

}  // namespace realcech
