#pragma once

#include <cstdint>
#include <vector>

#include "realcech/exactalg/detail/dense_smith.hpp"
#include "realcech/exactalg/int_matrix.hpp"
#include "realcech/kernels/modp.hpp"

namespace realcech {

// u * m * v = d, d diagonal with d_1 | d_2 | ..., u and v unimodular.
struct SmithForm {
  IntMatrix d;
  IntMatrix u;
  IntMatrix v;
};

SmithForm smith_normal_form(const IntMatrix& m);

struct InvariantFactors {
  std::size_t rank = 0;
  std::vector<Integer> nontrivial;  // the invariant factors > 1, in divisibility order

  friend bool operator==(const InvariantFactors&, const InvariantFactors&) = default;
};

// Rank and non-unit invariant factors without transforms. Sparse unit-pivot
// elimination first, then a dense Smith form of whatever is left.
InvariantFactors invariant_factors(const IntMatrix& m);

// Exact rank over Q.
std::size_t rational_rank(const IntMatrix& m);

// Rank over F_p, p < 2^26 prime. A lower bound for the rational rank.
std::size_t rank_mod_prime(const IntMatrix& m, std::uint32_t p, kernels::Isa isa = kernels::best_isa());

inline constexpr std::uint32_t kPrefilterPrime = 67108859;  // largest prime below 2^26

namespace detail {

struct SmithDecomposition {
  std::size_t rank = 0;
  std::vector<Integer> diagonal;  // length min(rows, cols)
  SmithTransforms<Integer> transforms;
};

SmithDecomposition smith_decomposition(const IntMatrix& m);

DenseMatrix<Integer> to_dense_matrix(const IntMatrix& m);
IntMatrix to_int_matrix(const DenseMatrix<Integer>& m);

}  // namespace detail

}  // namespace realcech
