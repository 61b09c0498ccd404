#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "realcech/exactalg/group.hpp"
#include "realcech/exactalg/int_matrix.hpp"
#include "realcech/exactalg/smith.hpp"

namespace realcech {

class CohomologyBasis;

// Finite cochain complex of free abelian groups in degrees lo..hi. d(k) maps
// degree k to degree k + 1; differentials leaving the range are zero maps.
class IntegerCochainComplex {
 public:
  IntegerCochainComplex();
  // diffs[i] is d(lo + i); there are ranks.size() - 1 of them.
  IntegerCochainComplex(int lo, std::vector<std::size_t> ranks, std::vector<IntMatrix> diffs);

  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(ranks_.size()) - 1; }
  bool contains(int k) const { return k >= lo() && k <= hi(); }
  std::size_t rank(int k) const;
  // Zero matrix of the right shape outside lo..hi-1.
  const IntMatrix& differential(int k) const;

  // Exact check of d(k+1) d(k) = 0 in every degree.
  bool squares_to_zero() const;

  // Memoized per-degree data; safe to call from several threads.
  const InvariantFactors& invariants(int k) const;
  std::size_t rational_rank_of(int k) const;
  std::size_t rank_mod_prime_of(int k) const;
  std::shared_ptr<const CohomologyBasis> basis(int k) const;

 private:
  struct Cache;
  int lo_ = 0;
  std::vector<std::size_t> ranks_;
  std::vector<IntMatrix> diffs_;
  std::vector<IntMatrix> zero_edges_;  // d(lo - 1) and d(hi)
  std::shared_ptr<Cache> cache_;
};

GroupDescriptor complex_cohomology(const IntegerCochainComplex& c, int k);
// dim_Q H^k(C (x) Q).
std::size_t rational_cohomology_dim(const IntegerCochainComplex& c, int k);
// H^k(C (x) Z/n) by universal coefficients; needs d(k) as well.
GroupDescriptor mod_n_cohomology(const IntegerCochainComplex& c, int k, const Integer& n);

struct FixedSubcomplex {
  IntegerCochainComplex complex;
  std::vector<IntMatrix> basis;        // basis[i]: n_k x f_k, columns span ker(t_k - 1)
  std::vector<IntMatrix> coordinates;  // coordinates[i]: f_k x n_k, coordinates[i] * basis[i] = 1
};

// t[i] acts in degree lo + i.
FixedSubcomplex fixed_subcomplex(const IntegerCochainComplex& c, const std::vector<IntMatrix>& t);

// Fixed basis of H^k: torsion generators first (one per non-unit invariant
// factor of d(k-1)), then free generators.
class CohomologyBasis {
 public:
  CohomologyBasis(const IntegerCochainComplex& c, int k);

  const GroupDescriptor& group() const { return group_; }
  int degree() const { return k_; }

  // Throws NotACocycle.
  ElementCoordinates coordinates(std::span<const Integer> cocycle) const;
  IntVector torsion_generator(std::size_t i) const;
  IntVector free_generator(std::size_t j) const;
  // Some x with d(k-1) x = target, if one exists.
  std::optional<IntVector> solve_coboundary(std::span<const Integer> target) const;
  // Rational cochain y with d(k-1) y = order * g for the i-th torsion generator g:
  // y = w / order with w integral. Returns w.
  IntVector torsion_witness(std::size_t i) const;

 private:
  int k_;
  GroupDescriptor group_;
  IntMatrix dk_;
  std::size_t n_ = 0;
  std::size_t r_ = 0;                   // rank of d(k-1)
  std::vector<Integer> diag_;           // invariant factors of d(k-1), length r_
  std::vector<std::size_t> torsion_at_; // positions i < r_ with diag_[i] > 1
  IntMatrix u_, u_inv_, v_;             // u d(k-1) v = diag
  std::size_t r2_ = 0;                  // rank of M' = (d(k) u^-1)[:, r:]
  IntMatrix v2_, v2_inv_;               // from the Smith form of M'
};

ElementCoordinates class_coordinates(const IntegerCochainComplex& c, int k, std::span<const Integer> cocycle);

}  // namespace realcech
