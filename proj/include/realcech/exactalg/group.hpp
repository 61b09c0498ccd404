#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "realcech/exactalg/int_matrix.hpp"

namespace realcech {

// Finitely generated abelian group Z^rank + Z/d_1 + ... + Z/d_m with
// d_1 | d_2 | ... | d_m and every d_i >= 2. Equality of descriptors is
// isomorphism of groups.
struct GroupDescriptor {
  std::size_t rank = 0;
  std::vector<Integer> torsion;

  // Accepts arbitrary cyclic orders (0 counts as a free summand, 1 is dropped)
  // and merges them into invariant-factor form.
  static GroupDescriptor from_cyclic(std::size_t rank, std::vector<Integer> orders);
  static GroupDescriptor free(std::size_t rank) { return {rank, {}}; }

  bool is_trivial() const { return rank == 0 && torsion.empty(); }
  bool is_torsion() const { return rank == 0; }
  GroupDescriptor torsion_part() const { return {0, torsion}; }
  GroupDescriptor free_part() const { return {rank, {}}; }

  // "0", "Z", "Z^2 + Z/2 + Z/4"
  std::string to_string() const;

  friend bool operator==(const GroupDescriptor&, const GroupDescriptor&) = default;
};

// Sorted into a divisibility chain with units removed. Zeros are not allowed.
std::vector<Integer> invariant_factor_form(std::vector<Integer> orders);

// Coordinates of an element of a group described by a GroupDescriptor.
struct ElementCoordinates {
  IntVector free_part;
  IntVector torsion_part;  // entry i reduced into [0, d_i)

  bool is_zero() const { return is_zero_vector(free_part) && is_zero_vector(torsion_part); }
  friend bool operator==(const ElementCoordinates&, const ElementCoordinates&) = default;
};

// A group with divisible summands, as produced by hypercohomology when rational
// coefficient terms are present: Z^free_rank + Q^rational_dim + (Q/Z)^divisible_rank + torsion.
struct ExtendedGroup {
  std::size_t free_rank = 0;
  std::size_t rational_dim = 0;
  std::size_t divisible_rank = 0;
  std::vector<Integer> torsion;

  static ExtendedGroup from_integral(const GroupDescriptor& g) { return {g.rank, 0, 0, g.torsion}; }
  static ExtendedGroup from_rational_dim(std::size_t dim) { return {0, dim, 0, {}}; }

  bool is_finitely_generated() const { return rational_dim == 0 && divisible_rank == 0; }
  GroupDescriptor finitely_generated_part() const { return {free_rank, torsion}; }
  std::string to_string() const;

  friend bool operator==(const ExtendedGroup&, const ExtendedGroup&) = default;
};

}  // namespace realcech
