#pragma once

#include <map>
#include <memory>
#include <tuple>
#include <vector>

#include "realcech/coverdata/cover.hpp"
#include "realcech/errors.hpp"
#include "realcech/exactalg/int_matrix.hpp"

namespace realcech {

struct PairSlot {
  C2Cover::Index i;
  C2Cover::Index j;
  C2Cover::ComponentId component;  // a component of the intersection of U_i and U_j
};

// Locally constant U(1) transition data: exp(2 pi i theta) on each component
// of each ordered pair intersection. Angles are read mod 1.
struct FlatCocycle {
  std::shared_ptr<const C2Cover> cover;
  std::vector<Rational> angles;  // aligned with pair_slots(*cover)

  static FlatCocycle zero(std::shared_ptr<const C2Cover> cover);

  std::size_t slot(C2Cover::Index i, C2Cover::Index j, C2Cover::ComponentId c) const;
  const Rational& angle(C2Cover::Index i, C2Cover::Index j, C2Cover::ComponentId c) const {
    return angles[slot(i, j, c)];
  }
};

// Ordered pairs (i, j), i != j, lexicographically, then components in cover order.
std::vector<PairSlot> pair_slots(const C2Cover& cover);

// Antisymmetry, equivariance (conjugation negates the angle) and the cocycle
// condition on triples, all mod 1.
std::vector<Violation> flat_cocycle_violations(const FlatCocycle& fc);
// Throws Error(InvalidCocycle) naming the first violated invariant.
void check_flat_cocycle(const FlatCocycle& fc);

bool congruent_mod_one(const Rational& a, const Rational& b);

}  // namespace realcech
