#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "realcech/cechengine/tuple_basis.hpp"
#include "realcech/coverdata/coefficients.hpp"
#include "realcech/coverdata/cover.hpp"
#include "realcech/exactalg/cochain_complex.hpp"

namespace realcech {

struct CechOptions {
  bool include_degenerate = false;  // keep tuples with equal consecutive entries
};

// Full Cech complex in degrees 0..N, the involution on it, and its fixed part.
struct EquivariantComplex {
  int max_degree = 0;
  int sign = 1;
  std::shared_ptr<const SupportTable> table;
  std::vector<TupleBasis> bases;
  IntegerCochainComplex full;
  std::vector<IntMatrix> involution;
  FixedSubcomplex fixed;

  const IntegerCochainComplex& complex() const { return fixed.complex; }
};

// Cech coboundary C^p -> C^(p+1) on the given bases.
IntMatrix cech_coboundary(const C2Cover& cover, const SupportTable& table, const TupleBasis& from,
                          const TupleBasis& to, bool include_degenerate);
// Signed permutation (tuple, c) -> (t.tuple, t.c) times the coefficient sign.
IntMatrix cech_involution(const C2Cover& cover, const SupportTable& table, const TupleBasis& basis, int sign);

// Throws CoverNotFree if some index is fixed. H^k is exact for k <= N - 1.
EquivariantComplex build_equivariant_complex(const C2Cover& cover, const CoefficientSystem& coeff, int max_degree,
                                             CechOptions options = {});

// For Rationals the rank field holds the dimension. Requires 0 <= k <= N - 1.
GroupDescriptor equivariant_cohomology(const C2Cover& cover, const CoefficientSystem& coeff, int k, int max_degree,
                                       CechOptions options = {});
// Ordinary cohomology of the nerve complex; the coefficient sign is ignored.
GroupDescriptor nonequivariant_cohomology(const C2Cover& cover, const CoefficientSystem& coeff, int k,
                                          int max_degree, CechOptions options = {});

// Cohomology of one fixed complex, by coefficient base.
GroupDescriptor cohomology_with(const IntegerCochainComplex& c, const CoefficientSystem& coeff, int k);

// Builds each signed complex once and answers repeated queries.
class CohomologyEngine {
 public:
  CohomologyEngine(std::shared_ptr<const C2Cover> cover, int max_degree, CechOptions options = {});

  const C2Cover& cover() const { return *cover_; }
  std::shared_ptr<const C2Cover> cover_ptr() const { return cover_; }
  int max_degree() const { return max_degree_; }

  const EquivariantComplex& complex(int sign) const;
  GroupDescriptor cohomology(const CoefficientSystem& coeff, int k) const;
  std::size_t rational_dim(int sign, int k) const;

 private:
  void require(int k) const;

  std::shared_ptr<const C2Cover> cover_;
  int max_degree_;
  CechOptions options_;
  mutable std::mutex mu_;
  mutable std::map<int, std::shared_ptr<const EquivariantComplex>> complexes_;
};

// Bounded complex of coefficient systems in degrees 0..m.
struct CoefficientMap {
  enum class Kind { Multiply, Inclusion };
  Kind kind = Kind::Multiply;
  Integer factor = 1;

  static CoefficientMap multiply(const Integer& a) { return {Kind::Multiply, a}; }
  static CoefficientMap inclusion() { return {Kind::Inclusion, 1}; }
};

struct CoefficientComplex {
  std::vector<CoefficientSystem> terms;
  std::vector<CoefficientMap> maps;  // maps[i]: terms[i] -> terms[i+1]

  // Throws InvalidCoefficientComplex or UnsupportedCoefficients.
  void check() const;
  std::string to_string() const;
};

// Sign in front of the coefficient-map part of the total differential.
enum class TotalSign {
  CechDegree,         // d_T = delta + (-1)^j d, j the Cech degree: squares to zero
  CoefficientDegree,  // d_T = delta + (-1)^i d, i the coefficient degree
};

// One term of a total complex: a fixed Cech complex placed in coefficient degree `position`.
struct TotalTerm {
  int position;
  const IntegerCochainComplex* complex;
};

// Total complex in degrees 0..N. map_factors[i] scales terms at positions i
// and i + 1 (whose complexes must coincide); maps touching an absent
// position are dropped.
IntegerCochainComplex total_complex(const std::vector<TotalTerm>& terms, const std::vector<Integer>& map_factors,
                                    int max_degree, TotalSign convention = TotalSign::CechDegree);

// Cohomology of the total complex. Rational terms form a subcomplex V with
// integral quotient F; the answer is assembled from H(V), H(F) and H(T (x) Q)
// and may contain Q and Q/Z summands.
ExtendedGroup hypercohomology(const C2Cover& cover, const CoefficientComplex& fstar, int k, int max_degree);
ExtendedGroup hypercohomology(const CohomologyEngine& engine, const CoefficientComplex& fstar, int k);

}  // namespace realcech
