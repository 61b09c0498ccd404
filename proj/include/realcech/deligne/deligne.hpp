#pragma once

#include <json.hpp>

#include <random>
#include <span>
#include <string>

#include "realcech/cechengine/engine.hpp"
#include "realcech/coverdata/flat_cocycle.hpp"
#include "realcech/exactalg/group.hpp"

namespace realcech {

enum class DeligneShape { Discrete, CompactExtension, Mixed };

inline constexpr const char* kSmoothPartSymbol = "E^{p-1}/E^{p-1}_0(M)";

std::string to_string(DeligneShape shape);

// Discrete when p = 0 or q > p, Mixed when q = p >= 1, CompactExtension when
// q < p (including q = 0 < p, where the group is 0).
DeligneShape deligne_shape(int p, int q);

// Real smooth Deligne cohomology H^q(M; Z(p)).
struct DeligneDescriptor {
  int p = 0;
  int q = 0;
  DeligneShape shape = DeligneShape::Discrete;
  // Discrete: the group. Mixed: the discrete quotient H^q(iZ).
  // CompactExtension: the torsion H^q(iZ)_tors (rank 0).
  GroupDescriptor group;
  std::size_t torus_dim = 0;   // CompactExtension only
  bool split_assumed = false;  // CompactExtension only
  std::string smooth_part;     // Mixed only: kSmoothPartSymbol

  std::string space;
  int degrees_lo = 0;
  int degrees_hi = 0;
  bool good_cover_asserted = true;

  std::string to_string() const;
  friend bool operator==(const DeligneDescriptor&, const DeligneDescriptor&) = default;
};

// Throws InsufficientDegree unless q <= N - 1.
DeligneDescriptor deligne_descriptor(const CohomologyEngine& engine, int p, int q);
DeligneDescriptor deligne_descriptor(const C2Cover& cover, int p, int q, int max_degree);

// Result record: space, p, q, shape, rank, torsion, torus_dim,
// smooth_part_symbolic, degrees_computed, good_cover_asserted.
nlohmann::ordered_json to_json(const DeligneDescriptor& d);

// H^2(iZ).
GroupDescriptor classify_line_bundles(const C2Cover& cover);
// H^2(Z(2)): Mixed.
DeligneDescriptor classify_line_bundles_with_connection(const C2Cover& cover);
// H^2(Z(3)): CompactExtension.
DeligneDescriptor classify_flat_line_bundles(const C2Cover& cover);
// H^1(iZ); throws NotCompact unless the cover is flagged compact.
GroupDescriptor real_circle_maps(const C2Cover& cover);

// H^k(iR/iZ) as torus x torsion: torus_dim = rank H^k(iZ), torsion = H^(k+1)(iZ)_tors.
struct QuotientCohomology {
  std::size_t torus_dim = 0;
  GroupDescriptor torsion;
  friend bool operator==(const QuotientCohomology&, const QuotientCohomology&) = default;
};
QuotientCohomology quotient_coefficients_cohomology(const CohomologyEngine& engine, int k);
QuotientCohomology quotient_coefficients_cohomology(const C2Cover& cover, int k);

// Integral lift of a flat cocycle and its coboundary.
struct BocksteinData {
  RatVector lift;                  // equivariant rational 1-cochain, full basis
  IntVector cocycle;               // coboundary of the lift, full basis; integral
  IntVector fixed_cocycle;         // the same in the fixed basis
  ElementCoordinates coordinates;  // class in H^2(iZ)
};

// Coordinates in H^2(Z(3)) = torus x torsion under the split assumption.
struct FlatClass {
  RatVector torus;               // length rank H^1(iZ), entries in [0, 1)
  ElementCoordinates bockstein;  // class of the Bockstein in H^2(iZ); free part always 0
  bool trivial = false;          // both parts zero

  friend bool operator==(const FlatClass&, const FlatClass&) = default;
};

// Classifies flat cocycles on one cover. Holds the bases of H^1 and H^2(iZ)
// so repeated queries share them. The engine must outlive the classifier,
// have max_degree >= 3, and is queried for sign -1 only.
class FlatClassifier {
 public:
  explicit FlatClassifier(const CohomologyEngine& engine);

  const C2Cover& cover() const { return engine_.cover(); }
  const GroupDescriptor& h1() const { return h1_.group(); }
  const GroupDescriptor& h2() const { return h2_.group(); }

  // shifts[s] (one per pair slot, or empty) moves the lift of slot s by an
  // integer; a slot whose partner under the involution comes first follows it.
  BocksteinData bockstein(const FlatCocycle& fc, std::span<const Integer> shifts = {}) const;
  // Throws InvalidCocycle or CoverMismatch.
  FlatClass classify(const FlatCocycle& fc) const;
  bool equivalent(const FlatCocycle& a, const FlatCocycle& b) const;

  // A coboundary, plus random multiples of the free classes of H^1 and of
  // the torsion classes of H^2, plus integer noise. `expected` receives the
  // class it was built to have.
  FlatCocycle random_cocycle(std::mt19937_64& rng, FlatClass* expected = nullptr) const;

 private:
  void require_cover(const FlatCocycle& fc) const;

  const CohomologyEngine& engine_;
  const EquivariantComplex& complex_;
  std::vector<PairSlot> slots_;
  std::vector<std::size_t> element_;  // slot -> element of the degree 1 basis
  std::vector<std::size_t> partner_;  // slot -> slot of its image
  CohomologyBasis h1_;
  CohomologyBasis h2_;
  std::string cover_json_;
};

// Convenience forms that build a degree 3 engine for the cocycle's cover.
FlatClass flat_cocycle_class(const FlatCocycle& fc);
// Throws CoverMismatch when the cocycles live on different covers.
bool cocycles_equivalent(const FlatCocycle& a, const FlatCocycle& b);

// Coboundary of the equivariant 0-cochain taking the given angles on the
// first element of each orbit of the degree 0 basis.
FlatCocycle flat_coboundary(std::shared_ptr<const C2Cover> cover, std::span<const Rational> orbit_angles);
std::size_t zero_cochain_orbits(const C2Cover& cover);

}  // namespace realcech
