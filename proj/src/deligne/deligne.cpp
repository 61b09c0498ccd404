#include "realcech/deligne/deligne.hpp"

#include <stdexcept>

#include "realcech/coverdata/cover_json.hpp"
#include "realcech/errors.hpp"

namespace realcech {

namespace {

Rational frac(const Rational& x) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return x - Rational(fl);
}

// Common denominator of a rational vector.
Integer denominator(std::span<const Rational> v) {
  Integer den = 1;
  for (const auto& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  return den;
}

IntVector scaled_to_integers(std::span<const Rational> v, const Integer& den) {
  IntVector out;
  out.reserve(v.size());
  for (const auto& x : v) {
    Rational y = x * den;
    if (y.get_den() != 1) throw std::logic_error("denominator does not clear");
    out.push_back(y.get_num());
  }
  return out;
}

nlohmann::ordered_json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

GroupDescriptor iz(const CohomologyEngine& engine, int k) { return engine.cohomology(CoefficientSystem::iZ(), k); }

}  // namespace

std::string to_string(DeligneShape shape) {
  switch (shape) {
    case DeligneShape::Discrete: return "discrete";
    case DeligneShape::CompactExtension: return "compact_extension";
    case DeligneShape::Mixed: return "mixed";
  }
  return "?";
}

DeligneShape deligne_shape(int p, int q) {
  if (p < 0 || q < 0) throw Error(ErrorCode::DegreeOutOfRange, "p and q must be nonnegative");
  if (p == 0 || q > p) return DeligneShape::Discrete;
  if (q == p) return DeligneShape::Mixed;
  return DeligneShape::CompactExtension;
}

std::string DeligneDescriptor::to_string() const {
  switch (shape) {
    case DeligneShape::Discrete: return "discrete " + group.to_string();
    case DeligneShape::Mixed: return "mixed: smooth part " + smooth_part + ", discrete quotient " + group.to_string();
    case DeligneShape::CompactExtension:
      return "compact_extension: torus_dim " + std::to_string(torus_dim) + ", torsion " + group.to_string() +
             (split_assumed ? " (split assumed)" : "");
  }
  return "?";
}

DeligneDescriptor deligne_descriptor(const CohomologyEngine& engine, int p, int q) {
  DeligneDescriptor d;
  d.p = p;
  d.q = q;
  d.shape = deligne_shape(p, q);
  const int n = engine.max_degree();
  if (q > n - 1)
    throw Error(ErrorCode::InsufficientDegree,
                "degree " + std::to_string(q) + " needs max_degree >= " + std::to_string(q + 1) + ", have " + std::to_string(n));
  d.space = engine.cover().name();
  d.degrees_lo = 0;
  d.degrees_hi = n - 1;
  d.good_cover_asserted = engine.cover().good();
  switch (d.shape) {
    case DeligneShape::Discrete:
      d.group = iz(engine, q);
      break;
    case DeligneShape::Mixed:
      d.group = iz(engine, q);
      d.smooth_part = kSmoothPartSymbol;
      break;
    case DeligneShape::CompactExtension: {
      d.split_assumed = true;
      d.group = iz(engine, q).torsion_part();
      if (q >= 1) {
        std::size_t integral = iz(engine, q - 1).rank;
        std::size_t rational = engine.rational_dim(-1, q - 1);
        if (integral != rational)
          throw std::logic_error("rank of H^" + std::to_string(q - 1) + "(iZ) is " + std::to_string(integral) +
                                 " but the rational dimension is " + std::to_string(rational));
        d.torus_dim = integral;
      }
      break;
    }
  }
  return d;
}

DeligneDescriptor deligne_descriptor(const C2Cover& cover, int p, int q, int max_degree) {
  CohomologyEngine engine(std::make_shared<const C2Cover>(cover), max_degree);
  return deligne_descriptor(engine, p, q);
}

nlohmann::ordered_json to_json(const DeligneDescriptor& d) {
  nlohmann::ordered_json j;
  j["space"] = d.space;
  j["p"] = d.p;
  j["q"] = d.q;
  j["shape"] = to_string(d.shape);
  j["rank"] = d.group.rank;
  j["torsion"] = nlohmann::ordered_json::array();
  for (const auto& t : d.group.torsion) j["torsion"].push_back(integer_json(t));
  j["torus_dim"] = d.torus_dim;
  j["smooth_part_symbolic"] = d.shape == DeligneShape::Mixed;
  j["degrees_computed"] = {d.degrees_lo, d.degrees_hi};
  j["good_cover_asserted"] = d.good_cover_asserted;
  return j;
}

GroupDescriptor classify_line_bundles(const C2Cover& cover) {
  return equivariant_cohomology(cover, CoefficientSystem::iZ(), 2, 3);
}

DeligneDescriptor classify_line_bundles_with_connection(const C2Cover& cover) { return deligne_descriptor(cover, 2, 2, 3); }

DeligneDescriptor classify_flat_line_bundles(const C2Cover& cover) { return deligne_descriptor(cover, 3, 2, 3); }

GroupDescriptor real_circle_maps(const C2Cover& cover) {
  if (!cover.compact()) throw Error(ErrorCode::NotCompact, "cover " + cover.name() + " is not flagged compact");
  return equivariant_cohomology(cover, CoefficientSystem::iZ(), 1, 2);
}

QuotientCohomology quotient_coefficients_cohomology(const CohomologyEngine& engine, int k) {
  if (k < 0) throw Error(ErrorCode::DegreeOutOfRange, "negative degree");
  if (k + 1 > engine.max_degree() - 1)
    throw Error(ErrorCode::InsufficientDegree, "H^" + std::to_string(k) + "(iR/iZ) needs max_degree >= " + std::to_string(k + 2));
  return {iz(engine, k).rank, iz(engine, k + 1).torsion_part()};
}

QuotientCohomology quotient_coefficients_cohomology(const C2Cover& cover, int k) {
  CohomologyEngine engine(std::make_shared<const C2Cover>(cover), k + 2);
  return quotient_coefficients_cohomology(engine, k);
}

FlatClassifier::FlatClassifier(const CohomologyEngine& engine)
    : engine_(engine),
      complex_([&]() -> const EquivariantComplex& {
        if (engine.max_degree() < 3) throw Error(ErrorCode::InsufficientDegree, "flat classes need max_degree >= 3");
        return engine.complex(-1);
      }()),
      slots_(pair_slots(engine.cover())),
      h1_(complex_.complex(), 1),
      h2_(complex_.complex(), 2),
      cover_json_(cover_to_json(engine.cover())) {
  const C2Cover& cover = engine.cover();
  const TupleBasis& basis = complex_.bases[1];
  if (basis.size() != slots_.size()) throw std::logic_error("pair slots and degree 1 basis differ");
  element_.resize(slots_.size());
  partner_.resize(slots_.size());
  for (std::size_t s = 0; s < slots_.size(); ++s) {
    const auto& sl = slots_[s];
    C2Cover::Index key[2] = {sl.i, sl.j};
    element_[s] = *basis.find(key, sl.component, *complex_.table);
    C2Cover::Index image[2] = {cover.involution(sl.i), cover.involution(sl.j)};
    C2Cover::ComponentId c = cover.component_involution(sl.component);
    partner_[s] = *basis.find(image, c, *complex_.table);
  }
  // element_ is the identity when both orders agree; partner_ is stated in
  // elements, translate it back to slots.
  std::vector<std::size_t> slot_of(slots_.size());
  for (std::size_t s = 0; s < slots_.size(); ++s) slot_of[element_[s]] = s;
  for (auto& p : partner_) p = slot_of[p];
}

void FlatClassifier::require_cover(const FlatCocycle& fc) const {
  if (!fc.cover) throw Error(ErrorCode::InvalidCocycle, "cocycle has no cover");
  if (fc.cover.get() == &engine_.cover()) return;
  if (cover_to_json(*fc.cover) != cover_json_)
    throw Error(ErrorCode::CoverMismatch, "cocycle lives on " + fc.cover->name() + ", not on " + engine_.cover().name());
}

BocksteinData FlatClassifier::bockstein(const FlatCocycle& fc, std::span<const Integer> shifts) const {
  require_cover(fc);
  check_flat_cocycle(fc);
  if (!shifts.empty() && shifts.size() != slots_.size())
    throw Error(ErrorCode::ShapeMismatch, "expected one shift per pair slot");
  BocksteinData out;
  out.lift.assign(slots_.size(), Rational(0));
  for (std::size_t s = 0; s < slots_.size(); ++s) {
    std::size_t p = partner_[s];
    if (p < s) continue;
    Rational v = frac(fc.angles[s]);
    if (!shifts.empty()) v += shifts[s];
    out.lift[element_[s]] = v;
    out.lift[element_[p]] = -v;
  }
  RatVector delta = complex_.full.differential(1).apply(out.lift);
  out.cocycle = scaled_to_integers(delta, 1);
  out.fixed_cocycle = complex_.fixed.coordinates[2].apply(out.cocycle);
  out.coordinates = h2_.coordinates(out.fixed_cocycle);
  return out;
}

FlatClass FlatClassifier::classify(const FlatCocycle& fc) const {
  BocksteinData b = bockstein(fc);
  if (!is_zero_vector(b.coordinates.free_part)) throw std::logic_error("Bockstein class is not torsion");
  const auto& orders = h2_.group().torsion;

  // Split the Bockstein off with the torsion witnesses: fixed lift minus y
  // minus sum t_i w_i / D_i is a rational cocycle.
  IntVector target = b.fixed_cocycle;
  RatVector correction(complex_.complex().rank(1), Rational(0));
  for (std::size_t i = 0; i < orders.size(); ++i) {
    const Integer& t = b.coordinates.torsion_part[i];
    if (t == 0) continue;
    IntVector g = h2_.torsion_generator(i);
    for (std::size_t r = 0; r < target.size(); ++r) target[r] -= t * g[r];
    IntVector w = h2_.torsion_witness(i);
    for (std::size_t r = 0; r < w.size(); ++r) correction[r] += ratio(t * w[r], orders[i]);
  }
  auto y = h2_.solve_coboundary(target);
  if (!y) throw std::logic_error("split Bockstein is not a coboundary");

  RatVector z = complex_.fixed.coordinates[1].apply(b.lift);
  for (std::size_t r = 0; r < z.size(); ++r) {
    z[r] -= (*y)[r];
    z[r] -= correction[r];
  }
  Integer den = denominator(z);
  ElementCoordinates c = h1_.coordinates(scaled_to_integers(z, den));

  FlatClass out;
  out.bockstein = b.coordinates;
  for (const auto& f : c.free_part) out.torus.push_back(frac(ratio(f, den)));
  out.trivial = is_zero_vector(out.torus) && out.bockstein.is_zero();
  return out;
}

bool FlatClassifier::equivalent(const FlatCocycle& a, const FlatCocycle& b) const {
  if (a.cover.get() != b.cover.get() && (!a.cover || !b.cover || cover_to_json(*a.cover) != cover_to_json(*b.cover)))
    throw Error(ErrorCode::CoverMismatch, "cocycles live on different covers");
  FlatCocycle diff = a;
  for (std::size_t s = 0; s < diff.angles.size(); ++s) diff.angles[s] -= b.angles.at(s);
  return classify(diff).trivial;
}

FlatCocycle FlatClassifier::random_cocycle(std::mt19937_64& rng, FlatClass* expected) const {
  std::uniform_int_distribution<long> num(-12, 12), den(1, 6), noise(-3, 3);
  auto random_rational = [&] { return ratio(num(rng), den(rng)); };
  const auto& cx = complex_.complex();

  RatVector q(cx.rank(0));
  for (auto& x : q) x = random_rational();
  RatVector theta = cx.differential(0).apply(q);

  FlatClass want;
  for (std::size_t j = 0; j < h1_.group().rank; ++j) {
    Rational r = random_rational();
    IntVector f = h1_.free_generator(j);
    for (std::size_t k = 0; k < theta.size(); ++k) theta[k] += r * f[k];
    want.torus.push_back(frac(r));
  }
  const auto& orders = h2_.group().torsion;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    Integer m = std::uniform_int_distribution<long>(0, orders[i].get_si() - 1)(rng);
    IntVector w = h2_.torsion_witness(i);
    for (std::size_t k = 0; k < theta.size(); ++k) theta[k] += ratio(m * w[k], orders[i]);
    want.bockstein.torsion_part.push_back(m);
  }
  want.bockstein.free_part.assign(h2_.group().rank, Integer(0));
  want.trivial = is_zero_vector(want.torus) && want.bockstein.is_zero();
  if (expected) *expected = want;

  RatVector full = complex_.fixed.basis[1].apply(theta);
  FlatCocycle fc = FlatCocycle::zero(engine_.cover_ptr());
  for (std::size_t s = 0; s < slots_.size(); ++s) fc.angles[s] = full[element_[s]] + noise(rng);
  return fc;
}

FlatClass flat_cocycle_class(const FlatCocycle& fc) {
  if (!fc.cover) throw Error(ErrorCode::InvalidCocycle, "cocycle has no cover");
  CohomologyEngine engine(fc.cover, 3);
  return FlatClassifier(engine).classify(fc);
}

bool cocycles_equivalent(const FlatCocycle& a, const FlatCocycle& b) {
  if (!a.cover) throw Error(ErrorCode::InvalidCocycle, "cocycle has no cover");
  CohomologyEngine engine(a.cover, 3);
  return FlatClassifier(engine).equivalent(a, b);
}

std::size_t zero_cochain_orbits(const C2Cover& cover) {
  std::size_t n = 0;
  for (C2Cover::Index i = 0; i < cover.index_count(); ++i) {
    std::vector<C2Cover::Index> key = {i};
    n += cover.subset_components(*cover.find_subset(key)).size();
  }
  return n / 2;
}

FlatCocycle flat_coboundary(std::shared_ptr<const C2Cover> cover, std::span<const Rational> orbit_angles) {
  // a[c] for each component c of a single set; orbits numbered by first element.
  std::vector<Rational> a(cover->component_count(), Rational(0));
  std::vector<bool> seen(cover->component_count(), false);
  std::size_t next = 0;
  for (C2Cover::Index i = 0; i < cover->index_count(); ++i) {
    std::vector<C2Cover::Index> key = {i};
    for (auto c : cover->subset_components(*cover->find_subset(key))) {
      if (seen[c]) continue;
      if (next >= orbit_angles.size()) throw Error(ErrorCode::ShapeMismatch, "too few orbit angles");
      auto tc = cover->component_involution(c);
      a[c] = orbit_angles[next];
      a[tc] = -orbit_angles[next];
      seen[c] = seen[tc] = true;
      ++next;
    }
  }
  if (next != orbit_angles.size()) throw Error(ErrorCode::ShapeMismatch, "too many orbit angles");
  FlatCocycle fc = FlatCocycle::zero(cover);
  auto slots = pair_slots(*cover);
  for (std::size_t s = 0; s < slots.size(); ++s) {
    const auto& sl = slots[s];
    fc.angles[s] = a[cover->face(sl.component, sl.i)] - a[cover->face(sl.component, sl.j)];
  }
  return fc;
}

}  // namespace realcech
