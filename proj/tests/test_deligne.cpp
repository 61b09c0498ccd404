#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "realcech/catalog/catalog.hpp"
#include "realcech/deligne/deligne.hpp"
#include "realcech/errors.hpp"

using namespace realcech;

namespace {

std::shared_ptr<const C2Cover> space(const std::string& name) { return std::make_shared<const C2Cover>(build_space(name)); }

GroupDescriptor cyclic(long n) { return GroupDescriptor{0, {Integer(n)}}; }

bool is_trivial_compact(const DeligneDescriptor& d) {
  return d.shape == DeligneShape::CompactExtension && d.torus_dim == 0 && d.group == GroupDescriptor{} && d.split_assumed;
}

const std::vector<std::string> kSpaces = {"point_trivial", "free_orbit", "circle_antipodal", "circle_conjugation",
                                          "sphere_antipodal(2)"};

}  // namespace

TEST_CASE("shape is a function of p and q") {
  for (int p = 0; p <= 4; ++p)
    for (int q = 0; q <= 4; ++q) {
      auto s = deligne_shape(p, q);
      if (p == 0 || q > p)
        CHECK(s == DeligneShape::Discrete);
      else if (q == p)
        CHECK(s == DeligneShape::Mixed);
      else
        CHECK(s == DeligneShape::CompactExtension);
    }
  CHECK_THROWS_AS(deligne_shape(-1, 0), Error);
}

TEST_CASE("p = 0 passes H^q(iZ) through") {
  for (const auto& name : kSpaces) {
    CohomologyEngine eng(space(name), 5);
    for (int q = 0; q <= 4; ++q) {
      auto d = deligne_descriptor(eng, 0, q);
      CHECK(d.shape == DeligneShape::Discrete);
      CHECK(d.group == eng.cohomology(CoefficientSystem::iZ(), q));
      CHECK(d.degrees_lo == 0);
      CHECK(d.degrees_hi == 4);
      CHECK(d.space == name);
    }
  }
}

TEST_CASE("antipodal circle descriptors") {
  auto cover = build_space("circle_antipodal");
  auto d12 = deligne_descriptor(cover, 1, 2, 3);
  CHECK(d12.shape == DeligneShape::Discrete);
  CHECK(d12.group == GroupDescriptor{});
  auto d22 = deligne_descriptor(cover, 2, 2, 3);
  CHECK(d22.shape == DeligneShape::Mixed);
  CHECK(d22.smooth_part == "E^{p-1}/E^{p-1}_0(M)");
  CHECK(d22.group == GroupDescriptor{});
  CHECK(is_trivial_compact(deligne_descriptor(cover, 3, 2, 3)));
  CHECK(is_trivial_compact(deligne_descriptor(cover, 3, 0, 3)));
}

TEST_CASE("degree limits") {
  auto cover = build_space("circle_antipodal");
  try {
    deligne_descriptor(cover, 2, 3, 3);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InsufficientDegree);
  }
  CHECK_NOTHROW(deligne_descriptor(cover, 2, 2, 3));
  CohomologyEngine eng(space("circle_antipodal"), 3);
  CHECK_THROWS_AS(quotient_coefficients_cohomology(eng, 2), Error);
}

TEST_CASE("line bundle classification") {
  for (const auto& name : {"point_trivial", "free_orbit", "circle_antipodal"}) {
    CAPTURE(name);
    auto cover = build_space(name);
    CHECK(classify_line_bundles(cover) == GroupDescriptor{});
    auto conn = classify_line_bundles_with_connection(cover);
    CHECK(conn.shape == DeligneShape::Mixed);
    CHECK(conn.group == classify_line_bundles(cover));
    CHECK(is_trivial_compact(classify_flat_line_bundles(cover)));
  }
  // RP^2 carries the nontrivial Real line bundle: H^2(RP^2; Z twisted) = Z.
  CHECK(classify_line_bundles(build_space("sphere_antipodal(2)")) == GroupDescriptor::free(1));
  // The conjugation circle has a circle of flat Real line bundles.
  auto flat = classify_flat_line_bundles(build_space("circle_conjugation"));
  CHECK(flat.shape == DeligneShape::CompactExtension);
  CHECK(flat.torus_dim == 1);
  CHECK(flat.group == GroupDescriptor{});
}

TEST_CASE("Real circle maps") {
  CHECK(real_circle_maps(build_space("point_trivial")) == cyclic(2));
  CHECK(real_circle_maps(build_space("circle_antipodal")) == cyclic(2));
  CHECK(real_circle_maps(build_space("free_orbit")) == GroupDescriptor{});
  auto open = build_space("circle_antipodal").with_flags(true, false);
  try {
    real_circle_maps(open);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotCompact);
  }
}

TEST_CASE("quotient coefficients") {
  CohomologyEngine point(space("point_trivial"), 4);
  CHECK(quotient_coefficients_cohomology(point, 0) == QuotientCohomology{0, cyclic(2)});
  CHECK(quotient_coefficients_cohomology(point, 1) == QuotientCohomology{0, {}});
  CHECK(quotient_coefficients_cohomology(build_space("circle_antipodal"), 1) == QuotientCohomology{0, {}});
}

TEST_CASE("quotient coefficients agree with the total complex") {
  auto fstar = CoefficientComplex{{CoefficientSystem::iZ(), CoefficientSystem::iQ()}, {CoefficientMap::inclusion()}};
  for (const auto& name : kSpaces) {
    CAPTURE(name);
    CohomologyEngine eng(space(name), 5);
    for (int k = 0; k <= 3; ++k) {
      auto qc = quotient_coefficients_cohomology(eng, k);
      auto h = hypercohomology(eng, fstar, k + 1);
      CHECK(GroupDescriptor{0, h.torsion} == qc.torsion);
      CHECK(h.divisible_rank == qc.torus_dim);
      CHECK(h.free_rank == 0);
      CHECK(h.rational_dim == 0);
    }
  }
}

TEST_CASE("compact extensions match independent routes") {
  // torus_dim from the rank of H^(q-1)(iZ), the rational dimension, and the
  // divisible part of the total complex of [iZ -> iQ-].
  auto fstar = CoefficientComplex{{CoefficientSystem::iZ(), CoefficientSystem::iQ()}, {CoefficientMap::inclusion()}};
  for (const auto& name : kSpaces) {
    CohomologyEngine eng(space(name), 5);
    for (int p = 1; p <= 4; ++p)
      for (int q = 1; q < p; ++q) {
        auto d = deligne_descriptor(eng, p, q);
        auto h = hypercohomology(eng, fstar, q);
        CHECK(d.torus_dim == eng.rational_dim(-1, q - 1));
        CHECK(d.torus_dim == h.divisible_rank);
        CHECK(d.group == eng.cohomology(CoefficientSystem::iZ(), q).torsion_part());
      }
  }
}

TEST_CASE("result records") {
  auto d = deligne_descriptor(build_space("circle_antipodal"), 2, 2, 3);
  auto j = to_json(d);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"space", "p", "q", "shape", "rank", "torsion", "torus_dim",
                                         "smooth_part_symbolic", "degrees_computed", "good_cover_asserted"});
  CHECK(j["shape"] == "mixed");
  CHECK(j["smooth_part_symbolic"] == true);
  CHECK(j["degrees_computed"] == nlohmann::ordered_json::array({0, 2}));
  auto p = to_json(deligne_descriptor(build_space("point_trivial"), 0, 1, 3));
  CHECK(p["shape"] == "discrete");
  CHECK(p["torsion"] == nlohmann::ordered_json::array({2}));
}

TEST_CASE("zero and coboundaries are trivial") {
  for (const auto& name : kSpaces) {
    CAPTURE(name);
    auto cover = space(name);
    CohomologyEngine eng(cover, 3);
    FlatClassifier fcl(eng);
    auto z = fcl.classify(FlatCocycle::zero(cover));
    CHECK(z.trivial);
    CHECK(is_zero_vector(z.torus));
    CHECK(z.bockstein.is_zero());

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-20, 20), den(1, 9);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Rational> a(zero_cochain_orbits(*cover));
      for (auto& x : a) x = ratio(num(rng), den(rng));
      auto fc = flat_coboundary(cover, a);
      CHECK(flat_cocycle_violations(fc).empty());
      CHECK(fcl.classify(fc).trivial);
    }
  }
}

TEST_CASE("random cocycles land in their built classes") {
  // torus(antipodal,antipodal) has H^2(iZ) = Z/2, so its Bockstein can be nonzero.
  for (const auto& name : {"point_trivial", "circle_antipodal", "circle_conjugation", "sphere_antipodal(2)",
                           "torus(antipodal,antipodal)"}) {
    CAPTURE(name);
    CohomologyEngine eng(space(name), 3);
    FlatClassifier fcl(eng);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
      FlatClass want;
      auto fc = fcl.random_cocycle(rng, &want);
      REQUIRE(flat_cocycle_violations(fc).empty());
      auto got = fcl.classify(fc);
      CHECK(got == want);
      CHECK(got.trivial == (is_zero_vector(got.torus) && got.bockstein.is_zero()));
    }
  }
}

TEST_CASE("every flat cocycle on the antipodal circle is trivial") {
  auto cover = space("circle_antipodal");
  CHECK(is_trivial_compact(classify_flat_line_bundles(*cover)));
  CohomologyEngine eng(cover, 3);
  FlatClassifier fcl(eng);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) CHECK(fcl.classify(fcl.random_cocycle(rng)).trivial);
  // one written out by hand: constant 1/2 transitions
  FlatCocycle fc = FlatCocycle::zero(cover);
  for (auto& a : fc.angles) a = Rational(1, 2);
  REQUIRE(flat_cocycle_violations(fc).empty());
  CHECK(flat_cocycle_class(fc).trivial);
}

TEST_CASE("Bockstein is integral and independent of the lift") {
  for (const auto& name : {"point_trivial", "circle_conjugation", "sphere_antipodal(2)", "torus(antipodal,antipodal)"}) {
    CohomologyEngine eng(space(name), 3);
    FlatClassifier fcl(eng);
    const auto& ec = eng.complex(-1);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> shift(-4, 4);
    for (int trial = 0; trial < 10; ++trial) {
      auto fc = fcl.random_cocycle(rng);
      auto b = fcl.bockstein(fc);
      CHECK(is_zero_vector(ec.full.differential(2).apply(b.cocycle)));
      CHECK(ec.involution[2].apply(b.cocycle) == b.cocycle);
      std::vector<Integer> shifts(fc.angles.size());
      for (auto& s : shifts) s = shift(rng);
      auto b2 = fcl.bockstein(fc, shifts);
      CHECK(b2.lift != b.lift);
      CHECK(b2.coordinates == b.coordinates);
    }
  }
}

TEST_CASE("equivalence of cocycles") {
  auto cover = space("circle_conjugation");
  CohomologyEngine eng(cover, 3);
  FlatClassifier fcl(eng);
  // flat group first: one circle, no torsion
  REQUIRE(classify_flat_line_bundles(*cover).torus_dim == 1);
  std::mt19937_64 rng(13);
  FlatClass want;
  FlatCocycle c;
  do c = fcl.random_cocycle(rng, &want);
  while (want.trivial);
  CHECK(fcl.equivalent(c, c));
  std::vector<Rational> a(zero_cochain_orbits(*cover), Rational(1, 3));
  auto cob = flat_coboundary(cover, a);
  FlatCocycle shifted = c;
  for (std::size_t s = 0; s < c.angles.size(); ++s) shifted.angles[s] += cob.angles[s];
  CHECK(fcl.equivalent(c, shifted));
  CHECK_FALSE(fcl.equivalent(FlatCocycle::zero(cover), c));
  CHECK_FALSE(cocycles_equivalent(FlatCocycle::zero(cover), c));

  auto other = FlatCocycle::zero(space("circle_antipodal"));
  try {
    cocycles_equivalent(other, c);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CoverMismatch);
  }
}

TEST_CASE("invalid cocycles are rejected") {
  auto cover = space("circle_antipodal");
  FlatCocycle fc = FlatCocycle::zero(cover);
  fc.angles[0] = Rational(1, 5);
  try {
    flat_cocycle_class(fc);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidCocycle);
  }
}
