#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "realcech/catalog/catalog.hpp"
#include "realcech/coverdata/coefficients.hpp"
#include "realcech/coverdata/cover.hpp"
#include "realcech/coverdata/cover_json.hpp"
#include "realcech/coverdata/flat_cocycle.hpp"
#include "realcech/errors.hpp"

using namespace realcech;

namespace {

CoverDescription free_orbit_description() {
  CoverDescription d;
  d.name = "orbit";
  d.involution_name = "swap";
  d.indices = {"a", "b"};
  d.involution = {{"a", "b"}, {"b", "a"}};
  d.intersections = {{{"a"}, {"pa"}}, {{"b"}, {"pb"}}};
  d.component_involution = {{"pa", "pb"}, {"pb", "pa"}};
  return d;
}

// a <-> b, c <-> d; {a,c}, {b,d}, {a,d}, {b,c} each meet in one piece.
CoverDescription square_description() {
  CoverDescription d;
  d.name = "square";
  d.involution_name = "antipodal";
  d.indices = {"a", "b", "c", "d"};
  d.involution = {{"a", "b"}, {"b", "a"}, {"c", "d"}, {"d", "c"}};
  for (const auto& i : d.indices) d.intersections.push_back({{i}, {"p" + i}});
  for (auto [x, y] : std::vector<std::pair<std::string, std::string>>{{"a", "c"}, {"b", "d"}, {"a", "d"}, {"b", "c"}}) {
    d.intersections.push_back({{x, y}, {x + y}});
    d.faces.push_back({x + y, x, "p" + y});
    d.faces.push_back({x + y, y, "p" + x});
  }
  d.component_involution = {{"pa", "pb"}, {"pb", "pa"}, {"pc", "pd"}, {"pd", "pc"},
                            {"ac", "bd"}, {"bd", "ac"}, {"ad", "bc"}, {"bc", "ad"}};
  return d;
}

ValidationError validation_error(const CoverDescription& d) {
  try {
    validate_cover(d);
  } catch (const ValidationError& e) {
    return e;
  }
  FAIL("description was accepted");
  return ValidationError({});
}

}  // namespace

TEST_CASE("valid descriptions are accepted") {
  C2Cover orbit = validate_cover(free_orbit_description());
  CHECK(orbit.index_count() == 2);
  CHECK(orbit.involution(0) == 1);
  CHECK(orbit.subset_count() == 2);
  C2Cover sq = validate_cover(square_description());
  CHECK(sq.subset_count() == 8);
  CHECK(sq.max_subset_size() == 2);
  auto ac = *sq.find_component("ac");
  CHECK(sq.component_name(sq.component_involution(ac)) == "bd");
  CHECK(sq.component_name(sq.face(ac, *sq.find_index("a"))) == "pc");
}

TEST_CASE("validation is idempotent") {
  for (const auto& name : {"square", "circle_conjugation", "sphere_antipodal(2)"}) {
    C2Cover c = std::string(name) == "square" ? validate_cover(square_description()) : build_space(name);
    CoverDescription once = c.describe();
    CoverDescription twice = validate_cover(once).describe();
    CHECK(cover_to_json(once) == cover_to_json(twice));
  }
}

TEST_CASE("fixed index is rejected with a pointer to doubling") {
  CoverDescription d;
  d.name = "pt";
  d.involution_name = "trivial";
  d.indices = {"U"};
  d.involution = {{"U", "U"}};
  d.intersections = {{{"U"}, {"p"}}};
  d.component_involution = {{"p", "p"}};
  auto e = validation_error(d);
  CHECK(e.has(ErrorCode::FixedIndexPresent));
  CHECK(std::string(e.what()).find("double_fixed_indices") != std::string::npos);
}

TEST_CASE("component involution over the wrong subset") {
  auto d = square_description();
  d.component_involution = {{"pa", "pb"}, {"pb", "pa"}, {"pc", "pd"}, {"pd", "pc"},
                            {"ac", "bc"}, {"bc", "ac"}, {"bd", "ad"}, {"ad", "bd"}};
  CHECK(validation_error(d).has(ErrorCode::InvolutionFaceMismatch));
}

TEST_CASE("involution that is not self-inverse") {
  auto d = square_description();
  d.involution = {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}};
  CHECK(validation_error(d).has(ErrorCode::InvolutionNotSelfInverse));

  auto e = square_description();
  e.component_involution[0] = {"pa", "pa"};
  CHECK(validation_error(e).has(ErrorCode::InvolutionNotSelfInverse));
}

TEST_CASE("missing subface is not downward closed") {
  auto d = square_description();
  d.intersections.erase(d.intersections.begin());  // drop {a}
  d.component_involution.erase(d.component_involution.begin());
  auto e = validation_error(d);
  CHECK(e.has(ErrorCode::NotDownwardClosed));
}

TEST_CASE("face into the wrong subset is incoherent") {
  auto d = square_description();
  for (auto& f : d.faces)
    if (f.component == "ac" && f.drop == "a") f.in_component = "pa";
  CHECK(validation_error(d).has(ErrorCode::FaceIncoherence));
}

TEST_CASE("two-step faces must commute") {
  // Every set has two pieces; the pieces labelled k of a pair lie in the pieces
  // labelled k of its sets. The triple {a,c,e} has one piece.
  CoverDescription d;
  d.name = "triple";
  d.involution_name = "swap";
  d.indices = {"a", "b", "c", "d", "e", "f"};
  d.involution = {{"a", "b"}, {"b", "a"}, {"c", "d"}, {"d", "c"}, {"e", "f"}, {"f", "e"}};
  auto add_side = [&](const std::string& x, const std::string& y, const std::string& z, const std::string& tag) {
    for (const auto& u : {x, y, z}) d.intersections.push_back({{u}, {"p" + u + "1", "p" + u + "2"}});
    for (auto [u, v] : std::vector<std::pair<std::string, std::string>>{{x, y}, {x, z}, {y, z}}) {
      d.intersections.push_back({{u, v}, {u + v + "1", u + v + "2"}});
      for (const char* k : {"1", "2"}) {
        d.faces.push_back({u + v + k, u, "p" + v + k});
        d.faces.push_back({u + v + k, v, "p" + u + k});
      }
    }
    d.intersections.push_back({{x, y, z}, {tag}});
    d.faces.push_back({tag, x, y + z + "1"});
    d.faces.push_back({tag, y, x + z + "1"});
    d.faces.push_back({tag, z, x + y + "1"});
  };
  add_side("a", "c", "e", "T");
  add_side("b", "d", "f", "T'");
  for (auto [x, y] : std::vector<std::pair<std::string, std::string>>{{"a", "b"}, {"c", "d"}, {"e", "f"}})
    for (const char* k : {"1", "2"}) {
      d.component_involution.push_back({"p" + x + k, "p" + y + k});
      d.component_involution.push_back({"p" + y + k, "p" + x + k});
    }
  for (auto [x, y] : std::vector<std::pair<std::string, std::string>>{{"ac", "bd"}, {"ae", "bf"}, {"ce", "df"}})
    for (const char* k : {"1", "2"}) {
      d.component_involution.push_back({x + k, y + k});
      d.component_involution.push_back({y + k, x + k});
    }
  d.component_involution.push_back({"T", "T'"});
  d.component_involution.push_back({"T'", "T"});
  CHECK_NOTHROW(validate_cover(d));

  // Dropping a then c now lands in pe2, dropping c then a in pe1.
  for (auto& f : d.faces)
    if (f.component == "T" && f.drop == "a") f.in_component = "ce2";
  CHECK(validation_error(d).has(ErrorCode::FaceIncoherence));
}

TEST_CASE("every violation is reported") {
  auto d = square_description();
  d.involution = {{"a", "a"}, {"b", "b"}, {"c", "d"}, {"d", "c"}};
  for (auto& f : d.faces)
    if (f.component == "ac" && f.drop == "a") f.in_component = "pa";
  auto e = validation_error(d);
  CHECK(e.has(ErrorCode::FixedIndexPresent));
  CHECK(e.has(ErrorCode::FaceIncoherence));
  CHECK(e.violations().size() >= 3);
}

TEST_CASE("malformed descriptions") {
  auto d = free_orbit_description();
  d.indices.push_back("a");
  CHECK(validation_error(d).has(ErrorCode::MalformedDescription));
  auto e = free_orbit_description();
  e.intersections.push_back({{"a", "zz"}, {"q"}});
  CHECK(validation_error(e).has(ErrorCode::MalformedDescription));
  auto f = square_description();
  f.faces.pop_back();
  CHECK(validation_error(f).has(ErrorCode::MalformedDescription));
}

TEST_CASE("doubling a fixed point") {
  CoverDescription d;
  d.name = "pt";
  d.involution_name = "trivial";
  d.indices = {"U"};
  d.involution = {{"U", "U"}};
  d.intersections = {{{"U"}, {"p"}}};
  d.component_involution = {{"p", "p"}};
  C2Cover c = double_fixed_indices(d);
  REQUIRE(c.index_count() == 2);
  CHECK(c.involution(0) == 1);
  CHECK(c.index_name(1) == c.index_name(0) + "'");
  std::vector<C2Cover::Index> both = {0, 1};
  auto s = c.find_subset(both);
  REQUIRE(s);
  REQUIRE(c.subset_components(*s).size() == 1);
  auto pair_component = c.subset_components(*s)[0];
  CHECK(c.component_involution(pair_component) == pair_component);
  CHECK(c.face(pair_component, 0) != c.face(pair_component, 1));
}

TEST_CASE("doubling leaves free covers alone") {
  auto d = square_description();
  C2Cover direct = validate_cover(d);
  C2Cover doubled = double_fixed_indices(d);
  CHECK(cover_to_json(direct) == cover_to_json(doubled));
}

TEST_CASE("doubling the conjugation circle") {
  C2Cover c = double_fixed_indices(raw_circle_conjugation());
  CHECK(c.index_count() == 6);
  for (C2Cover::Index i = 0; i < c.index_count(); ++i) CHECK(c.involution(i) != i);
  // Counted by hand from the arcs: {C+}, {C+'}, {C-}, {C-'}, {A}, {A'};
  // {C+, C+'} and {C-, C-'} once each; every cap copy meets A and A' once;
  // every triple {C, C', A} or {C, C', A'} once.
  std::size_t singles = 0, pairs = 0, triples = 0;
  for (C2Cover::SubsetId s = 0; s < c.subset_count(); ++s) {
    CHECK(c.subset_components(s).size() == 1);
    auto n = c.subset_members(s).size();
    singles += n == 1;
    pairs += n == 2;
    triples += n == 3;
  }
  CHECK(singles == 6);
  CHECK(pairs == 2 + 8);
  CHECK(triples == 4);
  CHECK(c.max_subset_size() == 3);
}

TEST_CASE("product covers") {
  C2Cover orbit = validate_cover(free_orbit_description());
  C2Cover sq = product_cover(orbit, orbit);
  CHECK(sq.index_count() == 4);
  for (C2Cover::Index i = 0; i < sq.index_count(); ++i) CHECK(sq.involution(i) != i);
  CHECK(sq.subset_count() == 4);

  C2Cover torus = product_cover(build_circle_antipodal(), build_circle_conjugation());
  CHECK(torus.index_count() == 24);
  CHECK(torus.good());
  CHECK_NOTHROW(validate_cover(torus.describe()));

  C2Cover bad = build_circle_antipodal().with_flags(false, true);
  CHECK_FALSE(product_cover(bad, orbit).good());
}

TEST_CASE("cover files round trip byte for byte") {
  for (const auto& name : all_space_names()) {
    if (name == "torus(conjugation,conjugation)") continue;
    CAPTURE(name);
    C2Cover c = build_space(name);
    std::string first = cover_to_json(c);
    C2Cover again = validate_cover(cover_from_json(first));
    CHECK(cover_to_json(again) == first);
  }
  auto path = std::filesystem::temp_directory_path() / "realcech_roundtrip.json";
  write_cover_file(path, build_circle_antipodal());
  CHECK(cover_to_json(validate_cover(read_cover_file(path))) == cover_to_json(build_circle_antipodal()));
  std::filesystem::remove(path);
}

TEST_CASE("cover file schema") {
  std::string text = cover_to_json(validate_cover(free_orbit_description()));
  CHECK(text.find("\"name\": \"orbit\"") != std::string::npos);
  CHECK(text.find("\"involution\": {") != std::string::npos);
  CHECK(text.back() == '\n');
  auto expect_malformed = [](const std::string& t) {
    try {
      cover_from_json(t);
      FAIL("accepted " << t);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::MalformedDescription);
    }
  };
  expect_malformed("{");
  expect_malformed("[]");
  expect_malformed(R"({"name": 3})");
  expect_malformed(R"({"name": "x", "involution_name": "t", "indices": ["a"], "involution": {"a": 1}})");
}

TEST_CASE("coefficient spellings") {
  for (const char* s : {"iZ", "Z", "iQ-", "Q", "Zmod:5", "Zmod+:4"}) CHECK(CoefficientSystem::parse(s).to_string() == s);
  CHECK(CoefficientSystem::parse("iZ") == CoefficientSystem::integers(-1));
  CHECK(CoefficientSystem::parse("iQ-") == CoefficientSystem::rationals(-1));
  CHECK(CoefficientSystem::parse("Zmod:7") == CoefficientSystem::integers_mod(7, -1));
  for (const char* s : {"R", "Zmod:1", "Zmod:x", "Zmod:", ""}) CHECK_THROWS_AS(CoefficientSystem::parse(s), Error);
  CHECK_THROWS_AS(CoefficientSystem::integers(2).check(), Error);
}

TEST_CASE("flat cocycle invariants") {
  auto cover = std::make_shared<const C2Cover>(build_circle_antipodal());
  auto slots = pair_slots(*cover);
  CHECK(slots.size() == 8);
  for (std::size_t k = 1; k < slots.size(); ++k)
    CHECK(std::tie(slots[k - 1].i, slots[k - 1].j, slots[k - 1].component) <
          std::tie(slots[k].i, slots[k].j, slots[k].component));

  FlatCocycle z = FlatCocycle::zero(cover);
  CHECK(flat_cocycle_violations(z).empty());

  // theta_(A0,A1) = 1/3 forces the others by antisymmetry and equivariance.
  FlatCocycle fc = z;
  auto set = [&](const char* i, const char* j, Rational v) {
    auto a = *cover->find_index(i), b = *cover->find_index(j);
    std::vector<C2Cover::Index> key = {std::min(a, b), std::max(a, b)};
    auto c = cover->subset_components(*cover->find_subset(key))[0];
    fc.angles[fc.slot(a, b, c)] = v;
  };
  set("A0", "A1", Rational(1, 3));
  CHECK_FALSE(flat_cocycle_violations(fc).empty());
  set("A1", "A0", Rational(-1, 3));
  set("A2", "A3", Rational(-1, 3));
  set("A3", "A2", Rational(4, 3));  // 1/3 mod 1
  CHECK(flat_cocycle_violations(fc).empty());
  CHECK_NOTHROW(check_flat_cocycle(fc));

  set("A3", "A2", Rational(1, 2));
  try {
    check_flat_cocycle(fc);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidCocycle);
  }
  CHECK(congruent_mod_one(Rational(7, 3), Rational(1, 3)));
  CHECK_FALSE(congruent_mod_one(Rational(1, 2), Rational(0)));
}
