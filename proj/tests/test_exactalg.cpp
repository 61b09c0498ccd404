#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "realcech/errors.hpp"
#include "realcech/exactalg/cochain_complex.hpp"
#include "realcech/exactalg/group.hpp"
#include "realcech/exactalg/smith.hpp"

using namespace realcech;

namespace {

void check_smith(const IntMatrix& m) {
  auto [d, u, v] = smith_normal_form(m);
  REQUIRE(u.rows() == m.rows());
  REQUIRE(v.cols() == m.cols());
  CHECK(u * m * v == d);
  CHECK(abs(oracle::determinant(u.to_dense())) == 1);
  CHECK(abs(oracle::determinant(v.to_dense())) == 1);
  Integer prev = 1;
  bool zero_seen = false;
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j) {
      Integer x = d.at(i, j);
      if (i != j) {
        CHECK(x == 0);
        continue;
      }
      if (x == 0) {
        zero_seen = true;
        continue;
      }
      CHECK(!zero_seen);
      CHECK(x > 0);
      CHECK(mpz_divisible_p(x.get_mpz_t(), prev.get_mpz_t()));
      prev = x;
    }
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int lo, int hi, double density) {
  std::uniform_int_distribution<int> entry(lo, hi);
  std::bernoulli_distribution keep(density);
  std::vector<IntMatrix::Triplet> t;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (keep(rng)) t.push_back({i, j, entry(rng)});
  return IntMatrix::from_triplets(rows, cols, t);
}

// A complex with prescribed cohomology, disguised by unimodular base changes.
struct KnownComplex {
  IntegerCochainComplex complex;
  std::vector<GroupDescriptor> expected;
};

KnownComplex random_known_complex(std::mt19937_64& rng, int degrees) {
  std::uniform_int_distribution<int> count(0, 2), order(1, 6), deg(0, degrees - 2);
  std::vector<std::size_t> free_at(degrees, 0);
  std::vector<std::vector<Integer>> torsion_at(degrees);
  std::vector<std::vector<std::pair<std::size_t, long>>> pieces(degrees);  // (slot in degree k, order) for k -> k+1
  std::vector<std::size_t> size(degrees, 0);
  for (int k = 0; k < degrees; ++k) {
    int f = count(rng);
    free_at[k] = f;
    size[k] += f;
  }
  std::vector<std::tuple<int, std::size_t, std::size_t, long>> maps;  // (k, src slot, dst slot, e)
  for (int i = 0, n = count(rng) + count(rng); i < n; ++i) {
    int k = deg(rng);
    long e = order(rng) * (rng() % 2 ? 1 : -1);
    maps.emplace_back(k, size[k]++, size[k + 1]++, e);
    torsion_at[k + 1].push_back(abs(e));
  }
  std::vector<oracle::Unimodular> g;
  for (int k = 0; k < degrees; ++k) g.push_back(oracle::random_unimodular(rng, size[k], 30));
  std::vector<IntMatrix> diffs;
  for (int k = 0; k + 1 < degrees; ++k) {
    oracle::Dense d(size[k + 1], std::vector<Integer>(size[k], 0));
    for (auto [kk, s, t, e] : maps)
      if (kk == k) d[t][s] = e;
    auto disguised = oracle::multiply(oracle::multiply(g[k + 1].g, d, size[k + 1], size[k]), g[k].g_inv, size[k], size[k]);
    diffs.push_back(oracle::from_dense(disguised, size[k]));
  }
  KnownComplex out{IntegerCochainComplex(0, size, diffs), {}};
  for (int k = 0; k < degrees; ++k) out.expected.push_back(GroupDescriptor::from_cyclic(free_at[k], torsion_at[k]));
  return out;
}

}  // namespace

TEST_CASE("group descriptors are canonical") {
  CHECK(GroupDescriptor::from_cyclic(0, {2, 3}) == GroupDescriptor{0, {6}});
  CHECK(GroupDescriptor::from_cyclic(1, {4, 2, 1}) == GroupDescriptor{1, {2, 4}});
  CHECK(GroupDescriptor::from_cyclic(0, {6, 4}) == GroupDescriptor{0, {2, 12}});
  CHECK(GroupDescriptor::from_cyclic(0, {0, 0, 5}) == GroupDescriptor{2, {5}});
  CHECK(GroupDescriptor{}.to_string() == "0");
  CHECK(GroupDescriptor{2, {2, 4}}.to_string() == "Z^2 + Z/2 + Z/4");
  CHECK(GroupDescriptor{1, {}}.to_string() == "Z");
}

TEST_CASE("smith normal form examples") {
  auto [d, u, v] = smith_normal_form(IntMatrix::from_rows({{2, 0}, {0, 3}}));
  CHECK(d == IntMatrix::from_rows({{1, 0}, {0, 6}}));
  check_smith(IntMatrix::from_rows({{2, 0}, {0, 3}}));

  auto z = smith_normal_form(IntMatrix(3, 2));
  CHECK(z.d.is_zero());
  CHECK(z.u == IntMatrix::identity(3));
  CHECK(z.v == IntMatrix::identity(2));

  auto id = smith_normal_form(IntMatrix::identity(4));
  CHECK(id.d == IntMatrix::identity(4));
}

TEST_CASE("smith normal form agrees with determinantal divisors") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t rows = 1 + trial % 4, cols = 1 + (trial / 4) % 4;
    IntMatrix m = random_matrix(rng, rows, cols, -9, 9, 0.7);
    check_smith(m);
    auto expected = oracle::determinantal_invariants(m.to_dense(), cols);
    auto got = invariant_factors(m);
    CHECK(got.rank == expected.size());
    std::vector<Integer> nonunit;
    for (const auto& e : expected)
      if (e != 1) nonunit.push_back(e);
    CHECK(got.nontrivial == nonunit);
  }
}

TEST_CASE("invariant factors fall back to big integers") {
  // entries near 2^62 force the int64 path to overflow
  Integer big = Integer(1) << 62;
  IntMatrix m(2, 2);
  m.set(0, 0, big);
  m.set(0, 1, big + 1);
  m.set(1, 0, big - 1);
  m.set(1, 1, big);
  // det = big^2 - (big^2 - 1) = 1
  auto f = invariant_factors(m);
  CHECK(f.rank == 2);
  CHECK(f.nontrivial.empty());
  IntMatrix m2 = m.scaled(Integer(1) << 40);
  auto f2 = invariant_factors(m2);
  CHECK(f2.nontrivial == std::vector<Integer>{Integer(1) << 40, Integer(1) << 40});
  check_smith(m2);
}

TEST_CASE("sparse and dense invariant factors agree on larger matrices") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    IntMatrix m = random_matrix(rng, 15 + trial, 25, -3, 3, 0.15);
    auto dec = detail::smith_decomposition(m);
    InvariantFactors dense{dec.rank, {}};
    for (const auto& d : dec.diagonal)
      if (d > 1) dense.nontrivial.push_back(d);
    CHECK(invariant_factors(m) == dense);
    CHECK(rational_rank(m) == dec.rank);
  }
}

TEST_CASE("complex cohomology examples") {
  // 0 -> Z --2--> Z -> 0
  IntegerCochainComplex c(0, {1, 1}, {IntMatrix::from_rows({{2}})});
  CHECK(complex_cohomology(c, 1) == GroupDescriptor{0, {2}});
  CHECK(complex_cohomology(c, 0) == GroupDescriptor{});
  IntegerCochainComplex z(0, {1, 1}, {IntMatrix(1, 1)});
  CHECK(complex_cohomology(z, 0) == GroupDescriptor::free(1));

  // Z --(-2)--> Z --0--> Z --(-2)--> Z
  IntegerCochainComplex p(0, {1, 1, 1, 1},
                          {IntMatrix::from_rows({{-2}}), IntMatrix(1, 1), IntMatrix::from_rows({{-2}})});
  CHECK(complex_cohomology(p, 1) == GroupDescriptor{0, {2}});
  CHECK(complex_cohomology(p, 0) == GroupDescriptor{});

  CHECK_THROWS_AS(complex_cohomology(c, 2), Error);
  try {
    complex_cohomology(c, -1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegreeOutOfRange);
  }
}

TEST_CASE("complexes reject bad shapes and d^2 != 0") {
  CHECK_THROWS_AS(IntegerCochainComplex(0, {1, 2}, {IntMatrix(1, 1)}), Error);
  try {
    IntegerCochainComplex(0, {1, 1, 1}, {IntMatrix::from_rows({{1}}), IntMatrix::from_rows({{1}})});
    FAIL("expected NotAComplex");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAComplex);
  }
}

TEST_CASE("cohomology of disguised complexes") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    auto kc = random_known_complex(rng, 5);
    for (int k = 0; k < 5; ++k) {
      auto h = complex_cohomology(kc.complex, k);
      CHECK(h == kc.expected[k]);
      CHECK(rational_cohomology_dim(kc.complex, k) == h.rank);
      CHECK(kc.complex.basis(k)->group() == h);
    }
  }
}

TEST_CASE("mod n cohomology by universal coefficients") {
  // RP^2-like complex Z --0--> Z --2--> Z
  IntegerCochainComplex c(0, {1, 1, 1}, {IntMatrix(1, 1), IntMatrix::from_rows({{2}})});
  CHECK(mod_n_cohomology(c, 0, 2) == GroupDescriptor{0, {2}});
  CHECK(mod_n_cohomology(c, 1, 2) == GroupDescriptor{0, {2}});
  CHECK(mod_n_cohomology(c, 2, 2) == GroupDescriptor{0, {2}});
  CHECK(mod_n_cohomology(c, 1, 3) == GroupDescriptor{});
  CHECK(mod_n_cohomology(c, 2, 3) == GroupDescriptor{});
  CHECK(mod_n_cohomology(c, 0, 3) == GroupDescriptor{0, {3}});
}

TEST_CASE("fixed subcomplex examples") {
  IntegerCochainComplex c(0, {2, 2}, {IntMatrix::from_rows({{1, -1}, {-1, 1}})});
  auto same = fixed_subcomplex(c, {IntMatrix::identity(2), IntMatrix::identity(2)});
  for (int k = 0; k < 2; ++k) CHECK(complex_cohomology(same.complex, k) == complex_cohomology(c, k));

  IntMatrix swap = IntMatrix::from_rows({{0, 1}, {1, 0}});
  IntegerCochainComplex single(0, {2}, {});
  auto sym = fixed_subcomplex(single, {swap});
  CHECK(sym.complex.rank(0) == 1);
  CHECK(sym.basis[0] == IntMatrix::from_rows({{1}, {1}}));
  auto anti = fixed_subcomplex(single, {swap.scaled(-1)});
  CHECK(anti.complex.rank(0) == 1);
  CHECK(anti.basis[0] == IntMatrix::from_rows({{1}, {-1}}));

  // not a signed permutation: takes the Smith route
  IntMatrix t = IntMatrix::from_rows({{1, 1}, {0, -1}});
  auto g = fixed_subcomplex(single, {t});
  CHECK(g.complex.rank(0) == 1);
  CHECK(t * g.basis[0] == g.basis[0]);
  CHECK(g.coordinates[0] * g.basis[0] == IntMatrix::identity(1));

  CHECK_THROWS_AS(fixed_subcomplex(single, {IntMatrix::from_rows({{1, 1}, {0, 1}})}), Error);
  try {
    fixed_subcomplex(single, {IntMatrix::from_rows({{1, 1}, {0, 1}})});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAnInvolution);
  }
  try {
    // swap on the source, identity on the target does not commute with d = (1, 0)
    IntegerCochainComplex d(0, {2, 1}, {IntMatrix::from_rows({{1, 0}})});
    fixed_subcomplex(d, {swap, IntMatrix::identity(1)});
    FAIL("expected NotEquivariant");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotEquivariant);
  }
}

TEST_CASE("fixed subgroup basis spans every fixed vector") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> coef(-5, 5);
  for (int trial = 0; trial < 25; ++trial) {
    std::size_t n = 2 + trial % 5;
    // involution conjugated by a unimodular matrix: g diag(+-1) g^-1
    auto g = oracle::random_unimodular(rng, n, 10);
    oracle::Dense diag(n, std::vector<Integer>(n, 0));
    for (std::size_t i = 0; i < n; ++i) diag[i][i] = (rng() % 2) ? 1 : -1;
    IntMatrix t = oracle::from_dense(oracle::multiply(oracle::multiply(g.g, diag, n, n), g.g_inv, n, n), n);
    REQUIRE(t * t == IntMatrix::identity(n));
    auto f = fixed_subcomplex(IntegerCochainComplex(0, {n}, {}), {t});
    CHECK(f.coordinates[0] * f.basis[0] == IntMatrix::identity(f.complex.rank(0)));
    for (int s = 0; s < 10; ++s) {
      IntVector x(n);
      for (auto& e : x) e = coef(rng);
      IntVector fixed = t.apply(x);
      for (std::size_t i = 0; i < n; ++i) fixed[i] += x[i];  // x + t x is fixed
      IntVector y = f.basis[0].apply(f.coordinates[0].apply(fixed));
      CHECK(y == fixed);
    }
  }
}

TEST_CASE("class coordinates") {
  IntegerCochainComplex c(0, {1, 1}, {IntMatrix::from_rows({{2}})});
  IntVector zero{0};
  CHECK(class_coordinates(c, 1, zero).is_zero());
  IntVector gen{1};
  auto co = class_coordinates(c, 1, gen);
  CHECK(co.torsion_part == IntVector{1});
  CHECK(co.free_part.empty());
  IntVector bdry{6};
  CHECK(class_coordinates(c, 1, bdry).is_zero());

  IntegerCochainComplex d(0, {2, 1}, {IntMatrix::from_rows({{1, 1}})});
  IntVector not_cocycle{1, 0};
  try {
    class_coordinates(d, 0, not_cocycle);
    FAIL("expected NotACocycle");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotACocycle);
  }
}

TEST_CASE("class coordinates vanish exactly on coboundaries") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> coef(-4, 4);
  for (int trial = 0; trial < 30; ++trial) {
    auto kc = random_known_complex(rng, 4);
    const auto& c = kc.complex;
    for (int k = 1; k < 4; ++k) {
      auto b = c.basis(k);
      const auto& grp = b->group();
      // generators have unit coordinates
      for (std::size_t i = 0; i < grp.torsion.size(); ++i) {
        auto co = b->coordinates(b->torsion_generator(i));
        for (std::size_t j = 0; j < grp.torsion.size(); ++j) CHECK(co.torsion_part[j] == (i == j ? 1 : 0));
        CHECK(is_zero_vector(co.free_part));
        // order * generator is a coboundary of the witness
        IntVector w = b->torsion_witness(i);
        IntVector dw = c.differential(k - 1).apply(w);
        IntVector g = b->torsion_generator(i);
        for (auto& e : g) e *= grp.torsion[i];
        CHECK(dw == g);
      }
      for (std::size_t j = 0; j < grp.rank; ++j) {
        auto co = b->coordinates(b->free_generator(j));
        for (std::size_t i = 0; i < grp.rank; ++i) CHECK(co.free_part[i] == (i == j ? 1 : 0));
        CHECK(is_zero_vector(co.torsion_part));
      }
      // random cocycles: combinations of generators plus coboundaries
      for (int s = 0; s < 8; ++s) {
        IntVector x(c.rank(k), 0);
        IntVector expected_free(grp.rank, 0), expected_tors(grp.torsion.size(), 0);
        for (std::size_t i = 0; i < grp.torsion.size(); ++i) {
          int a = coef(rng);
          auto g = b->torsion_generator(i);
          for (std::size_t r = 0; r < x.size(); ++r) x[r] += a * g[r];
          mpz_fdiv_r(expected_tors[i].get_mpz_t(), Integer(a).get_mpz_t(), grp.torsion[i].get_mpz_t());
        }
        for (std::size_t j = 0; j < grp.rank; ++j) {
          int a = coef(rng);
          auto g = b->free_generator(j);
          for (std::size_t r = 0; r < x.size(); ++r) x[r] += a * g[r];
          expected_free[j] = a;
        }
        IntVector y(c.rank(k - 1));
        for (auto& e : y) e = coef(rng);
        IntVector dy = c.differential(k - 1).apply(y);
        for (std::size_t r = 0; r < x.size(); ++r) x[r] += dy[r];
        auto co = b->coordinates(x);
        CHECK(co.free_part == expected_free);
        CHECK(co.torsion_part == expected_tors);
        bool bounds = b->solve_coboundary(x).has_value();
        CHECK(bounds == co.is_zero());
        if (bounds) CHECK(c.differential(k - 1).apply(*b->solve_coboundary(x)) == x);
      }
    }
  }
}

TEST_CASE("free generators when the next differential has few unit entries") {
  for (auto d1 : {IntMatrix::from_rows({{2, 4, 6}, {4, 8, 12}}), IntMatrix::from_rows({{1, 0, 0}, {0, 2, 4}}),
                  IntMatrix::from_rows({{3, 5, 0}, {0, 0, 0}})}) {
    IntegerCochainComplex c(0, {1, 3, 2}, {IntMatrix(3, 1), d1});
    auto b = c.basis(1);
    std::size_t expect = 3 - rational_rank(d1);
    REQUIRE(b->group() == GroupDescriptor{expect, {}});
    for (std::size_t j = 0; j < expect; ++j) {
      IntVector g = b->free_generator(j);
      CHECK(is_zero_vector(d1.apply(g)));
      auto co = b->coordinates(g);
      for (std::size_t i = 0; i < expect; ++i) CHECK(co.free_part[i] == (i == j ? 1 : 0));
    }
  }
}
