#include <doctest.h>

#include <random>
#include <vector>

#include "realcech/exactalg/smith.hpp"
#include "realcech/kernels/modp.hpp"

using namespace realcech;
using namespace realcech::kernels;

namespace {

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon})
    if (isa_available(isa)) out.push_back(isa);
  return out;
}

std::vector<double> random_residues(std::mt19937_64& rng, std::size_t n, std::uint32_t p) {
  std::uniform_int_distribution<std::uint32_t> dist(0, p - 1);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

}  // namespace

TEST_CASE("inverse_mod") {
  for (std::uint32_t p : {3u, 7u, 65521u, kPrefilterPrime})
    for (std::uint32_t a : {1u, 2u, 5u, p - 1})
      CHECK((static_cast<std::uint64_t>(a) * inverse_mod(a, p)) % p == 1);
}

TEST_CASE("axpy variants agree bit for bit with the scalar reference") {
  std::mt19937_64 rng(7);
  for (std::uint32_t p : {2u, 3u, 65521u, 33554393u, kPrefilterPrime}) {
    Modulus m(p);
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 17u, 64u, 1001u}) {
      auto src = random_residues(rng, n, p);
      auto dst = random_residues(rng, n, p);
      for (double f : {0.0, 1.0, static_cast<double>(p - 1), static_cast<double>(p / 2)}) {
        auto ref = dst;
        axpy_mod_scalar(ref, src, f, m);
        for (Isa isa : available_isas()) {
          auto got = dst;
          axpy_mod(isa, got, src, f, m);
          CHECK(got == ref);
        }
      }
    }
  }
}

TEST_CASE("axpy extreme residues") {
  const std::uint32_t p = kPrefilterPrime;
  Modulus m(p);
  std::vector<double> src(37, p - 1), dst(37, 0);
  auto ref = dst;
  axpy_mod_scalar(ref, src, p - 1, m);
  // (0 - (p-1)^2) mod p = p - 1
  for (double x : ref) CHECK(x == p - 1);
  for (Isa isa : available_isas()) {
    auto got = dst;
    axpy_mod(isa, got, src, p - 1, m);
    CHECK(got == ref);
  }
}

TEST_CASE("dense rank mod p agrees across isas") {
  std::mt19937_64 rng(11);
  const std::uint32_t p = 10007;
  Modulus m(p);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t rows = 5 + trial, cols = 40 + 3 * trial, r = 1 + trial % 7;
    // rank r product of random factors
    auto a = std::vector<std::vector<double>>(r), b = std::vector<std::vector<double>>(rows);
    for (auto& row : a) row = random_residues(rng, cols, p);
    for (auto& row : b) row = random_residues(rng, r, p);
    std::vector<std::vector<double>> mat(rows, std::vector<double>(cols, 0));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        std::uint64_t s = 0;
        for (std::size_t k = 0; k < r; ++k) s = (s + static_cast<std::uint64_t>(b[i][k]) * static_cast<std::uint64_t>(a[k][j])) % p;
        mat[i][j] = static_cast<double>(s);
      }
    auto ref_in = mat;
    std::size_t ref = dense_rank_mod(ref_in, m, Isa::Scalar);
    CHECK(ref <= r);
    for (Isa isa : available_isas()) {
      auto in = mat;
      CHECK(dense_rank_mod(in, m, isa) == ref);
      CHECK(in == ref_in);
    }
  }
}

TEST_CASE("rank mod p is bounded by the rational rank and matches it for generic primes") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> entry(-3, 3);
  std::bernoulli_distribution keep(0.3);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t rows = 20 + trial, cols = 50;
    std::vector<IntMatrix::Triplet> t;
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (keep(rng)) t.push_back({i, j, entry(rng)});
    IntMatrix m = IntMatrix::from_triplets(rows, cols, t);
    std::size_t q = rational_rank(m);
    for (Isa isa : available_isas()) {
      CHECK(rank_mod_prime(m, kPrefilterPrime, isa) == q);
      CHECK(rank_mod_prime(m, 2, isa) <= q);
    }
    CHECK(invariant_factors(m).rank == q);
  }
}
