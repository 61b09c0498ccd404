#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the Smith form code of the library.

#include <gmpxx.h>

#include <random>
#include <vector>

#include "realcech/exactalg/group.hpp"
#include "realcech/exactalg/int_matrix.hpp"

namespace oracle {

using realcech::GroupDescriptor;
using realcech::Integer;
using realcech::IntMatrix;
using Dense = std::vector<std::vector<Integer>>;

// Fraction-free (Bareiss) determinant.
inline Integer determinant(Dense a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

inline void combinations(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                         std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    combinations(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Invariant factors from determinantal divisors: e_k = D_k / D_{k-1}, D_k the
// gcd of all k x k minors. Only for small matrices.
inline std::vector<Integer> determinantal_invariants(const Dense& a, std::size_t cols) {
  const std::size_t rows = a.size();
  std::vector<Integer> out;
  Integer prev = 1;
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    combinations(rows, k, 0, cur, rs);
    combinations(cols, k, 0, cur, cs);
    Integer g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        Dense minor(k, std::vector<Integer>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) minor[i][j] = a[r[i]][c[j]];
        Integer d = determinant(minor);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      }
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

// Cohomology of a complex with one generator per degree and maps a[k]: C^k -> C^(k+1),
// evaluated in closed form.
inline GroupDescriptor rank_one_cohomology(const std::vector<long>& maps, int k) {
  long out = k < static_cast<int>(maps.size()) ? maps[k] : 0;
  long in = k >= 1 && k - 1 < static_cast<int>(maps.size()) ? maps[k - 1] : 0;
  if (out != 0) return {};
  if (in == 0) return GroupDescriptor{1, {}};
  long t = in < 0 ? -in : in;
  if (t == 1) return {};
  return GroupDescriptor{0, {Integer(t)}};
}

// Cochain maps of the periodic resolution computing H^*(C2; Z with action s):
// s - 1, s + 1, s - 1, ...
inline std::vector<long> periodic_resolution_maps(int s, int degrees) {
  std::vector<long> out;
  for (int k = 0; k < degrees; ++k) out.push_back(k % 2 == 0 ? s - 1 : s + 1);
  return out;
}

// Cellular cochains of RP^n (one cell per dimension) with the local system
// where the generator of pi_1 acts by s: d^(k-1) = 1 + (-1)^k s. n = 1 is the
// quotient circle of the antipodal circle.
inline std::vector<long> projective_space_maps(int n, int s) {
  std::vector<long> out;
  for (int k = 1; k <= n; ++k) out.push_back(1 + (k % 2 == 0 ? 1 : -1) * s);
  return out;
}

inline GroupDescriptor projective_space_cohomology(int n, int s, int k) {
  if (k > n) return {};
  auto maps = projective_space_maps(n, s);
  return rank_one_cohomology(maps, k);
}

// Cohomology of a small complex of dense matrices maps[k]: Z^(n_k) -> Z^(n_(k+1)),
// from determinantal divisors alone.
inline GroupDescriptor small_complex_cohomology(const std::vector<std::size_t>& ranks, const std::vector<Dense>& maps,
                                                int k) {
  auto invariants = [&](int j) -> std::vector<Integer> {
    if (j < 0 || j >= static_cast<int>(maps.size()) || ranks[j] == 0 || ranks[j + 1] == 0) return {};
    return determinantal_invariants(maps[j], ranks[j]);
  };
  auto out = invariants(k), in = invariants(k - 1);
  std::size_t n = k < static_cast<int>(ranks.size()) ? ranks[k] : 0;
  std::vector<Integer> torsion;
  for (const auto& e : in)
    if (abs(e) != 1) torsion.push_back(abs(e));
  return GroupDescriptor::from_cyclic(n - out.size() - in.size(), torsion);
}

// Cellular cochains of the 2-torus (one vertex, edges a and b, one square cell
// attached along a b a^-1 b^-1) with the rank one local system sending a to sa
// and b to sb.
inline GroupDescriptor torus_local_system_cohomology(int sa, int sb, int k) {
  if (k > 2) return {};
  Dense d0 = {{Integer(sa - 1)}, {Integer(sb - 1)}};
  Dense d1 = {{Integer(1 - sb), Integer(sa - 1)}};
  return small_complex_cohomology({1, 2, 1}, {d0, d1}, k);
}

// Random unimodular matrix together with its inverse.
struct Unimodular {
  Dense g, g_inv;
};

inline Unimodular random_unimodular(std::mt19937_64& rng, std::size_t n, int steps) {
  Unimodular u{Dense(n, std::vector<Integer>(n, 0)), Dense(n, std::vector<Integer>(n, 0))};
  for (std::size_t i = 0; i < n; ++i) u.g[i][i] = u.g_inv[i][i] = 1;
  if (n < 2) return u;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int s = 0; s < steps; ++s) {
    std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    int c = coef(rng);
    // g <- E g with E = 1 + c e_ij; g_inv <- g_inv E^-1
    for (std::size_t k = 0; k < n; ++k) u.g[i][k] += c * u.g[j][k];
    for (std::size_t k = 0; k < n; ++k) u.g_inv[k][j] -= c * u.g_inv[k][i];
  }
  return u;
}

inline Dense multiply(const Dense& a, const Dense& b, std::size_t inner, std::size_t cols) {
  Dense out(a.size(), std::vector<Integer>(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

inline Dense to_dense(const IntMatrix& m) { return m.to_dense(); }

inline IntMatrix from_dense(const Dense& d, std::size_t cols) { return IntMatrix::from_dense(d, cols); }

}  // namespace oracle
