#include "realcech/kernels/modp.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace realcech::kernels {

Modulus::Modulus(std::uint32_t prime) : p(prime), pd(static_cast<double>(prime)), inv(1.0 / static_cast<double>(prime)) {
  if (prime < 2 || prime >= kMaxModulus) throw std::invalid_argument("modulus must lie in [2, 2^26)");
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a % p;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw std::invalid_argument("residue is not invertible");
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

void axpy_mod_scalar(std::span<double> dst, std::span<const double> src, double factor, const Modulus& m) {
  const std::uint64_t p = m.p;
  const auto f = static_cast<std::uint64_t>(factor);
  for (std::size_t i = 0; i < dst.size(); ++i) {
    auto d = static_cast<std::uint64_t>(dst[i]);
    auto s = static_cast<std::uint64_t>(src[i]);
    dst[i] = static_cast<double>((d + p - (f * s) % p) % p);
  }
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa best_isa() {
  static const Isa best = [] {
    if (isa_available(Isa::Avx2)) return Isa::Avx2;
    if (isa_available(Isa::Neon)) return Isa::Neon;
    return Isa::Scalar;
  }();
  return best;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

void axpy_mod(Isa isa, std::span<double> dst, std::span<const double> src, double factor, const Modulus& m) {
  switch (isa) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::Avx2:
      axpy_mod_avx2(dst, src, factor, m);
      return;
#endif
#if defined(__aarch64__)
    case Isa::Neon:
      axpy_mod_neon(dst, src, factor, m);
      return;
#endif
    default:
      axpy_mod_scalar(dst, src, factor, m);
      return;
  }
}

std::size_t dense_rank_mod(std::vector<std::vector<double>>& rows, const Modulus& m, Isa isa) {
  if (rows.empty()) return 0;
  const std::size_t ncols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0.0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const std::uint64_t inv = inverse_mod(static_cast<std::uint32_t>(rows[rank][col]), m.p);
    std::span<const double> src(rows[rank].data() + col, ncols - col);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      double a = rows[r][col];
      if (a == 0.0) continue;
      auto f = static_cast<double>((static_cast<std::uint64_t>(a) * inv) % m.p);
      axpy_mod(isa, std::span<double>(rows[r].data() + col, ncols - col), src, f, m);
    }
    ++rank;
  }
  return rank;
}

}  // namespace realcech::kernels
