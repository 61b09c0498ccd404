#pragma once

// Word-size modular arithmetic kernels used by the rank prefilter.
//
// Residues are held in doubles: with p < 2^26 every product of two residues is
// below 2^52 and therefore exact, which lets the SIMD variants reduce with a
// floating reciprocal and one fused multiply-add. The scalar variant is the
// reference and uses plain 64-bit integer arithmetic; all variants must agree
// bit for bit.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace realcech::kernels {

enum class Isa { Scalar, Avx2, Neon };

inline constexpr std::uint32_t kMaxModulus = 1u << 26;

struct Modulus {
  explicit Modulus(std::uint32_t prime);

  std::uint32_t p;
  double pd;
  double inv;
};

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p);

// dst[i] <- (dst[i] - factor * src[i]) mod p for residues in [0, p).
void axpy_mod_scalar(std::span<double> dst, std::span<const double> src, double factor, const Modulus& m);
#if defined(__x86_64__) || defined(_M_X64)
void axpy_mod_avx2(std::span<double> dst, std::span<const double> src, double factor, const Modulus& m);
#endif
#if defined(__aarch64__)
void axpy_mod_neon(std::span<double> dst, std::span<const double> src, double factor, const Modulus& m);
#endif

bool isa_available(Isa isa);
// Widest variant the running CPU supports.
Isa best_isa();
std::string_view isa_name(Isa isa);

void axpy_mod(Isa isa, std::span<double> dst, std::span<const double> src, double factor, const Modulus& m);

// Rank of a dense row-major residue matrix; destroys its input.
std::size_t dense_rank_mod(std::vector<std::vector<double>>& rows, const Modulus& m, Isa isa);

}  // namespace realcech::kernels
