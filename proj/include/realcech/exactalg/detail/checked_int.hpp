#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <stdexcept>

namespace realcech::detail {

struct Overflow : std::exception {
  const char* what() const noexcept override { return "int64 overflow in exact arithmetic fast path"; }
};

// int64 that throws Overflow instead of wrapping. The eliminators run on this
// first and restart on mpz_class when it throws, so answers stay exact.
class CheckedInt {
 public:
  constexpr CheckedInt() = default;
  constexpr CheckedInt(std::int64_t v) : v_(v) {}  // NOLINT(google-explicit-constructor)

  std::int64_t value() const { return v_; }

  friend CheckedInt operator+(CheckedInt a, CheckedInt b) {
    std::int64_t r;
    if (__builtin_add_overflow(a.v_, b.v_, &r)) throw Overflow{};
    return r;
  }
  friend CheckedInt operator-(CheckedInt a, CheckedInt b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a.v_, b.v_, &r)) throw Overflow{};
    return r;
  }
  friend CheckedInt operator*(CheckedInt a, CheckedInt b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a.v_, b.v_, &r)) throw Overflow{};
    return r;
  }
  // Truncating division, as mpz_class operator/ does.
  friend CheckedInt operator/(CheckedInt a, CheckedInt b) {
    if (a.v_ == std::numeric_limits<std::int64_t>::min() && b.v_ == -1) throw Overflow{};
    return a.v_ / b.v_;
  }
  friend CheckedInt operator%(CheckedInt a, CheckedInt b) {
    if (b.v_ == -1) return 0;
    return a.v_ % b.v_;
  }
  CheckedInt operator-() const {
    if (v_ == std::numeric_limits<std::int64_t>::min()) throw Overflow{};
    return -v_;
  }
  CheckedInt& operator+=(CheckedInt b) { return *this = *this + b; }
  CheckedInt& operator-=(CheckedInt b) { return *this = *this - b; }

  friend bool operator==(CheckedInt a, CheckedInt b) = default;
  friend auto operator<=>(CheckedInt a, CheckedInt b) = default;

 private:
  std::int64_t v_ = 0;
};

inline int sgn(CheckedInt a) { return (a.value() > 0) - (a.value() < 0); }
inline CheckedInt abs(CheckedInt a) { return a.value() < 0 ? -a : a; }
inline mpz_class to_mpz(CheckedInt a) {
  mpz_class z;
  mpz_set_si(z.get_mpz_t(), static_cast<long>(a.value()));
  return z;
}
inline mpz_class to_mpz(const mpz_class& a) { return a; }

inline bool fits_int64(const mpz_class& z) { return mpz_fits_slong_p(z.get_mpz_t()) != 0; }
inline CheckedInt to_checked(const mpz_class& z) {
  if (!fits_int64(z)) throw Overflow{};
  return CheckedInt(z.get_si());
}

}  // namespace realcech::detail
