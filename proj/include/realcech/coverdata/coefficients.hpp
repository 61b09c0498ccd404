#pragma once

#include <string>

#include "realcech/exactalg/int_matrix.hpp"

namespace realcech {

enum class CoefficientBase { Integers, Rationals, IntegersMod };

// Locally constant coefficient group with the involution acting by sign.
struct CoefficientSystem {
  CoefficientBase base = CoefficientBase::Integers;
  int sign = 1;
  Integer modulus = 0;  // only for IntegersMod

  static CoefficientSystem integers(int sign) { return {CoefficientBase::Integers, sign, 0}; }
  static CoefficientSystem rationals(int sign) { return {CoefficientBase::Rationals, sign, 0}; }
  static CoefficientSystem integers_mod(const Integer& n, int sign) { return {CoefficientBase::IntegersMod, sign, n}; }

  static CoefficientSystem iZ() { return integers(-1); }
  static CoefficientSystem iQ() { return rationals(-1); }

  // Throws UnsupportedCoefficients on a bad sign or modulus.
  void check() const;

  // iZ, Z, iQ-, Q, Zmod:n (sign -1), Zmod+:n (sign +1)
  std::string to_string() const;
  // Inverse of to_string.
  static CoefficientSystem parse(const std::string& text);

  friend bool operator==(const CoefficientSystem&, const CoefficientSystem&) = default;
};

}  // namespace realcech
