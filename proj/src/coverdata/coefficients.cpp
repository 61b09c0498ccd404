#include "realcech/coverdata/coefficients.hpp"

#include "realcech/errors.hpp"

namespace realcech {

void CoefficientSystem::check() const {
  if (sign != 1 && sign != -1) throw Error(ErrorCode::UnsupportedCoefficients, "sign must be +1 or -1");
  if (base == CoefficientBase::IntegersMod && modulus < 2)
    throw Error(ErrorCode::UnsupportedCoefficients, "Z/n needs n >= 2");
}

std::string CoefficientSystem::to_string() const {
  switch (base) {
    case CoefficientBase::Integers: return sign < 0 ? "iZ" : "Z";
    case CoefficientBase::Rationals: return sign < 0 ? "iQ-" : "Q";
    case CoefficientBase::IntegersMod: return (sign < 0 ? "Zmod:" : "Zmod+:") + modulus.get_str();
  }
  return "?";
}

CoefficientSystem CoefficientSystem::parse(const std::string& text) {
  if (text == "iZ") return integers(-1);
  if (text == "Z") return integers(1);
  if (text == "iQ-" || text == "iQ") return rationals(-1);
  if (text == "Q") return rationals(1);
  for (auto [prefix, sign] : {std::pair{"Zmod:", -1}, std::pair{"Zmod+:", 1}}) {
    std::string p(prefix);
    if (text.rfind(p, 0) == 0) {
      Integer n;
      if (n.set_str(text.substr(p.size()), 10) != 0) break;
      auto c = integers_mod(n, sign);
      c.check();
      return c;
    }
  }
  throw Error(ErrorCode::UnsupportedCoefficients, "unknown coefficient system '" + text + "' (iZ, Z, iQ-, Q, Zmod:n)");
}

}  // namespace realcech
