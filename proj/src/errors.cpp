#include "realcech/errors.hpp"

#include <algorithm>

namespace realcech {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotAnInvolution: return "NotAnInvolution";
    case ErrorCode::NotEquivariant: return "NotEquivariant";
    case ErrorCode::NotACocycle: return "NotACocycle";
    case ErrorCode::NotAComplex: return "NotAComplex";
    case ErrorCode::MalformedDescription: return "MalformedDescription";
    case ErrorCode::InvolutionNotSelfInverse: return "InvolutionNotSelfInverse";
    case ErrorCode::FixedIndexPresent: return "FixedIndexPresent";
    case ErrorCode::FaceIncoherence: return "FaceIncoherence";
    case ErrorCode::InvolutionFaceMismatch: return "InvolutionFaceMismatch";
    case ErrorCode::NotDownwardClosed: return "NotDownwardClosed";
    case ErrorCode::CoverNotFree: return "CoverNotFree";
    case ErrorCode::InvalidCoefficientComplex: return "InvalidCoefficientComplex";
    case ErrorCode::UnsupportedCoefficients: return "UnsupportedCoefficients";
    case ErrorCode::InsufficientDegree: return "InsufficientDegree";
    case ErrorCode::NotCompact: return "NotCompact";
    case ErrorCode::InvalidCocycle: return "InvalidCocycle";
    case ErrorCode::CoverMismatch: return "CoverMismatch";
    case ErrorCode::UnknownSpace: return "UnknownSpace";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
  }
  return "Unknown";
}

namespace {

std::string summarize(const std::vector<Violation>& violations) {
  std::string out = std::to_string(violations.size()) + " violation(s)";
  for (const auto& v : violations) {
    out += "\n  ";
    out += to_string(v.code);
    out += ": ";
    out += v.message;
  }
  return out;
}

ErrorCode first_code(const std::vector<Violation>& violations) {
  return violations.empty() ? ErrorCode::MalformedDescription : violations.front().code;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(first_code(violations), summarize(violations)), violations_(std::move(violations)) {}

bool ValidationError::has(ErrorCode code) const {
  return std::any_of(violations_.begin(), violations_.end(),
                     [code](const Violation& v) { return v.code == code; });
}

}  // namespace realcech
