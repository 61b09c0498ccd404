#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace realcech {

enum class ErrorCode {
  DegreeOutOfRange,
  ShapeMismatch,
  NotAnInvolution,
  NotEquivariant,
  NotACocycle,
  NotAComplex,
  // cover validation
  MalformedDescription,
  InvolutionNotSelfInverse,
  FixedIndexPresent,
  FaceIncoherence,
  InvolutionFaceMismatch,
  NotDownwardClosed,
  // engine
  CoverNotFree,
  InvalidCoefficientComplex,
  UnsupportedCoefficients,
  // deligne
  InsufficientDegree,
  NotCompact,
  InvalidCocycle,
  CoverMismatch,
  // catalog
  UnknownSpace,
  UnsupportedDimension,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct Violation {
  ErrorCode code;
  std::string message;
};

// Raised by cover validation; carries every violation found, not just the first.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);

  const std::vector<Violation>& violations() const noexcept { return violations_; }
  bool has(ErrorCode code) const;

 private:
  std::vector<Violation> violations_;
};

}  // namespace realcech
