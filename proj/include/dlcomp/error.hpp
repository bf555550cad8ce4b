#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dlcomp {

enum class ErrorKind {
  InvalidArgument,
  SingularMatrix,
  ZeroVector,
  UnknownPreset,
  ImprimitiveCoroot,
  BadCartan,
  NotPrimePower,
  NoSuchAutomorphism,
  NoCertificate,
  NoIntegralSolution,
  TooManyStrata,
  FieldUnsupported,
  InvariantViolation,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above so the
// CLI can map it onto its exit-code contract.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dlcomp
