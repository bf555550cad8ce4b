#include "dlcomp/error.hpp"

namespace dlcomp {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::UnknownPreset: return "UnknownPreset";
    case ErrorKind::ImprimitiveCoroot: return "ImprimitiveCoroot";
    case ErrorKind::BadCartan: return "BadCartan";
    case ErrorKind::NotPrimePower: return "NotPrimePower";
    case ErrorKind::NoSuchAutomorphism: return "NoSuchAutomorphism";
    case ErrorKind::NoCertificate: return "NoCertificate";
    case ErrorKind::NoIntegralSolution: return "NoIntegralSolution";
    case ErrorKind::TooManyStrata: return "TooManyStrata";
    case ErrorKind::FieldUnsupported: return "FieldUnsupported";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace dlcomp
