#include "mtf/error.hpp"

namespace mtf {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::BadBracket: return "BadBracket";
    case ErrorKind::StepUnderflow: return "StepUnderflow";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::BadParameter: return "BadParameter";
    case ErrorKind::NoBracket: return "NoBracket";
    case ErrorKind::ShootingDiverged: return "ShootingDiverged";
    case ErrorKind::RangeError: return "RangeError";
    case ErrorKind::GridTooSmall: return "GridTooSmall";
    case ErrorKind::InsufficientDecay: return "InsufficientDecay";
  }
  return "Unknown";
}

}  // namespace mtf
