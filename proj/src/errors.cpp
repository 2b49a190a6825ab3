#include "szilard/errors.hpp"

namespace szilard {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::InvalidExponent: return "invalid-exponent";
    case ErrorKind::OutOfBounds: return "out-of-bounds";
    case ErrorKind::NonBoundLevel: return "non-bound-level";
    case ErrorKind::NoBoundStates: return "no-bound-states";
    case ErrorKind::EmptyPostBarrierSpectrum: return "post-barrier-spectrum-empty";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::SolverFailure: return "solver-failure";
    case ErrorKind::Truncation: return "truncation";
    case ErrorKind::ConvergenceViolation: return "convergence-violation";
    case ErrorKind::IncompatibleEnsemble: return "incompatible-ensemble";
    case ErrorKind::Config: return "config";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

}  // namespace szilard
