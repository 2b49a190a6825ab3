#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace szilard {

enum class ErrorKind {
  InvalidArgument,
  InvalidExponent,
  OutOfBounds,
  NonBoundLevel,
  NoBoundStates,
  EmptyPostBarrierSpectrum,
  Pole,
  SolverFailure,
  Truncation,
  ConvergenceViolation,
  IncompatibleEnsemble,
  Config,
  Io,
};

/// Stable lower-case identifier, used in CSV error flags and manifests.
std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace szilard
