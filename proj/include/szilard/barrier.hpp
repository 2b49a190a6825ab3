#pragma once

#include <vector>

namespace szilard {

/// Dimensionless strength lambda' = lambda sqrt(m / (hbar^3 omega)) of a
/// delta barrier at the center of a harmonic trap. Infinity is a distinct
/// state, never fed to the root finder.
class BarrierStrength {
 public:
  /// Throws Error(InvalidArgument) for negative or NaN values.
  explicit BarrierStrength(double value);
  static BarrierStrength infinite();

  bool is_infinite() const { return infinite_; }
  /// The finite value; +inf when is_infinite().
  double value() const;

 private:
  BarrierStrength() = default;
  double value_ = 0.0;
  bool infinite_ = false;
};

struct EvenLevelSolution {
  int branch;       // k >= 0
  double energy;    // epsilon = E / (hbar omega)
  double residual;  // |gamma_ratio(epsilon) + lambda' / 2|
};

/// Gamma(3/4 - eps/2) / Gamma(1/4 - eps/2), via log-gamma magnitudes and
/// tracked signs. Returns exactly 0 at the denominator poles eps = 1/2 + 2j
/// and throws Error(Pole) at the numerator poles eps = 3/2 + 2j.
double gamma_ratio(double epsilon);

/// Even-parity levels of the harmonic trap with a delta barrier of strength
/// lambda', branches k = 0..k_max. Branch k is the root of
/// gamma_ratio(eps) = -lambda'/2 in (1/2 + 2k, 3/2 + 2k), found by bisection
/// to machine precision. lambda' = 0 and lambda' = inf return the interval
/// endpoints exactly.
///
/// Throws Error(SolverFailure) if the ratio does not change sign on the
/// branch interval.
std::vector<EvenLevelSolution> even_levels(const BarrierStrength& strength, int k_max);

/// Odd-parity level 3/2 + 2k, which the barrier leaves unchanged.
double odd_level(int k);

}  // namespace szilard
