#pragma once

namespace szilard {

/// sin(pi x) with exact zeros at the integers and argument reduction done
/// before the multiplication by pi.
double sin_pi(double x);

/// True when x lies within a few ulps of a non-positive integer.
bool is_gamma_pole(double x);

struct LogGamma {
  double log_abs;  // log |Gamma(x)|
  int sign;        // +1 or -1
};

/// log|Gamma(x)| and the sign of Gamma(x) for any real x that is not a pole.
/// Negative arguments go through the reflection formula
/// Gamma(x) Gamma(1 - x) = pi / sin(pi x).
/// Throws Error(ErrorKind::Pole) at non-positive integers.
LogGamma log_gamma(double x);

}  // namespace szilard
