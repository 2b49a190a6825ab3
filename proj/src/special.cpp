#include "szilard/special.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "szilard/constants.hpp"
#include "szilard/errors.hpp"

namespace szilard {

double sin_pi(double x) {
  if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
  // r in [-1, 1], exact in floating point.
  double r = x - 2.0 * std::nearbyint(x / 2.0);
  if (r == 0.0 || r == 1.0 || r == -1.0) return 0.0;
  if (r > 0.5) return std::sin(constants::pi * (1.0 - r));
  if (r < -0.5) return -std::sin(constants::pi * (1.0 + r));
  return std::sin(constants::pi * r);
}

bool is_gamma_pole(double x) {
  if (x > 0.5) return false;
  const double k = std::nearbyint(x);
  const double tol = 4.0 * std::numeric_limits<double>::epsilon() * std::fmax(1.0, std::fabs(x));
  return std::fabs(x - k) <= tol;
}

LogGamma log_gamma(double x) {
  if (is_gamma_pole(x)) {
    throw Error(ErrorKind::Pole, "Gamma has a pole at " + std::to_string(x));
  }
  if (x > 0.0) return {std::lgamma(x), 1};
  // Reflection; 1 - x > 1 so lgamma there is well conditioned.
  const double s = sin_pi(x);
  LogGamma out;
  out.log_abs = std::log(constants::pi) - std::log(std::fabs(s)) - std::lgamma(1.0 - x);
  out.sign = s > 0.0 ? 1 : -1;
  return out;
}

}  // namespace szilard
