#include "szilard/barrier.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "szilard/errors.hpp"
#include "szilard/special.hpp"

namespace szilard {

BarrierStrength::BarrierStrength(double value) {
  if (std::isnan(value) || value < 0.0) {
    throw Error(ErrorKind::InvalidArgument,
                "barrier strength must be >= 0, got " + std::to_string(value));
  }
  if (std::isinf(value)) {
    infinite_ = true;
  } else {
    value_ = value;
  }
}

BarrierStrength BarrierStrength::infinite() {
  BarrierStrength s;
  s.infinite_ = true;
  return s;
}

double BarrierStrength::value() const {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_;
}

double gamma_ratio(double epsilon) {
  const double a = 0.75 - 0.5 * epsilon;
  const double b = 0.25 - 0.5 * epsilon;
  if (is_gamma_pole(a)) {
    throw Error(ErrorKind::Pole,
                "gamma ratio diverges at epsilon = " + std::to_string(epsilon));
  }
  if (is_gamma_pole(b)) return 0.0;
  const LogGamma num = log_gamma(a);
  const LogGamma den = log_gamma(b);
  return num.sign * den.sign * std::exp(num.log_abs - den.log_abs);
}

double odd_level(int k) { return 1.5 + 2.0 * k; }

namespace {

EvenLevelSolution solve_branch(double lambda, int k) {
  const double target = -0.5 * lambda;
  const double left = 0.5 + 2.0 * k;
  const double right = 1.5 + 2.0 * k;
  // f(eps) = ratio + lambda/2 falls from lambda/2 > 0 at the left end to -inf.
  auto f = [&](double eps) { return gamma_ratio(eps) - target; };

  // The right probe stays clear of the numerator pole, where gamma_ratio
  // throws; roots closer than this need lambda' of order 1e13.
  double lo = std::nextafter(left, right);
  double hi = right - 1e-13 * right;
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  if (!(f_lo > 0.0) || !(f_hi < 0.0)) {
    std::ostringstream msg;
    msg << "no sign change for branch " << k << " at lambda' = " << lambda << ": f(" << lo
        << ") = " << f_lo << ", f(" << hi << ") = " << f_hi;
    throw Error(ErrorKind::SolverFailure, msg.str());
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  // Report whichever bracket end has the smaller residual.
  const double r_lo = std::fabs(f(lo));
  const double r_hi = std::fabs(f(hi));
  return r_lo <= r_hi ? EvenLevelSolution{k, lo, r_lo} : EvenLevelSolution{k, hi, r_hi};
}

}  // namespace

std::vector<EvenLevelSolution> even_levels(const BarrierStrength& strength, int k_max) {
  if (k_max < 0) {
    throw Error(ErrorKind::InvalidArgument, "k_max must be >= 0");
  }
  std::vector<EvenLevelSolution> out;
  out.reserve(static_cast<std::size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) {
    if (strength.is_infinite()) {
      out.push_back({k, odd_level(k), 0.0});
    } else if (strength.value() == 0.0) {
      out.push_back({k, 0.5 + 2.0 * k, 0.0});
    } else {
      out.push_back(solve_branch(strength.value(), k));
    }
  }
  return out;
}

}  // namespace szilard
