#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>

#include "szilard/errors.hpp"

namespace szilard {

/// Controls how infinite sums and products over energy levels are cut off.
struct TruncationPolicy {
  double rel_tol = 1e-12;
  std::int64_t max_terms = 1'000'000;

  /// Throws Error(InvalidArgument) unless 0 < rel_tol < 1 and max_terms >= 10.
  void validate() const;
};

inline constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max();

struct SeriesSum {
  double value = 0.0;
  std::int64_t terms = 0;  // number of terms actually added
  bool finite = false;     // true if the sum ran to its last index
};

/// Sums term(n) for n = first, first + 1, ... up to `last` (inclusive).
///
/// Terms must share one sign and, once past any initial rise, decrease in
/// magnitude. The sum stops when both the current term and the geometric
/// tail estimate |t_n| r / (1 - r), with r = t_n / t_{n-1}, fall below
/// rel_tol * |S|. For spectra with shrinking level spacing the local ratio
/// matches the integral tail to leading order.
///
/// Throws Error(Truncation) if `max_terms` terms were added without
/// meeting the criterion and `last` was not reached.
template <class Term>
SeriesSum sum_series(Term&& term, std::int64_t first, std::int64_t last,
                     const TruncationPolicy& policy, const char* what = "series") {
  SeriesSum out;
  double prev = 0.0;
  for (std::int64_t n = first; n <= last; ++n) {
    const double t = term(n);
    out.value += t;
    ++out.terms;
    const double mag = std::fabs(t);
    const double scale = std::fabs(out.value);
    if (n == last) {
      out.finite = true;
      return out;
    }
    if (mag == 0.0 && out.terms > 1) return out;
    if (out.terms > 1 && mag < prev) {
      const double r = mag / prev;
      const double tail = mag * r / (1.0 - r);
      if (mag <= policy.rel_tol * scale && tail <= policy.rel_tol * scale) return out;
    }
    if (out.terms >= policy.max_terms) {
      char tol[32];
      std::snprintf(tol, sizeof tol, "%g", policy.rel_tol);
      throw Error(ErrorKind::Truncation, std::string(what) + ": not converged after " +
                                             std::to_string(policy.max_terms) +
                                             " terms (rel_tol " + tol + ")");
    }
    prev = mag;
  }
  out.finite = true;
  return out;
}

}  // namespace szilard
