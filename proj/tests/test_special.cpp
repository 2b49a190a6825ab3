#include <cmath>

#include "doctest.h"
#include "szilard/errors.hpp"
#include "szilard/special.hpp"

using namespace szilard;

TEST_CASE("sin_pi is exact at integers and half-integers") {
  for (int k = -6; k <= 6; ++k) {
    CHECK(sin_pi(k) == 0.0);
  }
  CHECK(sin_pi(0.5) == 1.0);
  CHECK(sin_pi(-0.5) == -1.0);
  CHECK(sin_pi(2.5) == 1.0);
  CHECK(sin_pi(0.25) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(sin_pi(1e6 + 0.25) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("log_gamma matches lgamma for positive arguments") {
  for (double x : {0.1, 0.5, 1.0, 1.5, 2.75, 10.0, 170.5}) {
    const auto g = log_gamma(x);
    CHECK(g.sign == 1);
    CHECK(g.log_abs == doctest::Approx(std::lgamma(x)).epsilon(1e-14));
  }
}

TEST_CASE("log_gamma reflects negative arguments with the right sign") {
  const double sqrt_pi = std::sqrt(M_PI);
  // Gamma(-1/2) = -2 sqrt(pi), Gamma(-3/2) = 4 sqrt(pi) / 3, Gamma(-5/2) = -8 sqrt(pi) / 15
  auto g = log_gamma(-0.5);
  CHECK(g.sign == -1);
  CHECK(std::exp(g.log_abs) == doctest::Approx(2.0 * sqrt_pi).epsilon(1e-14));
  g = log_gamma(-1.5);
  CHECK(g.sign == 1);
  CHECK(std::exp(g.log_abs) == doctest::Approx(4.0 * sqrt_pi / 3.0).epsilon(1e-14));
  g = log_gamma(-2.5);
  CHECK(g.sign == -1);
  CHECK(std::exp(g.log_abs) == doctest::Approx(8.0 * sqrt_pi / 15.0).epsilon(1e-14));
  g = log_gamma(-0.25);
  CHECK(g.sign * std::exp(g.log_abs) == doctest::Approx(std::tgamma(-0.25)).epsilon(1e-14));
}

TEST_CASE("log_gamma throws at poles") {
  for (double x : {0.0, -1.0, -2.0, -7.0}) {
    CHECK(is_gamma_pole(x));
    try {
      log_gamma(x);
      FAIL("expected a pole error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Pole);
    }
  }
  CHECK_FALSE(is_gamma_pole(1.0));
  CHECK_FALSE(is_gamma_pole(-0.5));
  CHECK_FALSE(is_gamma_pole(-1.0 + 1e-9));
}
