#include "szilard/spectra.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "szilard/constants.hpp"
#include "szilard/errors.hpp"
#include "szilard/series.hpp"
#include "szilard/special.hpp"

namespace szilard {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || std::isnan(value)) {
    throw Error(ErrorKind::InvalidArgument,
                std::string(name) + " must be positive, got " + std::to_string(value));
  }
}

void require_positive_finite(double value, const char* name) {
  require_positive(value, name);
  if (!std::isfinite(value)) {
    throw Error(ErrorKind::InvalidArgument, std::string(name) + " must be finite");
  }
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

Morse Morse::from_range(double mass, double depth, double range, double r_e) {
  require_positive_finite(mass, "Morse mass");
  require_positive_finite(depth, "Morse depth");
  require_positive_finite(range, "Morse range parameter");
  const double frequency = range / (2.0 * constants::pi) * std::sqrt(2.0 * depth / mass);
  return Morse{mass, frequency, depth, r_e};
}

Morse Morse::from_frequency(double mass, double frequency, double depth, double r_e) {
  return Morse{mass, frequency, depth, r_e};
}

Morse Morse::from_anharmonicity(double mass, double frequency, double chi) {
  if (chi < 0.0 || std::isnan(chi)) {
    throw Error(ErrorKind::InvalidArgument, "anharmonicity must be >= 0");
  }
  const double depth = chi == 0.0 ? std::numeric_limits<double>::infinity()
                                  : constants::planck * frequency / (4.0 * chi);
  return Morse{mass, frequency, depth, 0.0};
}

double Morse::range() const {
  if (std::isinf(depth)) return 0.0;
  return 2.0 * constants::pi * frequency * std::sqrt(mass / (2.0 * depth));
}

double Morse::anharmonicity() const {
  if (std::isinf(depth)) return 0.0;
  return quantum() / (4.0 * depth);
}

double Morse::quantum() const { return constants::planck * frequency; }

void validate(const PotentialSpec& spec) {
  std::visit(Overloaded{
                 [](const Harmonic& h) {
                   require_positive_finite(h.mass, "mass");
                   require_positive_finite(h.omega, "omega");
                 },
                 [](const PowerLaw& p) {
                   require_positive_finite(p.mass, "mass");
                   require_positive_finite(p.omega, "omega");
                   if (!(p.exponent > 0.0) || !std::isfinite(p.exponent)) {
                     throw Error(ErrorKind::InvalidExponent,
                                 "power-law exponent must be positive, got " +
                                     std::to_string(p.exponent));
                   }
                 },
                 [](const Morse& m) {
                   require_positive_finite(m.mass, "mass");
                   require_positive_finite(m.frequency, "Morse frequency");
                   require_positive(m.depth, "Morse depth");
                 },
             },
             spec);
}

std::string_view kind_name(const PotentialSpec& spec) {
  switch (spec.index()) {
    case 0: return "harmonic";
    case 1: return "power-law";
    default: return "morse";
  }
}

double spectral_exponent(double nu) { return 2.0 * nu / (nu + 2.0); }

double omega_prefactor(const PowerLaw& spec) {
  validate(spec);
  const double nu = spec.exponent;
  const double alpha = 0.5 * spec.mass * spec.omega * spec.omega;
  // log of hbar sqrt(pi / (2 m alpha)) Gamma(1/nu + 3/2) / Gamma(1 + 1/nu)
  const double log_inner = std::log(constants::hbar) +
                           0.5 * std::log(constants::pi / (2.0 * spec.mass * alpha)) +
                           log_gamma(1.0 / nu + 1.5).log_abs - log_gamma(1.0 + 1.0 / nu).log_abs;
  const double p = spectral_exponent(nu);
  if (p == 1.0) {
    return alpha * std::exp(log_inner);
  }
  return std::exp(std::log(alpha) + p * log_inner);
}

PowerLaw power_law_from_prefactor(double mass, double exponent, double prefactor) {
  require_positive_finite(prefactor, "prefactor");
  PowerLaw unit{mass, 1.0, exponent};
  const double at_unit = omega_prefactor(unit);
  // Omega ~ omega^(4 / (nu + 2))
  const double omega = std::pow(prefactor / at_unit, (exponent + 2.0) / 4.0);
  return PowerLaw{mass, omega, exponent};
}

std::int64_t morse_bound_count(const Morse& spec) {
  validate(spec);
  if (std::isinf(spec.depth)) return kUnbounded;
  const double x = 2.0 * spec.depth / spec.quantum() - 1.0;
  if (x >= 9.0e18) return kUnbounded;
  double count = std::floor(x);
  // 2D/(h nu) that should be an integer may land a few ulps low.
  const double nearest = std::nearbyint(x);
  if (std::fabs(x - nearest) <= 8.0 * std::numeric_limits<double>::epsilon() * std::fmax(1.0, x)) {
    count = nearest;
  }
  if (count < 1.0) {
    throw Error(ErrorKind::NoBoundStates,
                "Morse well has no bound states (2D/(h nu) - 1 = " + std::to_string(x) + ")");
  }
  return static_cast<std::int64_t>(count);
}

Spectrum::Spectrum(const PotentialSpec& spec, Barrier barrier)
    : barrier_(barrier), step_(barrier == Barrier::Inserted ? 2 : 1), last_(kUnbounded) {
  validate(spec);
  std::visit(Overloaded{
                 [this](const Harmonic& h) {
                   kind_ = Kind::Linear;
                   scale_ = constants::hbar * h.omega;
                 },
                 [this](const PowerLaw& p) {
                   power_ = spectral_exponent(p.exponent);
                   kind_ = power_ == 1.0 ? Kind::Linear : Kind::Power;
                   scale_ = omega_prefactor(p);
                 },
                 [this](const Morse& m) {
                   kind_ = Kind::Morse;
                   scale_ = m.quantum();
                   chi_ = m.anharmonicity();
                   const std::int64_t bound = morse_bound_count(m);
                   if (bound != kUnbounded) last_ = bound / step_;
                   if (last_ < 1) {
                     throw Error(ErrorKind::EmptyPostBarrierSpectrum,
                                 "post-barrier spectrum empty: n_m = " + std::to_string(bound) +
                                     " leaves no level with 2n <= n_m");
                   }
                 },
             },
             spec);
}

std::optional<std::int64_t> Spectrum::cutoff() const {
  if (last_ == kUnbounded) return std::nullopt;
  return last_;
}

Level Spectrum::level(std::int64_t n) const {
  if (n < 1 || n > last_) {
    throw Error(ErrorKind::OutOfBounds,
                "level index " + std::to_string(n) + " outside [1, " +
                    (last_ == kUnbounded ? std::string("inf") : std::to_string(last_)) + "]");
  }
  const double e = energy(n);
  if (!(e > 0.0)) {
    throw Error(ErrorKind::NonBoundLevel,
                "level " + std::to_string(n) + " has non-positive energy " + std::to_string(e));
  }
  return Level{n, e, degeneracy()};
}

std::vector<Level> Spectrum::levels(std::int64_t count) const {
  std::vector<Level> out;
  const std::int64_t upto = count < last_ ? count : last_;
  if (upto > 0) out.reserve(static_cast<std::size_t>(upto));
  for (std::int64_t n = 1; n <= upto; ++n) out.push_back(level(n));
  return out;
}

double level_energy(const PotentialSpec& spec, std::int64_t n, Barrier barrier) {
  return Spectrum(spec, barrier).level(n).energy;
}

}  // namespace szilard
