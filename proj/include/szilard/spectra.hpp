#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "szilard/series.hpp"

namespace szilard {

enum class Barrier { Absent, Inserted };

/// V(x) = m omega^2 x^2 / 2.
struct Harmonic {
  double mass;   // kg
  double omega;  // rad/s
};

/// V(x) = alpha |x|^nu with the coupling tied to alpha = m omega^2 / 2.
struct PowerLaw {
  double mass;      // kg
  double omega;     // rad/s
  double exponent;  // nu > 0
};

/// V(r) = D (1 - exp(-a (r - r_e)))^2.
///
/// Stored by fundamental frequency rather than range parameter so that the
/// harmonic limit (depth = +inf, anharmonicity 0) stays representable.
struct Morse {
  double mass;       // kg
  double frequency;  // fundamental frequency nu = (a / 2 pi) sqrt(2 D / m), Hz
  double depth;      // dissociation energy D, J; +inf for the harmonic limit
  double r_e = 0.0;  // equilibrium position, m; does not enter any energy

  static Morse from_range(double mass, double depth, double range, double r_e = 0.0);
  static Morse from_frequency(double mass, double frequency, double depth, double r_e = 0.0);
  /// depth = h nu / (4 chi); chi = 0 gives the harmonic limit.
  static Morse from_anharmonicity(double mass, double frequency, double chi);

  /// Range parameter a, back-solved from frequency and depth (0 when depth is infinite).
  double range() const;
  /// chi = h nu / (4 D).
  double anharmonicity() const;
  /// h nu.
  double quantum() const;
};

using PotentialSpec = std::variant<Harmonic, PowerLaw, Morse>;

/// Throws Error(InvalidArgument) or Error(InvalidExponent) on bad fields.
void validate(const PotentialSpec& spec);
std::string_view kind_name(const PotentialSpec& spec);

/// Exponent 2 nu / (nu + 2) of (n + 1/2) in the WKB power-law spectrum.
double spectral_exponent(double nu);

/// Energy scale Omega(nu) of E_n = Omega (n + 1/2)^(2 nu / (nu + 2)).
/// Equals hbar omega exactly at nu = 2. Scales as omega^(4 / (nu + 2)).
double omega_prefactor(const PowerLaw& spec);

/// Inverse of omega_prefactor: the PowerLaw whose prefactor is `prefactor`.
PowerLaw power_law_from_prefactor(double mass, double exponent, double prefactor);

/// floor(2 D / (h nu) - 1). Returns kUnbounded for infinite depth.
/// Throws Error(NoBoundStates) if the result is below 1.
std::int64_t morse_bound_count(const Morse& spec);

struct Level {
  std::int64_t n;
  double energy;  // J
  int degeneracy;
};

/// Single-particle levels n = 1, 2, ... of a trap, with or without the barrier.
///
/// With the barrier inserted the level at index n has the energy of the
/// barrier-free level 2n and degeneracy 2: even states are pushed up onto
/// the odd ones. Morse spectra stop at n_m (absent) or floor(n_m / 2)
/// (inserted).
class Spectrum {
 public:
  Spectrum(const PotentialSpec& spec, Barrier barrier);

  Barrier barrier() const { return barrier_; }
  int degeneracy() const { return barrier_ == Barrier::Inserted ? 2 : 1; }
  /// Largest valid index, or kUnbounded.
  std::int64_t last_index() const { return last_; }
  std::optional<std::int64_t> cutoff() const;

  /// Energy of level n; n must be in [1, last_index()]. Unchecked.
  double energy(std::int64_t n) const {
    const double x = static_cast<double>(step_ * n) + 0.5;
    switch (kind_) {
      case Kind::Linear:
        return scale_ * x;
      case Kind::Power:
        return scale_ * std::pow(x, power_);
      case Kind::Morse:
        return scale_ * x * (1.0 - chi_ * x);
    }
    return 0.0;
  }
  double ground_energy() const { return energy(1); }

  /// Bounds-checked level; throws Error(OutOfBounds) or Error(NonBoundLevel).
  Level level(std::int64_t n) const;
  /// The first `count` levels, fewer if the spectrum is finite.
  std::vector<Level> levels(std::int64_t count) const;

 private:
  enum class Kind { Linear, Power, Morse };
  Kind kind_ = Kind::Linear;
  Barrier barrier_;
  std::int64_t step_ = 1;
  std::int64_t last_;
  double scale_ = 0.0;
  double power_ = 1.0;
  double chi_ = 0.0;
};

/// Energy of level n (n >= 1) of the trap; see Spectrum.
double level_energy(const PotentialSpec& spec, std::int64_t n, Barrier barrier);

}  // namespace szilard
