#pragma once

namespace szilard {

/// Physical constants used throughout the simulator, in SI units.
///
/// The values are the rounded ones used to produce the published figures,
/// not CODATA. Note that `planck / (2 pi)` differs from `hbar` in the fifth
/// digit; harmonic and power-law spectra use `hbar`, Morse spectra use `planck`.
namespace constants {

inline constexpr double hbar = 1.0545e-34;        // J s
inline constexpr double planck = 6.6260e-34;      // J s
inline constexpr double boltzmann = 1.3806e-23;   // J / K
inline constexpr double electron_volt = 1.602176634e-19;  // J
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg
inline constexpr double pi = 3.14159265358979323846;

}  // namespace constants
}  // namespace szilard
