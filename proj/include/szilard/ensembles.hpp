#pragma once

#include "szilard/series.hpp"
#include "szilard/spectra.hpp"

namespace szilard {

/// Hot and cold bath temperatures in kelvin. hot < cold is allowed; the
/// cycle then runs as a refrigerator.
struct BathPair {
  double hot;
  double cold;

  void validate() const;
};

/// Cycle stages. A and B touch the hot bath, C and D the cold one; the
/// barrier is in place during B and C.
enum class Stage { A, B, C, D };

inline Barrier barrier_of(Stage s) {
  return (s == Stage::B || s == Stage::C) ? Barrier::Inserted : Barrier::Absent;
}
inline bool is_hot(Stage s) { return s == Stage::A || s == Stage::B; }

enum class MuMode {
  /// mu = E_1 - kT log(1 + d_1 / N), the ground-state-dominance estimate.
  ClosedFormApproximation,
  /// mu solving sum_n g / (exp(beta (E_n - mu)) - 1) = N.
  ExactSolve,
};

/// How the doubly degenerate post-barrier levels enter the grand partition
/// product of stages B and C.
enum class DegeneracyWeighting {
  /// Each post-barrier factor raised to its degeneracy, consistent with the
  /// factor 2 in the post-barrier internal energy.
  Weighted,
  /// Post-barrier factors taken once, as the product is printed.
  Verbatim,
};

/// Chemical potentials before (mu_b) and after (mu_a) barrier insertion at
/// one bath temperature.
struct ChemicalPotentials {
  double before;       // J
  double after;        // J
  double temperature;  // K
  int particles;
  MuMode mode;
  /// beta (E_1 - mu) for each configuration; strictly positive.
  double gap_before;
  double gap_after;
};

/// Mean occupation sum_n g / (exp(beta (E_n - mu)) - 1).
/// Throws Error(ConvergenceViolation) unless mu < E_1.
double occupation_sum(const PotentialSpec& spec, Barrier barrier, double mu, double temperature,
                      const TruncationPolicy& policy = {});

/// Chemical potential of N bosons in one barrier configuration.
/// Throws Error(ConvergenceViolation) if the result is not below E_1 and
/// Error(SolverFailure) if the exact solve cannot bracket the root.
double chemical_potential(const PotentialSpec& spec, int particles, double temperature,
                          Barrier barrier, MuMode mode, const TruncationPolicy& policy = {});

ChemicalPotentials chemical_potentials(const PotentialSpec& spec, int particles,
                                       double temperature, MuMode mode,
                                       const TruncationPolicy& policy = {});

/// log of Z_B / Z_A (or Z_C / Z_D) for the grand-canonical Bose gas at the
/// temperature carried by `mu`:
///   sum_n log(1 - e^{-beta (E_n - mu_b)}) - w sum_n log(1 - e^{-beta (E_2n - mu_a)})
/// with w = 2 (Weighted) or 1 (Verbatim).
double log_relative_partition(const PotentialSpec& spec, const ChemicalPotentials& mu,
                              DegeneracyWeighting weighting, const TruncationPolicy& policy = {});

double relative_partition(const PotentialSpec& spec, const ChemicalPotentials& mu,
                          DegeneracyWeighting weighting, const TruncationPolicy& policy = {});

/// log of sum_{2n <= n_m} 2 e^{-beta E_2n} / sum_{n <= n_m} e^{-beta E_n}.
double log_relative_partition(const Morse& spec, double temperature,
                              const TruncationPolicy& policy = {});
double relative_partition(const Morse& spec, double temperature,
                          const TruncationPolicy& policy = {});

/// log Z of one stage of the Bose gas at fixed mu (the stage's bath picks
/// `hot` or `cold`).
double stage_log_partition(Stage stage, const PotentialSpec& spec, const ChemicalPotentials& hot,
                           const ChemicalPotentials& cold, DegeneracyWeighting weighting,
                           const TruncationPolicy& policy = {});

/// Bose gas internal energy sum_n g (E_n - mu) / (exp(beta (E_n - mu)) - 1)
/// of one stage, g = 2 for B and C. This is -d log Z / d beta at fixed mu
/// for the Weighted product.
double internal_energy(Stage stage, const PotentialSpec& spec, const ChemicalPotentials& hot,
                       const ChemicalPotentials& cold, const TruncationPolicy& policy = {});

/// Morse internal energy -d log Z / d beta as a Boltzmann average over the
/// finite spectrum of the stage.
double internal_energy(Stage stage, const Morse& spec, const BathPair& baths,
                       const TruncationPolicy& policy = {});

// Canonical N-particle harmonic engine with stage sums
//   Z^N = sum_{n >= 1} [g e^{-beta E_n}]^N,  g = 2 in stages B and C.

double canonical_log_partition(Stage stage, const Harmonic& spec, int particles,
                               const BathPair& baths, const TruncationPolicy& policy = {});
double canonical_internal_energy(Stage stage, const Harmonic& spec, int particles,
                                 const BathPair& baths, const TruncationPolicy& policy = {});
/// W = kT_h log(Z_B / Z_A) - kT_c log(Z_C / Z_D).
/// Throws Error(IncompatibleEnsemble) unless spec holds a Harmonic trap.
double canonical_work_N(const PotentialSpec& spec, int particles, const BathPair& baths,
                        const TruncationPolicy& policy = {});

}  // namespace szilard
