#pragma once

#include <optional>
#include <string_view>

#include "szilard/ensembles.hpp"
#include "szilard/series.hpp"
#include "szilard/spectra.hpp"

namespace szilard {

enum class EnsembleKind {
  /// N particles in a harmonic trap, stage sums of N-th powers.
  CanonicalN,
  /// Non-interacting bosons in a harmonic or power-law trap.
  GrandBose,
  /// One particle in a Morse well.
  MorseSingle,
};

enum class Regime { Engine, Refrigerator, Idle };

std::string_view to_string(EnsembleKind kind) noexcept;
std::string_view to_string(Regime regime) noexcept;

struct CycleOptions {
  TruncationPolicy policy{};
  MuMode mu_mode = MuMode::ExactSolve;
  DegeneracyWeighting weighting = DegeneracyWeighting::Weighted;
  /// Morse efficiency denominator with k T_h Z[T_h] in place of k T_h log Z[T_h].
  bool eq38_literal = false;
};

struct CycleResult {
  double W = 0.0;
  double Q_AB = 0.0;
  double Q_BC = 0.0;
  double Q_CD = 0.0;
  double Q_DA = 0.0;
  double Q_hot = 0.0;
  double Q_cold = 0.0;
  /// Absent when the heat supplied is not positive.
  std::optional<double> eta;
  Regime regime = Regime::Idle;

  double log_Z_hot = 0.0;
  double log_Z_cold = 0.0;
  double U_A = 0.0;
  double U_B = 0.0;
  double U_C = 0.0;
  double U_D = 0.0;

  /// Grand-canonical runs only.
  std::optional<ChemicalPotentials> mu_hot;
  std::optional<ChemicalPotentials> mu_cold;
};

/// Below this magnitude (J) the work counts as zero.
inline constexpr double kIdleWork = 1e-30;

/// One quasi-static cycle: insertion at T_h (A -> B), cooling (B -> C),
/// removal at T_c (C -> D), heating (D -> A).
///
/// Throws Error(IncompatibleEnsemble) for a trap the ensemble cannot use
/// (GrandBose: harmonic or power law; MorseSingle: Morse with N = 1;
/// CanonicalN: harmonic), plus any error of the underlying ensemble.
CycleResult run_cycle(const PotentialSpec& spec, EnsembleKind ensemble, int particles,
                      const BathPair& baths, const CycleOptions& options = {});

/// 1 - T_c / T_h.
double carnot_bound(const BathPair& baths);

/// |W - sum Q| / max(|W|, |Q_AB|, |Q_BC|, |Q_CD|, |Q_DA|); 0 when all vanish.
double first_law_residual(const CycleResult& result);

}  // namespace szilard
