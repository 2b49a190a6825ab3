#include "szilard/engine.hpp"

#include <algorithm>
#include <cmath>
#include <variant>

#include "szilard/constants.hpp"
#include "szilard/errors.hpp"

namespace szilard {

std::string_view to_string(EnsembleKind kind) noexcept {
  switch (kind) {
    case EnsembleKind::CanonicalN:
      return "canonical";
    case EnsembleKind::GrandBose:
      return "bose";
    case EnsembleKind::MorseSingle:
      return "morse";
  }
  return "unknown";
}

std::string_view to_string(Regime regime) noexcept {
  switch (regime) {
    case Regime::Engine:
      return "engine";
    case Regime::Refrigerator:
      return "refrigerator";
    case Regime::Idle:
      return "idle";
  }
  return "unknown";
}

namespace {

struct StageData {
  double log_Z_hot;
  double log_Z_cold;
  double U_A;
  double U_B;
  double U_C;
  double U_D;
  double denominator_extra;  // term added to U_B - U_D in the efficiency denominator
};

void finish(CycleResult& r, const BathPair& baths, const StageData& s) {
  const double kTh = constants::boltzmann * baths.hot;
  const double kTc = constants::boltzmann * baths.cold;
  r.log_Z_hot = s.log_Z_hot;
  r.log_Z_cold = s.log_Z_cold;
  r.U_A = s.U_A;
  r.U_B = s.U_B;
  r.U_C = s.U_C;
  r.U_D = s.U_D;

  r.W = kTh * s.log_Z_hot - kTc * s.log_Z_cold;
  r.Q_AB = s.U_B - s.U_A + kTh * s.log_Z_hot;
  r.Q_BC = s.U_C - s.U_B;
  r.Q_CD = s.U_D - s.U_C - kTc * s.log_Z_cold;
  r.Q_DA = s.U_A - s.U_D;
  r.Q_hot = r.Q_AB + r.Q_DA;
  r.Q_cold = r.Q_BC + r.Q_CD;

  const double denominator = s.U_B - s.U_D + s.denominator_extra;
  if (denominator > 0.0) r.eta = r.W / denominator;

  if (std::fabs(r.W) < kIdleWork) {
    r.regime = Regime::Idle;
  } else if (r.W > 0.0 && r.Q_hot > 0.0) {
    r.regime = Regime::Engine;
  } else {
    r.regime = Regime::Refrigerator;
  }
}

void require_particles(int particles) {
  if (particles < 1) {
    throw Error(ErrorKind::InvalidArgument, "particle number must be >= 1");
  }
}

CycleResult run_bose(const PotentialSpec& spec, int particles, const BathPair& baths,
                     const CycleOptions& o) {
  if (std::holds_alternative<Morse>(spec)) {
    throw Error(ErrorKind::IncompatibleEnsemble,
                "the Bose gas cycle needs a harmonic or power-law trap");
  }
  require_particles(particles);
  CycleResult r;
  const ChemicalPotentials hot = chemical_potentials(spec, particles, baths.hot, o.mu_mode, o.policy);
  const ChemicalPotentials cold =
      chemical_potentials(spec, particles, baths.cold, o.mu_mode, o.policy);
  r.mu_hot = hot;
  r.mu_cold = cold;
  StageData s{};
  s.log_Z_hot = log_relative_partition(spec, hot, o.weighting, o.policy);
  s.log_Z_cold = log_relative_partition(spec, cold, o.weighting, o.policy);
  s.U_A = internal_energy(Stage::A, spec, hot, cold, o.policy);
  s.U_B = internal_energy(Stage::B, spec, hot, cold, o.policy);
  s.U_C = internal_energy(Stage::C, spec, hot, cold, o.policy);
  s.U_D = internal_energy(Stage::D, spec, hot, cold, o.policy);
  s.denominator_extra = constants::boltzmann * baths.hot * s.log_Z_hot;
  finish(r, baths, s);
  return r;
}

CycleResult run_morse(const PotentialSpec& spec, int particles, const BathPair& baths,
                      const CycleOptions& o) {
  const auto* morse = std::get_if<Morse>(&spec);
  if (morse == nullptr || particles != 1) {
    throw Error(ErrorKind::IncompatibleEnsemble,
                "the Morse cycle needs a Morse trap and exactly one particle");
  }
  CycleResult r;
  StageData s{};
  s.log_Z_hot = log_relative_partition(*morse, baths.hot, o.policy);
  s.log_Z_cold = log_relative_partition(*morse, baths.cold, o.policy);
  s.U_A = internal_energy(Stage::A, *morse, baths, o.policy);
  s.U_B = internal_energy(Stage::B, *morse, baths, o.policy);
  s.U_C = internal_energy(Stage::C, *morse, baths, o.policy);
  s.U_D = internal_energy(Stage::D, *morse, baths, o.policy);
  const double kTh = constants::boltzmann * baths.hot;
  s.denominator_extra = o.eq38_literal ? kTh * std::exp(s.log_Z_hot) : kTh * s.log_Z_hot;
  finish(r, baths, s);
  return r;
}

CycleResult run_canonical(const PotentialSpec& spec, int particles, const BathPair& baths,
                          const CycleOptions& o) {
  const auto* harmonic = std::get_if<Harmonic>(&spec);
  if (harmonic == nullptr) {
    throw Error(ErrorKind::IncompatibleEnsemble, "the canonical N-particle cycle needs a harmonic trap");
  }
  require_particles(particles);
  CycleResult r;
  StageData s{};
  auto log_z = [&](Stage st) {
    return canonical_log_partition(st, *harmonic, particles, baths, o.policy);
  };
  auto energy = [&](Stage st) {
    return canonical_internal_energy(st, *harmonic, particles, baths, o.policy);
  };
  s.log_Z_hot = log_z(Stage::B) - log_z(Stage::A);
  s.log_Z_cold = log_z(Stage::C) - log_z(Stage::D);
  s.U_A = energy(Stage::A);
  s.U_B = energy(Stage::B);
  s.U_C = energy(Stage::C);
  s.U_D = energy(Stage::D);
  s.denominator_extra = constants::boltzmann * baths.hot * s.log_Z_hot;
  finish(r, baths, s);
  return r;
}

}  // namespace

CycleResult run_cycle(const PotentialSpec& spec, EnsembleKind ensemble, int particles,
                      const BathPair& baths, const CycleOptions& options) {
  options.policy.validate();
  baths.validate();
  validate(spec);
  switch (ensemble) {
    case EnsembleKind::GrandBose:
      return run_bose(spec, particles, baths, options);
    case EnsembleKind::MorseSingle:
      return run_morse(spec, particles, baths, options);
    case EnsembleKind::CanonicalN:
      return run_canonical(spec, particles, baths, options);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown ensemble");
}

double carnot_bound(const BathPair& baths) {
  baths.validate();
  return 1.0 - baths.cold / baths.hot;
}

double first_law_residual(const CycleResult& r) {
  const double sum = r.Q_AB + r.Q_BC + r.Q_CD + r.Q_DA;
  const double scale = std::max({std::fabs(r.W), std::fabs(r.Q_AB), std::fabs(r.Q_BC),
                                 std::fabs(r.Q_CD), std::fabs(r.Q_DA)});
  if (scale == 0.0) return 0.0;
  return std::fabs(r.W - sum) / scale;
}

}  // namespace szilard
