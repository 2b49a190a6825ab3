#include "szilard/ensembles.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <variant>

#include "szilard/constants.hpp"
#include "szilard/errors.hpp"

namespace szilard {

void BathPair::validate() const {
  if (!(hot > 0.0) || !(cold > 0.0) || !std::isfinite(hot) || !std::isfinite(cold)) {
    std::ostringstream msg;
    msg << "bath temperatures must be positive and finite, got T_h = " << hot
        << ", T_c = " << cold;
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
}

namespace {

double inverse_temperature(double temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw Error(ErrorKind::InvalidArgument,
                "temperature must be positive, got " + std::to_string(temperature));
  }
  return 1.0 / (constants::boltzmann * temperature);
}

void require_particles(int particles) {
  if (particles < 1) {
    throw Error(ErrorKind::InvalidArgument,
                "particle number must be >= 1, got " + std::to_string(particles));
  }
}

void require_bose_trap(const PotentialSpec& spec) {
  if (std::holds_alternative<Morse>(spec)) {
    throw Error(ErrorKind::IncompatibleEnsemble,
                "the grand-canonical Bose gas needs a harmonic or power-law trap");
  }
}

// Reduced level offsets beta (E_n - E_1) of one spectrum.
struct Reduced {
  const Spectrum& spectrum;
  double beta;
  double ground;

  Reduced(const Spectrum& s, double b) : spectrum(s), beta(b), ground(s.ground_energy()) {}
  double offset(std::int64_t n) const {
    return n == 1 ? 0.0 : beta * (spectrum.energy(n) - ground);
  }
};

double bose_occupation(const Reduced& r, double gap, const TruncationPolicy& policy) {
  const double g = r.spectrum.degeneracy();
  return sum_series([&](std::int64_t n) { return g / std::expm1(gap + r.offset(n)); }, 1,
                    r.spectrum.last_index(), policy, "occupation sum")
      .value;
}

// d(occupation)/d(gap), always negative.
double bose_occupation_slope(const Reduced& r, double gap, const TruncationPolicy& policy) {
  const double g = r.spectrum.degeneracy();
  return -sum_series(
              [&](std::int64_t n) {
                const double occ = 1.0 / std::expm1(gap + r.offset(n));
                return g * occ * (1.0 + occ);
              },
              1, r.spectrum.last_index(), policy, "occupation slope")
              .value;
}

// -sum_n log(1 - e^{-x_n}), one factor per level (degeneracy not applied).
double bose_log_product(const Reduced& r, double gap, const TruncationPolicy& policy) {
  return sum_series([&](std::int64_t n) { return -std::log1p(-std::exp(-(gap + r.offset(n)))); },
                    1, r.spectrum.last_index(), policy, "grand partition product")
      .value;
}

// sum_n g x_n / (e^{x_n} - 1); multiply by kT for the energy.
double bose_reduced_energy(const Reduced& r, double gap, const TruncationPolicy& policy) {
  const double g = r.spectrum.degeneracy();
  return sum_series(
             [&](std::int64_t n) {
               const double x = gap + r.offset(n);
               return g * x / std::expm1(x);
             },
             1, r.spectrum.last_index(), policy, "internal energy sum")
      .value;
}

// Exact reduced gap beta (E_1 - mu) with occupation N. The estimate
// log(1 + g/N) puts N bosons in the ground level alone, so it is a lower
// bound on the root.
double solve_gap(const Reduced& r, int particles, const TruncationPolicy& policy) {
  const double target = particles;
  const double g = r.spectrum.degeneracy();
  double lo = std::log1p(g / target);
  double f_lo = bose_occupation(r, lo, policy) - target;
  if (f_lo <= 0.0) return lo;

  double hi = 2.0 * lo + 1.0;
  int expansions = 0;
  while (bose_occupation(r, hi, policy) > target) {
    hi = 2.0 * hi + 1.0;
    if (++expansions > 200) {
      throw Error(ErrorKind::SolverFailure, "could not bracket the chemical potential");
    }
  }

  // Newton on a convex decreasing function, started from the left, with a
  // bisection fallback whenever the step leaves the bracket.
  double t = lo;
  double f = f_lo;
  for (int it = 0; it < 400; ++it) {
    if (std::fabs(f) <= 1e-13 * target) return t;
    if (f > 0.0) {
      lo = t;
    } else {
      hi = t;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) return t;
    double next = t - f / bose_occupation_slope(r, t, policy);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    t = next;
    f = bose_occupation(r, t, policy) - target;
  }
  std::ostringstream msg;
  msg << "chemical potential solve did not converge for N = " << particles
      << " (residual " << f << ")";
  throw Error(ErrorKind::SolverFailure, msg.str());
}

double gap_for(const Spectrum& spectrum, double beta, int particles, MuMode mode,
               const TruncationPolicy& policy) {
  if (mode == MuMode::ClosedFormApproximation) {
    return std::log1p(spectrum.degeneracy() / static_cast<double>(particles));
  }
  return solve_gap(Reduced(spectrum, beta), particles, policy);
}

double mu_from_gap(const Spectrum& spectrum, double beta, double gap) {
  const double e1 = spectrum.ground_energy();
  const double mu = e1 - gap / beta;
  if (!(mu < e1) || !(gap > 0.0)) {
    std::ostringstream msg;
    msg << "chemical potential " << mu << " J is not below the ground level " << e1 << " J";
    throw Error(ErrorKind::ConvergenceViolation, msg.str());
  }
  return mu;
}

const ChemicalPotentials& pick(Stage stage, const ChemicalPotentials& hot,
                               const ChemicalPotentials& cold) {
  return is_hot(stage) ? hot : cold;
}

// Boltzmann sums of a finite or truncated spectrum, relative to its ground level.
struct BoltzmannSums {
  double weight = 0.0;     // sum_n e^{-beta' (E_n - E_1)}
  double excess = 0.0;     // sum_n (E_n - E_1) e^{-beta' (E_n - E_1)}
};

BoltzmannSums boltzmann_sums(const Spectrum& s, double beta, const TruncationPolicy& policy,
                             bool with_energy) {
  const double e1 = s.ground_energy();
  BoltzmannSums out;
  out.weight = sum_series([&](std::int64_t n) { return std::exp(-beta * (s.energy(n) - e1)); },
                          1, s.last_index(), policy, "Boltzmann sum")
                   .value;
  if (with_energy) {
    out.excess = sum_series(
                     [&](std::int64_t n) {
                       const double de = s.energy(n) - e1;
                       return de * std::exp(-beta * de);
                     },
                     1, s.last_index(), policy, "Boltzmann energy sum")
                     .value;
  }
  return out;
}

}  // namespace

double occupation_sum(const PotentialSpec& spec, Barrier barrier, double mu, double temperature,
                      const TruncationPolicy& policy) {
  policy.validate();
  const double beta = inverse_temperature(temperature);
  const Spectrum spectrum(spec, barrier);
  const double e1 = spectrum.ground_energy();
  if (!(mu < e1)) {
    throw Error(ErrorKind::ConvergenceViolation, "mu must lie below the ground level");
  }
  return bose_occupation(Reduced(spectrum, beta), beta * (e1 - mu), policy);
}

double chemical_potential(const PotentialSpec& spec, int particles, double temperature,
                          Barrier barrier, MuMode mode, const TruncationPolicy& policy) {
  policy.validate();
  require_particles(particles);
  const double beta = inverse_temperature(temperature);
  const Spectrum spectrum(spec, barrier);
  return mu_from_gap(spectrum, beta, gap_for(spectrum, beta, particles, mode, policy));
}

ChemicalPotentials chemical_potentials(const PotentialSpec& spec, int particles,
                                       double temperature, MuMode mode,
                                       const TruncationPolicy& policy) {
  policy.validate();
  require_particles(particles);
  const double beta = inverse_temperature(temperature);
  const Spectrum absent(spec, Barrier::Absent);
  const Spectrum inserted(spec, Barrier::Inserted);
  ChemicalPotentials out{};
  out.temperature = temperature;
  out.particles = particles;
  out.mode = mode;
  out.gap_before = gap_for(absent, beta, particles, mode, policy);
  out.gap_after = gap_for(inserted, beta, particles, mode, policy);
  out.before = mu_from_gap(absent, beta, out.gap_before);
  out.after = mu_from_gap(inserted, beta, out.gap_after);
  return out;
}

double log_relative_partition(const PotentialSpec& spec, const ChemicalPotentials& mu,
                              DegeneracyWeighting weighting, const TruncationPolicy& policy) {
  policy.validate();
  require_bose_trap(spec);
  const double beta = inverse_temperature(mu.temperature);
  const Spectrum absent(spec, Barrier::Absent);
  const Spectrum inserted(spec, Barrier::Inserted);
  const double w = weighting == DegeneracyWeighting::Weighted ? inserted.degeneracy() : 1.0;
  const double log_a = bose_log_product(Reduced(absent, beta), mu.gap_before, policy);
  const double log_b = w * bose_log_product(Reduced(inserted, beta), mu.gap_after, policy);
  return log_b - log_a;
}

double relative_partition(const PotentialSpec& spec, const ChemicalPotentials& mu,
                          DegeneracyWeighting weighting, const TruncationPolicy& policy) {
  return std::exp(log_relative_partition(spec, mu, weighting, policy));
}

double log_relative_partition(const Morse& spec, double temperature,
                              const TruncationPolicy& policy) {
  policy.validate();
  const double beta = inverse_temperature(temperature);
  const Spectrum absent(spec, Barrier::Absent);
  const Spectrum inserted(spec, Barrier::Inserted);
  const double sum_a = boltzmann_sums(absent, beta, policy, false).weight;
  const double sum_b = boltzmann_sums(inserted, beta, policy, false).weight;
  return std::log(2.0) - beta * (inserted.ground_energy() - absent.ground_energy()) +
         std::log(sum_b) - std::log(sum_a);
}

double relative_partition(const Morse& spec, double temperature, const TruncationPolicy& policy) {
  return std::exp(log_relative_partition(spec, temperature, policy));
}

double stage_log_partition(Stage stage, const PotentialSpec& spec, const ChemicalPotentials& hot,
                           const ChemicalPotentials& cold, DegeneracyWeighting weighting,
                           const TruncationPolicy& policy) {
  policy.validate();
  require_bose_trap(spec);
  const ChemicalPotentials& mu = pick(stage, hot, cold);
  const double beta = inverse_temperature(mu.temperature);
  const Spectrum spectrum(spec, barrier_of(stage));
  const bool inserted = spectrum.barrier() == Barrier::Inserted;
  const double w =
      inserted && weighting == DegeneracyWeighting::Weighted ? spectrum.degeneracy() : 1.0;
  return w * bose_log_product(Reduced(spectrum, beta), inserted ? mu.gap_after : mu.gap_before,
                              policy);
}

double internal_energy(Stage stage, const PotentialSpec& spec, const ChemicalPotentials& hot,
                       const ChemicalPotentials& cold, const TruncationPolicy& policy) {
  policy.validate();
  require_bose_trap(spec);
  const ChemicalPotentials& mu = pick(stage, hot, cold);
  const double beta = inverse_temperature(mu.temperature);
  const Spectrum spectrum(spec, barrier_of(stage));
  const double gap = spectrum.barrier() == Barrier::Inserted ? mu.gap_after : mu.gap_before;
  return bose_reduced_energy(Reduced(spectrum, beta), gap, policy) / beta;
}

double internal_energy(Stage stage, const Morse& spec, const BathPair& baths,
                       const TruncationPolicy& policy) {
  policy.validate();
  baths.validate();
  const double beta = inverse_temperature(is_hot(stage) ? baths.hot : baths.cold);
  const Spectrum spectrum(spec, barrier_of(stage));
  const BoltzmannSums sums = boltzmann_sums(spectrum, beta, policy, true);
  return spectrum.ground_energy() + sums.excess / sums.weight;
}

double canonical_log_partition(Stage stage, const Harmonic& spec, int particles,
                               const BathPair& baths, const TruncationPolicy& policy) {
  policy.validate();
  baths.validate();
  require_particles(particles);
  const double beta = inverse_temperature(is_hot(stage) ? baths.hot : baths.cold);
  const Spectrum spectrum(spec, barrier_of(stage));
  const double n = particles;
  const BoltzmannSums sums = boltzmann_sums(spectrum, n * beta, policy, false);
  return n * (std::log(static_cast<double>(spectrum.degeneracy())) -
              beta * spectrum.ground_energy()) +
         std::log(sums.weight);
}

double canonical_internal_energy(Stage stage, const Harmonic& spec, int particles,
                                 const BathPair& baths, const TruncationPolicy& policy) {
  policy.validate();
  baths.validate();
  require_particles(particles);
  const double beta = inverse_temperature(is_hot(stage) ? baths.hot : baths.cold);
  const Spectrum spectrum(spec, barrier_of(stage));
  const double n = particles;
  const BoltzmannSums sums = boltzmann_sums(spectrum, n * beta, policy, true);
  return n * (spectrum.ground_energy() + sums.excess / sums.weight);
}

double canonical_work_N(const PotentialSpec& spec, int particles, const BathPair& baths,
                        const TruncationPolicy& policy) {
  const auto* harmonic = std::get_if<Harmonic>(&spec);
  if (harmonic == nullptr) {
    throw Error(ErrorKind::IncompatibleEnsemble, "the canonical N-particle engine needs a harmonic trap");
  }
  const double hot = canonical_log_partition(Stage::B, *harmonic, particles, baths, policy) -
                     canonical_log_partition(Stage::A, *harmonic, particles, baths, policy);
  const double cold = canonical_log_partition(Stage::C, *harmonic, particles, baths, policy) -
                      canonical_log_partition(Stage::D, *harmonic, particles, baths, policy);
  return constants::boltzmann * (baths.hot * hot - baths.cold * cold);
}

}  // namespace szilard
