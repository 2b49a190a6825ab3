#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "szilard/barrier.hpp"
#include "szilard/config.hpp"
#include "szilard/constants.hpp"
#include "szilard/engine.hpp"
#include "szilard/ensembles.hpp"
#include "szilard/errors.hpp"
#include "szilard/spectra.hpp"
#include "szilard/sweep.hpp"

using namespace szilard;
namespace c = szilard::constants;

namespace {

constexpr double kMass = 19.11e-11;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

bool is_cycle_preset(const std::string& name) {
  const SweepEnsemble e = preset(name).ensemble;
  return e == SweepEnsemble::Canonical || e == SweepEnsemble::Bose || e == SweepEnsemble::Morse;
}

// Memoised preset runs shared by several checks.
const SweepResult& preset_run(const std::string& name) {
  static std::map<std::string, SweepResult> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, run_sweep(preset(name))).first;
  return it->second;
}

// -- independent brute-force partition sums in long double -------------------

long double bose_log_z(const Spectrum& s, long double mu, long double beta) {
  const long double g = s.degeneracy();
  long double sum = 0;
  const long double e1 = s.energy(1);
  for (std::int64_t n = 1;; ++n) {
    const long double e = s.energy(n);
    sum -= g * std::log1p(-std::exp(-beta * (e - mu)));
    if (beta * (e - e1) > 90.0L) break;
  }
  return sum;
}

long double boltzmann_log_z(const Spectrum& s, long double beta) {
  const long double g = s.degeneracy();
  const long double e1 = s.energy(1);
  long double sum = 0;
  for (std::int64_t n = 1; n <= s.last_index(); ++n) {
    const long double x = beta * (s.energy(n) - e1);
    if (x > 90.0L) break;
    sum += std::exp(-x);
  }
  return std::log(g * sum) - beta * e1;
}

// -- checks --------------------------------------------------------------------

Outcome power_law_harmonic_limit() {
  double worst_omega = 0;
  double worst_level = 0;
  for (double omega : {1e6, 1e9, 1e10, 1e11, 1e14}) {
    const PowerLaw p{kMass, omega, 2.0};
    worst_omega = std::max(worst_omega, std::fabs(omega_prefactor(p) / (c::hbar * omega) - 1));
    const Spectrum s(p, Barrier::Absent);
    for (std::int64_t n = 1; n <= 1000; ++n) {
      const double expected = (n + 0.5) * c::hbar * omega;
      worst_level = std::max(worst_level, std::fabs(s.level(n).energy / expected - 1));
    }
  }
  return {worst_omega <= 1e-12 && worst_level <= 1e-12,
          "max rel err Omega(2) " + fmt("%.1e", worst_omega) + ", E_n " + fmt("%.1e", worst_level)};
}

Outcome barrier_asymptotics() {
  const int k_max = 10;
  double worst_end = 0;
  for (const auto& s : even_levels(BarrierStrength(0.0), k_max)) {
    worst_end = std::max(worst_end, std::fabs(s.energy - (0.5 + 2 * s.branch)));
  }
  for (const auto& s : even_levels(BarrierStrength::infinite(), k_max)) {
    worst_end = std::max(worst_end, std::fabs(s.energy - (1.5 + 2 * s.branch)));
  }
  const std::vector<double> grid{0.0, 1.0, 10.0, 100.0, 1e4};
  std::vector<std::vector<EvenLevelSolution>> roots;
  for (double l : grid) roots.push_back(even_levels(BarrierStrength(l), k_max));
  roots.push_back(even_levels(BarrierStrength::infinite(), k_max));
  bool monotone = true;
  bool inside = true;
  for (int k = 0; k <= k_max; ++k) {
    for (std::size_t i = 1; i < roots.size(); ++i) {
      monotone = monotone && roots[i][k].energy >= roots[i - 1][k].energy;
      inside = inside && roots[i][k].energy >= 0.5 + 2 * k - 1e-10 &&
               roots[i][k].energy <= 1.5 + 2 * k + 1e-10;
    }
  }
  return {worst_end <= 1e-10 && monotone && inside,
          "endpoint err " + fmt("%.1e", worst_end) + ", monotone over {0,1,10,1e2,1e4,inf}: " +
              (monotone ? "yes" : "no") + ", k <= 10"};
}

Outcome morse_zero_temperature() {
  const Morse m = Morse::from_frequency(kMass, 1e10 / (2 * c::pi), 8.7 * c::electron_volt);
  const double e1 = Spectrum(m, Barrier::Absent).ground_energy();
  double worst = 0;
  double min_ratio = INFINITY;
  for (double th : {1e-3, 5e-4, 2e-4}) {
    const BathPair baths{th, 0.5 * th};
    min_ratio = std::min(min_ratio, e1 / (c::boltzmann * baths.cold));
    const auto r = run_cycle(m, EnsembleKind::MorseSingle, 1, baths);
    worst = std::max(worst, std::fabs(r.W / (c::boltzmann * baths.cold) - std::log(2.0)));
  }
  const auto& fig9 = preset_run("fig9");
  const double lowest = fig9.column("W_over_kTc").front();
  worst = std::max(worst, std::fabs(lowest - std::log(2.0)));
  return {min_ratio > 40 && worst <= 1e-3,
          "D = 8.7 eV, T_h <= 1 mK, beta_c E_1 >= " + fmt("%.0f", min_ratio) +
              ", max |W/kTc - log 2| " + fmt("%.1e", worst)};
}

Outcome morse_harmonic_limit() {
  const double f = 1e10 / (2 * c::pi);
  const Morse m = Morse::from_anharmonicity(kMass, f, 0.0);
  double worst = 0;
  double min_bhv = INFINITY;
  for (double th : {0.002, 0.003, 0.005}) {
    const BathPair baths{th, 0.5 * th};
    min_bhv = std::min(min_bhv, c::planck * f / (c::boltzmann * th));
    const auto r = run_cycle(m, EnsembleKind::MorseSingle, 1, baths);
    const double expected = c::boltzmann * (baths.hot - baths.cold) * std::log(2.0);
    worst = std::max(worst, std::fabs(r.W / expected - 1));
  }
  return {worst <= 1e-3, "chi = 0, beta_h h nu >= " + fmt("%.1f", min_bhv) +
                             ", max rel err " + fmt("%.1e", worst)};
}

Outcome carnot_ceiling() {
  std::size_t engine_points = 0;
  std::size_t violations = 0;
  double max_ratio = 0;
  for (const char* name : {"fig8", "fig11"}) {
    const auto& r = preset_run(name);
    const auto eta = r.column("eta");
    const auto carnot = r.column("carnot");
    const auto regime = r.text_column("regime");
    for (std::size_t i = 0; i < eta.size(); ++i) {
      if (regime[i] != "engine") continue;
      ++engine_points;
      if (!(eta[i] <= carnot[i] + 1e-9)) ++violations;
      max_ratio = std::max(max_ratio, eta[i] / carnot[i]);
    }
  }
  return {engine_points > 0 && violations == 0,
          std::to_string(engine_points) + " engine points, " + std::to_string(violations) +
              " violations, max eta/carnot " + fmt("%.9f", max_ratio)};
}

Outcome internal_energy_oracle() {
  double worst_bose = 0;
  double worst_morse = 0;
  const long double kb = c::boltzmann;
  // Bose gas, N = 20, harmonic trap: 5 temperatures x 5 frequencies, all four stages.
  for (double t : {0.05, 0.2, 1.0, 5.0, 20.0}) {
    for (double omega : {1e9, 3e9, 1e10, 3e10, 1e11}) {
      const Harmonic h{kMass, omega};
      const BathPair baths{t, 0.5 * t};
      const auto hot = chemical_potentials(h, 20, baths.hot, MuMode::ExactSolve);
      const auto cold = chemical_potentials(h, 20, baths.cold, MuMode::ExactSolve);
      for (Stage st : {Stage::A, Stage::B, Stage::C, Stage::D}) {
        const auto& mu = is_hot(st) ? hot : cold;
        const Spectrum s(h, barrier_of(st));
        const long double m = barrier_of(st) == Barrier::Inserted ? mu.after : mu.before;
        const long double beta = 1.0L / (kb * mu.temperature);
        const long double d = 1e-6L * beta;
        const long double fd = -(bose_log_z(s, m, beta + d) - bose_log_z(s, m, beta - d)) / (2 * d);
        const double u = internal_energy(st, h, hot, cold);
        worst_bose = std::max(worst_bose, static_cast<double>(std::fabs(u / fd - 1.0L)));
      }
    }
  }
  // Morse, m = 1.1 u, D = 1 eV: 5 temperatures x 5 frequencies, all four stages.
  for (double t : {20.0, 50.0, 100.0, 200.0, 400.0}) {
    for (double f : {1e11, 3e11, 1e12, 3e12, 1e13}) {
      const Morse m = Morse::from_frequency(1.1 * c::atomic_mass_unit, f, c::electron_volt);
      const BathPair baths{t, 0.5 * t};
      for (Stage st : {Stage::A, Stage::B, Stage::C, Stage::D}) {
        const Spectrum s(m, barrier_of(st));
        const long double beta = 1.0L / (kb * (is_hot(st) ? baths.hot : baths.cold));
        const long double d = 1e-6L * beta;
        const long double fd = -(boltzmann_log_z(s, beta + d) - boltzmann_log_z(s, beta - d)) / (2 * d);
        const double u = internal_energy(st, m, baths);
        worst_morse = std::max(worst_morse, static_cast<double>(std::fabs(u / fd - 1.0L)));
      }
    }
  }
  return {worst_bose <= 1e-6 && worst_morse <= 1e-6,
          "5x5 (T, omega) grids, 4 stages: max rel err Bose " + fmt("%.1e", worst_bose) +
              ", Morse " + fmt("%.1e", worst_morse)};
}

Outcome chemical_potential_oracle() {
  const SweepConfig config = preset("fig4");
  const auto& r = preset_run("fig4");
  write_outputs(config, r, "acceptance_fig4_mu.csv");
  const auto temperature = r.column("T");
  const auto particles = r.column("N");
  const auto mass = r.column("mass");
  const auto omega = r.column("omega");
  const auto mu_b = r.column("mu_b_exact");
  const auto mu_a = r.column("mu_a_exact");
  const auto disc_b = r.column("discrepancy_b");
  const auto disc_a = r.column("discrepancy_a");
  double worst_n = 0;
  for (std::size_t i = 0; i < temperature.size(); ++i) {
    const Harmonic h{mass[i], omega[i]};
    const double n = particles[i];
    worst_n = std::max(worst_n, std::fabs(occupation_sum(h, Barrier::Absent, mu_b[i], temperature[i]) / n - 1));
    worst_n = std::max(worst_n, std::fabs(occupation_sum(h, Barrier::Inserted, mu_a[i], temperature[i]) / n - 1));
  }
  // Rows run over T (ascending) fastest within each N.
  std::size_t breaks = 0;
  double max_disc = 0;
  double min_disc = INFINITY;
  for (std::size_t i = 1; i < temperature.size(); ++i) {
    max_disc = std::max({max_disc, disc_b[i], disc_a[i]});
    min_disc = std::min({min_disc, disc_b[i], disc_a[i]});
    if (particles[i] != particles[i - 1]) continue;
    const double tol = 1e-12;
    if (disc_b[i - 1] > disc_b[i] * (1 + tol) + 1e-300) ++breaks;
    if (disc_a[i - 1] > disc_a[i] * (1 + tol) + 1e-300) ++breaks;
  }
  return {worst_n <= 1e-10 && breaks == 0,
          std::to_string(temperature.size()) + " (T, N) points: max |N_occ/N - 1| " +
              fmt("%.1e", worst_n) + "; mu_approx - mu_exact in [" + fmt("%.2e", min_disc) +
              ", " + fmt("%.2e", max_disc) + "] J, " + std::to_string(breaks) +
              " monotonicity breaks (logged to acceptance_fig4_mu.csv)"};
}

Outcome first_law_closure() {
  std::size_t runs = 0;
  std::size_t bad = 0;
  double worst = 0;
  for (const auto& name : preset_names()) {
    if (name == "custom" || !is_cycle_preset(name)) continue;
    const auto& r = preset_run(name);
    const auto residual = r.column("first_law_residual");
    const auto error = r.text_column("error");
    for (std::size_t i = 0; i < residual.size(); ++i) {
      if (!error[i].empty()) continue;
      ++runs;
      worst = std::max(worst, residual[i]);
      if (!(residual[i] <= 1e-10)) ++bad;
    }
  }
  return {runs > 0 && bad == 0, std::to_string(runs) + " cycle runs over all presets, max residual " +
                                    fmt("%.1e", worst)};
}

Outcome high_temperature_idling() {
  const auto& r = preset_run("fig5");
  const auto th = r.column("T_h");
  const auto n = r.column("N");
  const auto z = r.column("Z_hot");
  const auto w = r.column("W_over_kTc");
  const double top = *std::max_element(th.begin(), th.end());
  std::string detail = "T_h = " + fmt("%g", top) + " K:";
  bool ok = true;
  int seen = 0;
  for (std::size_t i = 0; i < th.size(); ++i) {
    if (th[i] != top) continue;
    ++seen;
    ok = ok && std::fabs(z[i] - 1) < 1e-3 && std::fabs(w[i]) < 1e-3;
    detail += " N=" + fmt("%.0f", n[i]) + " |Z-1| " + fmt("%.1e", std::fabs(z[i] - 1)) +
              " |W/kTc| " + fmt("%.1e", std::fabs(w[i]));
  }
  return {ok && seen == 3, detail};
}

Outcome fig8_reproduction() {
  const auto start = std::chrono::steady_clock::now();
  SweepConfig config = preset("fig8");
  config.workers = 1;
  const auto r = run_sweep(config);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto nu = r.column("nu");
  const auto n = r.column("N");
  const auto eta = r.column("eta");
  const std::size_t omegas = config.find("Omega")->values.size();
  const std::size_t ns = config.find("N")->values.size();
  const std::size_t nus = config.find("nu")->values.size();
  auto at = [&](std::size_t inu, std::size_t in, std::size_t io) {
    return eta[(inu * ns + in) * omegas + io];
  };
  // Part 1: eta grows with N at every Omega.
  std::size_t grow_breaks = 0;
  for (std::size_t inu = 0; inu < nus; ++inu) {
    for (std::size_t io = 0; io < omegas; ++io) {
      for (std::size_t in = 1; in < ns; ++in) {
        if (!(at(inu, in, io) > at(inu, in - 1, io))) ++grow_breaks;
      }
    }
  }
  // Part 2: past its peak, eta falls with Omega and ends near zero.
  std::size_t curves_falling = 0;
  double worst_tail = 0;
  for (std::size_t inu = 0; inu < nus; ++inu) {
    for (std::size_t in = 0; in < ns; ++in) {
      double peak = -INFINITY;
      std::size_t ipeak = 0;
      for (std::size_t io = 0; io < omegas; ++io) {
        if (at(inu, in, io) > peak) {
          peak = at(inu, in, io);
          ipeak = io;
        }
      }
      bool falls = ipeak + 1 < omegas;
      for (std::size_t io = ipeak + 1; io < omegas; ++io) {
        falls = falls && at(inu, in, io) <= at(inu, in, io - 1);
      }
      const double tail = at(inu, in, omegas - 1) / peak;
      worst_tail = std::max(worst_tail, tail);
      if (falls && tail <= 0.1) ++curves_falling;
    }
  }
  (void)nu;
  (void)n;
  const bool grows = grow_breaks == 0;
  const bool falls = curves_falling == nus * ns;
  return {grows && falls && seconds < 60,
          std::string("eta rises with N: ") + (grows ? "yes" : "no (" + std::to_string(grow_breaks) + " breaks)") +
              "; eta falls toward 0 as Omega grows: " +
              (falls ? "yes" : "no (" + std::to_string(nus * ns - curves_falling) + "/" +
                                   std::to_string(nus * ns) + " curves saturate, eta(Omega_max)/peak up to " +
                                   fmt("%.3f", worst_tail) + ")") +
              "; grid " + std::to_string(r.points) + " points in " + fmt("%.2f", seconds) + " s"};
}

Outcome determinism() {
  std::size_t presets = 0;
  std::size_t mismatches = 0;
  for (const auto& name : preset_names()) {
    if (name == "custom") continue;
    SweepConfig config = preset(name);
    std::string reference;
    for (unsigned workers : {1u, 3u, 8u, 1u}) {
      config.workers = workers;
      const std::string csv = run_sweep(config).csv();
      if (reference.empty()) {
        reference = csv;
      } else if (csv != reference) {
        ++mismatches;
      }
    }
    ++presets;
  }
  return {mismatches == 0, std::to_string(presets) + " presets x workers {1, 3, 8, 1}: " +
                               std::to_string(mismatches) + " byte mismatches"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> checks{
      {"power-law spectrum reduces to the harmonic ladder at nu = 2", power_law_harmonic_limit},
      {"barrier solver endpoints and monotone migration", barrier_asymptotics},
      {"zero-temperature Morse work is kT_c log 2", morse_zero_temperature},
      {"harmonic-limit Morse work is k (T_h - T_c) log 2", morse_harmonic_limit},
      {"Carnot ceiling on the fig8 and fig11 grids", carnot_ceiling},
      {"internal energies match -d log Z / d beta", internal_energy_oracle},
      {"exact chemical potential recovers N; approximation gap shrinks as T -> 0",
       chemical_potential_oracle},
      {"first-law closure on every preset run", first_law_closure},
      {"Bose gas idles at the top of the fig5 range", high_temperature_idling},
      {"fig8 efficiency trends", fig8_reproduction},
      {"byte-identical CSV regardless of worker count", determinism},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, check] : checks) {
    ++index;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu passed\n", static_cast<int>(checks.size()) - failed, checks.size());
  return failed == 0 ? 0 : 1;
}
