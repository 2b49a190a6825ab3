#include "szilard/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "szilard/barrier.hpp"
#include "szilard/constants.hpp"
#include "szilard/errors.hpp"
#include "szilard/spectra.hpp"

#ifndef SZILARD_VERSION
#define SZILARD_VERSION "0.1.0"
#endif

namespace szilard {

namespace {

using Row = std::vector<std::string>;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string format_int(long long v) { return std::to_string(v); }

std::string format_count(std::int64_t v) { return v == kUnbounded ? "inf" : format_int(v); }

// Values of every grid dimension at one point.
class Point {
 public:
  Point(const SweepConfig& c, std::size_t index) : config_(c) {
    values_.resize(c.params.size());
    for (std::size_t i = c.params.size(); i-- > 0;) {
      const auto& v = c.params[i].values;
      values_[i] = v[index % v.size()];
      index /= v.size();
    }
  }

  double get(std::string_view name, double fallback = kNaN) const {
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (config_.params[i].name == name) return values_[i];
    }
    return fallback;
  }
  bool has(std::string_view name) const { return config_.has(name); }

  double cold(double hot) const {
    return config_.tc_ratio ? *config_.tc_ratio * hot : get("T_c");
  }

 private:
  const SweepConfig& config_;
  std::vector<double> values_;
};

// Header layout per ensemble: parameter columns, then output columns.
struct Layout {
  std::vector<std::string> params;
  std::vector<std::string> outputs;
};

Layout layout(SweepEnsemble e) {
  const std::vector<std::string> cycle{"W",    "W_over_kTc", "eta",  "carnot",
                                       "Q_hot", "Q_cold",    "Q_AB", "Q_BC",
                                       "Q_CD", "Q_DA",       "first_law_residual",
                                       "regime", "Z_hot",     "Z_cold"};
  switch (e) {
    case SweepEnsemble::Canonical: {
      Layout l{{"N", "mass", "omega", "T_h", "T_c"}, cycle};
      l.outputs.insert(l.outputs.begin() + 2, "W_over_NkTc");
      return l;
    }
    case SweepEnsemble::Bose: {
      Layout l{{"nu", "N", "mass", "omega", "Omega", "T_h", "T_c"}, cycle};
      for (const char* m : {"mu_b_hot", "mu_a_hot", "mu_b_cold", "mu_a_cold"}) {
        l.outputs.push_back(m);
      }
      return l;
    }
    case SweepEnsemble::Morse:
      return {{"mass", "D_eV", "frequency", "chi", "n_m", "T_h", "T_c"}, cycle};
    case SweepEnsemble::ChemicalPotential:
      return {{"nu", "N", "mass", "omega", "Omega", "T"},
              {"mu_b_approx", "mu_a_approx", "mu_b_exact", "mu_a_exact", "mu_b_approx_x1e23",
               "mu_a_approx_x1e23", "mu_b_exact_x1e23", "mu_a_exact_x1e23", "discrepancy_b",
               "discrepancy_a"}};
    case SweepEnsemble::Barrier:
      return {{"lambda", "k"}, {"epsilon", "odd_level", "residual"}};
  }
  return {};
}

std::vector<std::string> header_of(SweepEnsemble e) {
  const Layout l = layout(e);
  std::vector<std::string> h = l.params;
  h.insert(h.end(), l.outputs.begin(), l.outputs.end());
  h.push_back("error");
  return h;
}

// Parameter cells that can be filled before the physics runs.
struct Evaluated {
  std::vector<Row> rows;
  std::optional<PointError> error;
};

void append_cycle(Row& row, const CycleResult& r, const BathPair& baths, int particles,
                  bool per_particle) {
  const double kTc = constants::boltzmann * baths.cold;
  row.push_back(format_value(r.W));
  row.push_back(format_value(r.W / kTc));
  if (per_particle) row.push_back(format_value(r.W / (particles * kTc)));
  row.push_back(format_value(r.eta.value_or(kNaN)));
  row.push_back(format_value(carnot_bound(baths)));
  row.push_back(format_value(r.Q_hot));
  row.push_back(format_value(r.Q_cold));
  row.push_back(format_value(r.Q_AB));
  row.push_back(format_value(r.Q_BC));
  row.push_back(format_value(r.Q_CD));
  row.push_back(format_value(r.Q_DA));
  row.push_back(format_value(first_law_residual(r)));
  row.push_back(std::string(to_string(r.regime)));
  row.push_back(format_value(std::exp(r.log_Z_hot)));
  row.push_back(format_value(std::exp(r.log_Z_cold)));
}

PowerLaw power_law_at(const Point& p) {
  const double mass = p.get("mass");
  const double nu = p.get("nu", 2.0);
  if (p.has("Omega")) return power_law_from_prefactor(mass, nu, p.get("Omega"));
  return PowerLaw{mass, p.get("omega"), nu};
}

Morse morse_at(const Point& p) {
  const double mass = p.get("mass");
  const double frequency =
      p.has("frequency") ? p.get("frequency") : p.get("omega") / (2.0 * constants::pi);
  if (p.has("chi")) return Morse::from_anharmonicity(mass, frequency, p.get("chi"));
  return Morse::from_frequency(mass, frequency, p.get("D"));
}

int particles_at(const Point& p) { return static_cast<int>(p.get("N", 1.0)); }

void evaluate(const SweepConfig& c, const Point& p, Row& row, std::vector<Row>& rows) {
  switch (c.ensemble) {
    case SweepEnsemble::Canonical: {
      const int n = particles_at(p);
      const BathPair baths{p.get("T_h"), p.cold(p.get("T_h"))};
      row = {format_int(n), format_value(p.get("mass")), format_value(p.get("omega")),
             format_value(baths.hot), format_value(baths.cold)};
      const CycleResult r = run_cycle(Harmonic{p.get("mass"), p.get("omega")},
                                      EnsembleKind::CanonicalN, n, baths, c.options);
      append_cycle(row, r, baths, n, true);
      break;
    }
    case SweepEnsemble::Bose: {
      const int n = particles_at(p);
      const BathPair baths{p.get("T_h"), p.cold(p.get("T_h"))};
      row = {format_value(p.get("nu", 2.0)), format_int(n), format_value(p.get("mass"))};
      const PowerLaw trap = power_law_at(p);
      row.push_back(format_value(trap.omega));
      row.push_back(format_value(omega_prefactor(trap)));
      row.push_back(format_value(baths.hot));
      row.push_back(format_value(baths.cold));
      const CycleResult r = run_cycle(trap, EnsembleKind::GrandBose, n, baths, c.options);
      append_cycle(row, r, baths, n, false);
      row.push_back(format_value(r.mu_hot->before));
      row.push_back(format_value(r.mu_hot->after));
      row.push_back(format_value(r.mu_cold->before));
      row.push_back(format_value(r.mu_cold->after));
      break;
    }
    case SweepEnsemble::Morse: {
      const BathPair baths{p.get("T_h"), p.cold(p.get("T_h"))};
      const Morse trap = morse_at(p);
      row = {format_value(p.get("mass")), format_value(trap.depth / constants::electron_volt),
             format_value(trap.frequency), format_value(trap.anharmonicity())};
      row.push_back(format_count(morse_bound_count(trap)));
      row.push_back(format_value(baths.hot));
      row.push_back(format_value(baths.cold));
      const CycleResult r = run_cycle(trap, EnsembleKind::MorseSingle, 1, baths, c.options);
      append_cycle(row, r, baths, 1, false);
      break;
    }
    case SweepEnsemble::ChemicalPotential: {
      const int n = particles_at(p);
      const double t = p.get("T");
      row = {format_value(p.get("nu", 2.0)), format_int(n), format_value(p.get("mass"))};
      const PowerLaw trap = power_law_at(p);
      row.push_back(format_value(trap.omega));
      row.push_back(format_value(omega_prefactor(trap)));
      row.push_back(format_value(t));
      const auto approx =
          chemical_potentials(trap, n, t, MuMode::ClosedFormApproximation, c.options.policy);
      const auto exact = chemical_potentials(trap, n, t, MuMode::ExactSolve, c.options.policy);
      for (double v : {approx.before, approx.after, exact.before, exact.after}) {
        row.push_back(format_value(v));
      }
      for (double v : {approx.before, approx.after, exact.before, exact.after}) {
        row.push_back(format_value(v * 1e23));
      }
      row.push_back(format_value(approx.before - exact.before));
      row.push_back(format_value(approx.after - exact.after));
      break;
    }
    case SweepEnsemble::Barrier: {
      const double lambda = p.get("lambda");
      row = {format_value(lambda), ""};
      const BarrierStrength strength =
          std::isinf(lambda) ? BarrierStrength::infinite() : BarrierStrength(lambda);
      for (const auto& s : even_levels(strength, c.k_max)) {
        rows.push_back({format_value(lambda), format_int(s.branch), format_value(s.energy),
                        format_value(odd_level(s.branch)), format_value(s.residual), ""});
      }
      return;
    }
  }
  row.push_back("");
  rows.push_back(std::move(row));
}

Evaluated evaluate_point(const SweepConfig& c, std::size_t index) {
  Evaluated out;
  const Point p(c, index);
  Row row;
  try {
    evaluate(c, p, row, out.rows);
  } catch (const Error& e) {
    out.error = PointError{index, std::string(to_string(e.kind())), e.what()};
  } catch (const std::exception& e) {
    out.error = PointError{index, "internal", e.what()};
  }
  if (out.error) {
    out.rows.clear();
    const Layout l = layout(c.ensemble);
    const std::size_t width = l.params.size() + l.outputs.size();
    row.resize(l.params.size());
    // Parameters not reached before the failure are filled from the grid.
    for (std::size_t i = 0; i < l.params.size(); ++i) {
      if (!row[i].empty()) continue;
      const double v = p.get(l.params[i]);
      row[i] = std::isnan(v) ? "" : format_value(v);
    }
    while (row.size() < width) row.push_back(format_value(kNaN));
    for (std::size_t i = 0; i < l.outputs.size(); ++i) {
      if (l.outputs[i] == "regime") row[l.params.size() + i] = "";
    }
    row.push_back(out.error->kind);
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::vector<Evaluated> evaluate_all(const SweepConfig& c, unsigned workers) {
  const std::size_t n = grid_size(c);
  std::vector<Evaluated> results(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) results[i] = evaluate_point(c, i);
  };
  const unsigned count = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));
  if (count <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return results;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string format_value(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", value);
  return buf;
}

std::size_t grid_size(const SweepConfig& config) {
  std::size_t n = 1;
  for (const auto& p : config.params) n *= p.values.size();
  return n;
}

std::string SweepResult::csv() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

std::vector<std::string> SweepResult::text_column(std::string_view name) const {
  std::size_t idx = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) idx = i;
  }
  if (idx == header.size()) {
    throw Error(ErrorKind::InvalidArgument, "no column '" + std::string(name) + "'");
  }
  std::vector<std::string> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[idx]);
  return out;
}

std::vector<double> SweepResult::column(std::string_view name) const {
  std::vector<double> out;
  for (const auto& cell : text_column(name)) {
    out.push_back(cell.empty() ? kNaN : std::strtod(cell.c_str(), nullptr));
  }
  return out;
}

SweepResult run_sweep(const SweepConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  SweepResult result;
  result.header = header_of(config.ensemble);
  result.points = grid_size(config);
  result.workers = config.workers;
  for (auto& e : evaluate_all(config, config.workers)) {
    for (auto& r : e.rows) result.rows.push_back(std::move(r));
    if (e.error) result.errors.push_back(std::move(*e.error));
  }
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::string manifest_json(const SweepConfig& config, const SweepResult& result) {
  nlohmann::ordered_json j;
  j["version"] = SZILARD_VERSION;
  j["target"] = config.target;
  j["ensemble"] = std::string(to_string(config.ensemble));
  j["config"] = to_config_text(config);
  j["constants"] = {{"hbar", constants::hbar},
                    {"planck", constants::planck},
                    {"boltzmann", constants::boltzmann},
                    {"electron_volt", constants::electron_volt},
                    {"atomic_mass_unit", constants::atomic_mass_unit}};
  j["truncation"] = {{"rel_tol", config.options.policy.rel_tol},
                     {"max_terms", config.options.policy.max_terms}};
  j["workers"] = result.workers;
  j["finished_utc"] = utc_timestamp();
  j["wall_seconds"] = result.wall_seconds;
  j["points"] = result.points;
  j["rows"] = result.rows.size();
  j["failed_points"] = result.errors.size();
  auto errors = nlohmann::ordered_json::array();
  for (const auto& e : result.errors) {
    errors.push_back({{"index", e.index}, {"kind", e.kind}, {"message", e.message}});
  }
  j["errors"] = std::move(errors);
  return j.dump(2) + "\n";
}

SweepConfig config_from_manifest(std::string_view json) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Config, std::string("malformed manifest: ") + e.what());
  }
  if (!j.is_object() || !j.contains("config") || !j["config"].is_string()) {
    throw Error(ErrorKind::Config, "manifest has no 'config' text");
  }
  SweepConfig config = preset("custom");
  apply_config_text(config, j["config"].get<std::string>(), "manifest");
  return config;
}

void write_outputs(const SweepConfig& config, const SweepResult& result,
                   const std::string& path) {
  auto write = [](const std::string& file, const std::string& text) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot open '" + file + "' for writing");
    out << text;
    out.close();
    if (!out) throw Error(ErrorKind::Io, "failed writing '" + file + "'");
  };
  write(path, result.csv());
  write(path + ".manifest.json", manifest_json(config, result));
}

std::string ValidationReport::text() const {
  std::ostringstream out;
  const double pct = points ? 100.0 * static_cast<double>(failures) / static_cast<double>(points) : 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", pct);
  out << "grid points: " << points << "\n";
  out << "expected failures: " << failures << " (" << buf << "%)\n";
  for (const auto& [kind, entry] : by_kind) {
    out << "  " << kind << ": " << entry.first << " point(s), e.g. " << entry.second << "\n";
  }
  return out.str();
}

ValidationReport validate_sweep(const SweepConfig& config) {
  ValidationReport report;
  try {
    validate(config);
  } catch (const Error& e) {
    report.failures = 1;
    report.by_kind["config"] = {1, e.what()};
    return report;
  }
  report.points = grid_size(config);
  for (auto& e : evaluate_all(config, config.workers)) {
    if (!e.error) continue;
    ++report.failures;
    auto& entry = report.by_kind[e.error->kind];
    if (entry.first++ == 0) entry.second = e.error->message;
  }
  return report;
}

}  // namespace szilard
