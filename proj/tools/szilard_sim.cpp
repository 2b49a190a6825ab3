#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "szilard/config.hpp"
#include "szilard/errors.hpp"
#include "szilard/sweep.hpp"

#ifndef SZILARD_VERSION
#define SZILARD_VERSION "0.1.0"
#endif

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitAllFailed = 2;
constexpr int kExitIo = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw szilard::Error(szilard::ErrorKind::Config, "cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool looks_like_json(const std::string& text) {
  for (char ch : text) {
    if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') continue;
    return ch == '{';
  }
  return false;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum Szilard engine cycle simulator: figure presets and custom sweeps to CSV"};
  app.set_version_flag("--version", std::string(SZILARD_VERSION));

  std::string target;
  std::string config_path;
  std::string out_path;
  unsigned workers = 0;
  double rel_tol = 0.0;
  long long max_terms = 0;
  bool eq38_literal = false;
  bool validate_only = false;
  bool print_config = false;
  std::string lambda, nu, particles, depth;
  std::vector<std::string> settings;

  std::string presets;
  for (const auto& n : szilard::preset_names()) presets += (presets.empty() ? "" : ", ") + n;
  app.add_option("target", target, "Preset or 'custom': " + presets)->required();
  app.add_option("--config", config_path,
                 "Config file (key = value with [sweep]/[system]/[numerics]/[output]) or a "
                 "run manifest to replay");
  app.add_option("--out", out_path, "CSV output path (default: <target>.csv)");
  app.add_option("--workers", workers, "Worker threads")->check(CLI::Range(1u, 1024u));
  app.add_option("--rel-tol", rel_tol, "Series truncation tolerance");
  app.add_option("--max-terms", max_terms, "Series term cap");
  app.add_flag("--eq38-literal", eq38_literal,
               "Morse efficiency denominator with k T_h Z[T_h] instead of its log");
  app.add_option("--lambda", lambda, "Barrier strengths, comma-separated (inf allowed)");
  app.add_option("--nu", nu, "Power-law exponents, comma-separated");
  app.add_option("--N", particles, "Particle numbers, comma-separated");
  app.add_option("--D", depth, "Morse depths, comma-separated (J, or eV suffix, or inf)");
  app.add_option("--set", settings, "Override any setting: [section.]key=value")
      ->take_all();
  app.add_flag("--validate", validate_only, "Dry-run the grid and report expected failures");
  app.add_flag("--print-config", print_config, "Print the resolved configuration and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  szilard::SweepConfig config;
  try {
    config = szilard::preset(target);
    if (!config_path.empty()) {
      const std::string text = read_file(config_path);
      if (looks_like_json(text)) {
        config = szilard::config_from_manifest(text);
      } else {
        szilard::apply_config_text(config, text, config_path);
      }
    }
    if (!lambda.empty()) szilard::apply_setting(config, "system.lambda", lambda);
    if (!nu.empty()) szilard::apply_setting(config, "system.nu", nu);
    if (!particles.empty()) szilard::apply_setting(config, "system.N", particles);
    if (!depth.empty()) szilard::apply_setting(config, "system.D", depth);
    if (workers > 0) config.workers = workers;
    if (rel_tol > 0.0) config.options.policy.rel_tol = rel_tol;
    if (max_terms > 0) config.options.policy.max_terms = max_terms;
    if (eq38_literal) config.options.eq38_literal = true;
    for (const auto& s : settings) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) {
        throw szilard::Error(szilard::ErrorKind::Config, "--set expects key=value, got '" + s + "'");
      }
      szilard::apply_setting(config, s.substr(0, eq), s.substr(eq + 1));
    }
    if (!out_path.empty()) config.out_path = out_path;
    if (config.out_path.empty()) config.out_path = config.target + ".csv";

    if (print_config) {
      std::cout << szilard::to_config_text(config);
      return kExitOk;
    }
    if (validate_only) {
      const auto report = szilard::validate_sweep(config);
      std::cout << report.text();
      return kExitOk;
    }
    szilard::validate(config);
  } catch (const szilard::Error& e) {
    std::cerr << "szilard-sim: " << e.what() << "\n";
    return e.kind() == szilard::ErrorKind::Io ? kExitIo : kExitConfig;
  }

  try {
    const auto result = szilard::run_sweep(config);
    szilard::write_outputs(config, result, config.out_path);
    std::cerr << "szilard-sim: " << result.points << " point(s), " << result.errors.size()
              << " failed, " << result.rows.size() << " row(s) written to " << config.out_path
              << "\n";
    if (result.points > 0 && result.errors.size() == result.points) {
      std::cerr << "szilard-sim: every grid point failed; first error: "
                << result.errors.front().message << "\n";
      return kExitAllFailed;
    }
  } catch (const szilard::Error& e) {
    std::cerr << "szilard-sim: " << e.what() << "\n";
    return e.kind() == szilard::ErrorKind::Io ? kExitIo : kExitConfig;
  }
  return kExitOk;
}
