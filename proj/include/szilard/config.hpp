#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "szilard/engine.hpp"

namespace szilard {

enum class SweepEnsemble {
  Canonical,
  Bose,
  Morse,
  /// Chemical potentials over (T, N) with both mu modes side by side.
  ChemicalPotential,
  /// Even-parity levels of the harmonic trap with a finite delta barrier.
  Barrier,
};

std::string_view to_string(SweepEnsemble e) noexcept;

struct Axis {
  double min;
  double max;
  int points;
  bool log;

  /// Throws Error(Config) unless min < max, points >= 2 and, for log, min > 0.
  void validate(std::string_view name) const;
  std::vector<double> values() const;
};

/// One grid dimension: an explicit list or an axis.
struct Parameter {
  std::string name;
  std::vector<double> values;
  std::optional<Axis> axis;
};

struct SweepConfig {
  std::string target = "custom";
  SweepEnsemble ensemble = SweepEnsemble::Bose;
  /// Grid dimensions; the last one varies fastest.
  std::vector<Parameter> params;
  /// T_c = tc_ratio * T_h when set; otherwise T_c is a parameter.
  std::optional<double> tc_ratio;
  int k_max = 5;
  CycleOptions options{};
  std::string out_path;
  unsigned workers = 1;

  const Parameter* find(std::string_view name) const;
  bool has(std::string_view name) const { return find(name) != nullptr; }
  /// Replaces the values of `name`, appending the dimension if it is new.
  void set(std::string_view name, std::vector<double> values);
  void set_axis(std::string_view name, const Axis& axis);
  void erase(std::string_view name);
};

/// Names accepted by preset().
const std::vector<std::string>& preset_names();

/// Figure preset with the caption constants loaded. Throws Error(Config)
/// for an unknown name; "custom" yields an empty Bose configuration.
SweepConfig preset(std::string_view name);

/// Parses a number with optional unit suffix: "eV" (to J), "u" (to kg),
/// and "inf". Throws Error(Config).
double parse_quantity(std::string_view text);

/// Applies `key = value` lines under [sweep], [system], [numerics] and
/// [output] headers. '#' starts a comment. Unknown sections or keys are
/// errors. Throws Error(Config) with the source name and line number.
void apply_config_text(SweepConfig& config, std::string_view text,
                       std::string_view source = "config");

/// Applies one setting given as "section.key" or a bare key, which is
/// looked up in [system], then [numerics], [output] and [sweep].
void apply_setting(SweepConfig& config, std::string_view key, std::string_view value);

/// Canonical text form; apply_config_text on preset("custom") reproduces `config`.
std::string to_config_text(const SweepConfig& config);

/// Structural checks: required and allowed parameters per ensemble, value
/// ranges, axis invariants. Throws Error(Config) listing every problem.
void validate(const SweepConfig& config);

}  // namespace szilard
