#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "szilard/config.hpp"

namespace szilard {

struct PointError {
  std::size_t index;  // grid point, in grid order
  std::string kind;   // to_string(ErrorKind)
  std::string message;
};

struct SweepResult {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<PointError> errors;
  std::size_t points = 0;
  unsigned workers = 1;
  double wall_seconds = 0.0;

  /// Header plus rows, comma-separated, LF line endings.
  std::string csv() const;
  /// Column `name` parsed as numbers; empty cells and "nan" give NaN.
  /// Throws Error(InvalidArgument) for an unknown column.
  std::vector<double> column(std::string_view name) const;
  std::vector<std::string> text_column(std::string_view name) const;
};

/// Number of grid points (product of parameter list lengths).
std::size_t grid_size(const SweepConfig& config);

/// Fixed-width scientific formatting used for every CSV number.
std::string format_value(double value);

/// Evaluates every grid point on `config.workers` threads. Rows come out in
/// grid order with the last parameter varying fastest. Failed points get a
/// row with NaN outputs and the error kind in the `error` column.
/// Throws Error(Config) if the configuration is invalid.
SweepResult run_sweep(const SweepConfig& config);

/// JSON run record: resolved configuration, constants, truncation policy,
/// version, wall clock, worker count and per-point errors.
std::string manifest_json(const SweepConfig& config, const SweepResult& result);

/// Configuration stored in a manifest; rerunning it reproduces the CSV.
/// Throws Error(Config) on malformed input.
SweepConfig config_from_manifest(std::string_view json);

/// Writes `path` and `path`.manifest.json. Throws Error(Io).
void write_outputs(const SweepConfig& config, const SweepResult& result, const std::string& path);

struct ValidationReport {
  std::size_t points = 0;
  std::size_t failures = 0;
  /// Failure count and first message per error kind.
  std::map<std::string, std::pair<std::size_t, std::string>> by_kind;

  std::string text() const;
};

/// Dry run over the whole grid without writing anything. Configuration
/// errors are reported as a single "config" entry instead of thrown.
ValidationReport validate_sweep(const SweepConfig& config);

}  // namespace szilard
