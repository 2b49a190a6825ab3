#include "szilard/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "szilard/constants.hpp"
#include "szilard/errors.hpp"

namespace szilard {

std::string_view to_string(SweepEnsemble e) noexcept {
  switch (e) {
    case SweepEnsemble::Canonical:
      return "canonical";
    case SweepEnsemble::Bose:
      return "bose";
    case SweepEnsemble::Morse:
      return "morse";
    case SweepEnsemble::ChemicalPotential:
      return "chemical-potential";
    case SweepEnsemble::Barrier:
      return "barrier";
  }
  return "unknown";
}

namespace {

[[noreturn]] void config_error(const std::string& message) {
  throw Error(ErrorKind::Config, message);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

SweepEnsemble parse_ensemble(std::string_view s) {
  for (auto e : {SweepEnsemble::Canonical, SweepEnsemble::Bose, SweepEnsemble::Morse,
                 SweepEnsemble::ChemicalPotential, SweepEnsemble::Barrier}) {
    if (s == to_string(e)) return e;
  }
  config_error("unknown ensemble '" + std::string(s) +
               "' (expected canonical, bose, morse, chemical-potential or barrier)");
}

bool parse_bool(std::string_view s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  config_error("expected a boolean, got '" + std::string(s) + "'");
}

long long parse_integer(std::string_view s) {
  const double v = parse_quantity(s);
  if (!std::isfinite(v) || v != std::floor(v) || std::fabs(v) > 9.0e15) {
    config_error("expected an integer, got '" + std::string(s) + "'");
  }
  return static_cast<long long>(v);
}

const std::vector<std::string>& grid_keys() {
  static const std::vector<std::string> keys{"mass", "omega", "Omega",  "nu", "N",      "T_h",
                                             "T_c",  "T",     "D",      "chi", "frequency",
                                             "lambda"};
  return keys;
}

bool is_grid_key(std::string_view key) {
  const auto& keys = grid_keys();
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

// Parameters that describe the same quantity; setting one drops the other.
std::vector<std::string_view> partners(std::string_view key) {
  if (key == "omega") return {"Omega", "frequency"};
  if (key == "Omega") return {"omega"};
  if (key == "frequency") return {"omega"};
  if (key == "D") return {"chi"};
  if (key == "chi") return {"D"};
  return {};
}

// "log(a, b, n)" / "linear(a, b, n)" or a comma-separated list.
void set_grid_value(SweepConfig& c, std::string_view key, std::string_view text) {
  text = trim(text);
  for (auto p : partners(key)) c.erase(p);
  if (key == "T_c") c.tc_ratio.reset();
  for (const char* fn : {"log", "linear"}) {
    const std::string_view name(fn);
    if (text.substr(0, name.size()) == name && text.size() > name.size() &&
        trim(text.substr(name.size())).front() == '(') {
      std::string_view inner = trim(text.substr(name.size()));
      if (inner.back() != ')') config_error("unterminated axis for '" + std::string(key) + "'");
      inner = inner.substr(1, inner.size() - 2);
      const auto parts = split(inner, ',');
      if (parts.size() != 3) {
        config_error("axis for '" + std::string(key) + "' needs (min, max, points)");
      }
      Axis axis{parse_quantity(parts[0]), parse_quantity(parts[1]),
                static_cast<int>(parse_integer(parts[2])), name == "log"};
      axis.validate(key);
      c.set_axis(key, axis);
      return;
    }
  }
  std::vector<double> values;
  for (auto part : split(text, ',')) values.push_back(parse_quantity(part));
  c.set(key, std::move(values));
}

enum class Section { Sweep, System, Numerics, Output };

bool apply_in_section(SweepConfig& c, Section section, std::string_view key,
                      std::string_view value) {
  switch (section) {
    case Section::Sweep:
      if (key == "target") {
        c.target = std::string(value);
      } else if (key == "ensemble") {
        c.ensemble = parse_ensemble(value);
      } else {
        return false;
      }
      return true;
    case Section::System:
      if (is_grid_key(key)) {
        set_grid_value(c, key, value);
      } else if (key == "tc_ratio") {
        c.tc_ratio = parse_quantity(value);
        c.erase("T_c");
      } else if (key == "k_max") {
        c.k_max = static_cast<int>(parse_integer(value));
      } else {
        return false;
      }
      return true;
    case Section::Numerics:
      if (key == "rel_tol") {
        c.options.policy.rel_tol = parse_quantity(value);
      } else if (key == "max_terms") {
        c.options.policy.max_terms = parse_integer(value);
      } else if (key == "mu_mode") {
        if (value == "exact") {
          c.options.mu_mode = MuMode::ExactSolve;
        } else if (value == "approx") {
          c.options.mu_mode = MuMode::ClosedFormApproximation;
        } else {
          config_error("mu_mode must be exact or approx, got '" + std::string(value) + "'");
        }
      } else if (key == "degeneracy") {
        if (value == "weighted") {
          c.options.weighting = DegeneracyWeighting::Weighted;
        } else if (value == "verbatim") {
          c.options.weighting = DegeneracyWeighting::Verbatim;
        } else {
          config_error("degeneracy must be weighted or verbatim, got '" + std::string(value) +
                       "'");
        }
      } else if (key == "eq38_literal") {
        c.options.eq38_literal = parse_bool(value);
      } else {
        return false;
      }
      return true;
    case Section::Output:
      if (key == "path") {
        c.out_path = std::string(value);
      } else if (key == "workers") {
        const long long w = parse_integer(value);
        if (w < 1 || w > 1024) config_error("workers must be in [1, 1024]");
        c.workers = static_cast<unsigned>(w);
      } else {
        return false;
      }
      return true;
  }
  return false;
}

std::optional<Section> parse_section(std::string_view name) {
  if (name == "sweep") return Section::Sweep;
  if (name == "system") return Section::System;
  if (name == "numerics") return Section::Numerics;
  if (name == "output") return Section::Output;
  return std::nullopt;
}

}  // namespace

void Axis::validate(std::string_view name) const {
  std::ostringstream msg;
  if (!(min < max) || !std::isfinite(min) || !std::isfinite(max)) {
    msg << "axis '" << name << "' needs finite min < max";
  } else if (points < 2) {
    msg << "axis '" << name << "' needs at least 2 points";
  } else if (log && !(min > 0.0)) {
    msg << "log axis '" << name << "' needs min > 0";
  } else {
    return;
  }
  config_error(msg.str());
}

std::vector<double> Axis::values() const {
  std::vector<double> out(static_cast<std::size_t>(points));
  const double last = points - 1;
  for (int i = 0; i < points; ++i) {
    if (i == 0) {
      out[i] = min;
    } else if (i == points - 1) {
      out[i] = max;
    } else if (log) {
      out[i] = std::exp(std::log(min) + (std::log(max) - std::log(min)) * (i / last));
    } else {
      out[i] = min + ((max - min) * i) / last;
    }
  }
  return out;
}

const Parameter* SweepConfig::find(std::string_view name) const {
  for (const auto& p : params) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

void SweepConfig::set(std::string_view name, std::vector<double> values) {
  for (auto& p : params) {
    if (p.name == name) {
      p.values = std::move(values);
      p.axis.reset();
      return;
    }
  }
  params.push_back(Parameter{std::string(name), std::move(values), std::nullopt});
}

void SweepConfig::set_axis(std::string_view name, const Axis& axis) {
  set(name, axis.values());
  for (auto& p : params) {
    if (p.name == name) p.axis = axis;
  }
}

void SweepConfig::erase(std::string_view name) {
  params.erase(std::remove_if(params.begin(), params.end(),
                              [&](const Parameter& p) { return p.name == name; }),
               params.end());
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"fig2", "fig3",       "fig4",  "fig5",
                                              "fig6", "fig7",       "fig8",  "fig9",
                                              "fig9-inset", "fig10", "fig11", "custom"};
  return names;
}

SweepConfig preset(std::string_view name) {
  SweepConfig c;
  c.target = std::string(name);
  const double mass = 19.11e-11;
  const double ev = constants::electron_volt;
  if (name == "fig2") {
    c.ensemble = SweepEnsemble::Canonical;
    c.set("mass", {mass});
    c.set("omega", {1e11});
    c.set("T_h", {200.0});
    c.set("T_c", {100.0});
    c.set_axis("N", Axis{1, 50, 50, false});
  } else if (name == "fig3") {
    c.ensemble = SweepEnsemble::Canonical;
    c.set("mass", {mass});
    c.set("T_h", {200.0});
    c.set("T_c", {100.0});
    c.set("N", {1, 2, 3});
    c.set_axis("omega", Axis{1e9, 1e14, 101, true});
  } else if (name == "fig4") {
    c.ensemble = SweepEnsemble::ChemicalPotential;
    c.set("mass", {mass});
    c.set("nu", {2.0});
    c.set("omega", {1e10});
    c.set_axis("N", Axis{1, 30, 30, false});
    c.set_axis("T", Axis{0.005, 1.0, 60, true});
  } else if (name == "fig5") {
    c.ensemble = SweepEnsemble::Bose;
    c.set("mass", {mass});
    c.set("nu", {2.0});
    c.set("omega", {1e10});
    c.set("N", {10, 20, 30});
    c.tc_ratio = 0.5;
    c.set_axis("T_h", Axis{0.005, 50.0, 100, true});
  } else if (name == "fig6") {
    c.ensemble = SweepEnsemble::Barrier;
    c.set("lambda", {0.0, 0.1, 1.0, 10.0, 100.0, 1e4, INFINITY});
    c.k_max = 5;
  } else if (name == "fig7") {
    c.ensemble = SweepEnsemble::Bose;
    c.set("mass", {mass});
    c.set("nu", {1.6, 2.0});
    c.set("N", {20});
    c.set("T_h", {20.0});
    c.set("T_c", {10.0});
    c.set_axis("Omega", Axis{1e-23, 1e-20, 61, true});
  } else if (name == "fig8") {
    c.ensemble = SweepEnsemble::Bose;
    c.set("mass", {mass});
    c.set("nu", {1.6, 2.0, 2.2, 2.6});
    c.set("N", {10, 20, 30});
    c.set("T_h", {2.0});
    c.set("T_c", {1.0});
    c.set_axis("Omega", Axis{1e-23, 1e-21, 61, true});
  } else if (name == "fig9") {
    c.ensemble = SweepEnsemble::Morse;
    c.set("mass", {mass});
    c.set("omega", {1e10});
    c.set("D", {8.7 * ev});
    c.tc_ratio = 0.5;
    c.set_axis("T_h", Axis{1e-3, 50.0, 81, true});
  } else if (name == "fig9-inset") {
    c.ensemble = SweepEnsemble::Morse;
    c.set("mass", {mass});
    c.set("omega", {1e10});
    c.set("T_h", {8.0});
    c.set("T_c", {4.0});
    c.set_axis("chi", Axis{0.0, 2.0 / 3.0, 61, false});
  } else if (name == "fig10" || name == "fig11") {
    c.ensemble = SweepEnsemble::Morse;
    c.set("mass", {1.1 * constants::atomic_mass_unit});
    c.set("D", {0.5 * ev, 1.0 * ev, 2.0 * ev, INFINITY});
    c.set("T_h", {50.0, 100.0, 200.0, 400.0});
    c.tc_ratio = 0.5;
    c.set_axis("frequency", Axis{1e11, 1e14, 61, true});
  } else if (name == "custom") {
    c.ensemble = SweepEnsemble::Bose;
  } else {
    std::string known;
    for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
    config_error("unknown preset '" + std::string(name) + "' (known: " + known + ")");
  }
  return c;
}

double parse_quantity(std::string_view text) {
  std::string_view s = trim(text);
  double scale = 1.0;
  if (s.size() > 2 && s.substr(s.size() - 2) == "eV") {
    scale = constants::electron_volt;
    s = trim(s.substr(0, s.size() - 2));
  } else if (s.size() > 1 && s.back() == 'u') {
    scale = constants::atomic_mass_unit;
    s = trim(s.substr(0, s.size() - 1));
  }
  if (s == "inf" || s == "+inf") return INFINITY;
  const std::string buf(s);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (buf.empty() || end != buf.c_str() + buf.size() || std::isnan(v) ||
      buf.find_first_of("xXpP") != std::string::npos || buf.find("inf") != std::string::npos ||
      buf.find("INF") != std::string::npos) {
    config_error("expected a number, got '" + std::string(trim(text)) + "'");
  }
  return v * scale;
}

void apply_config_text(SweepConfig& config, std::string_view text, std::string_view source) {
  std::optional<Section> section;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    auto where = [&] { return std::string(source) + ":" + std::to_string(line_no) + ": "; };
    if (line.front() == '[') {
      if (line.back() != ']') config_error(where() + "malformed section header");
      section = parse_section(trim(line.substr(1, line.size() - 2)));
      if (!section) config_error(where() + "unknown section " + std::string(line));
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) config_error(where() + "expected key = value");
    if (!section) config_error(where() + "setting outside any section");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    try {
      if (!apply_in_section(config, *section, key, value)) {
        config_error("unknown key '" + std::string(key) + "'");
      }
    } catch (const Error& e) {
      config_error(where() + e.what());
    }
    if (end == text.size()) break;
  }
}

void apply_setting(SweepConfig& config, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  const std::size_t dot = key.find('.');
  if (dot != std::string_view::npos) {
    const auto section = parse_section(key.substr(0, dot));
    if (!section) config_error("unknown section in '" + std::string(key) + "'");
    if (!apply_in_section(config, *section, key.substr(dot + 1), value)) {
      config_error("unknown key '" + std::string(key) + "'");
    }
    return;
  }
  for (auto s : {Section::System, Section::Numerics, Section::Output, Section::Sweep}) {
    if (apply_in_section(config, s, key, value)) return;
  }
  config_error("unknown key '" + std::string(key) + "'");
}

std::string to_config_text(const SweepConfig& c) {
  std::ostringstream out;
  out << "[sweep]\n";
  out << "target = " << c.target << "\n";
  out << "ensemble = " << to_string(c.ensemble) << "\n";
  out << "\n[system]\n";
  for (const auto& p : c.params) {
    out << p.name << " = ";
    if (p.axis) {
      out << (p.axis->log ? "log(" : "linear(") << format_number(p.axis->min) << ", "
          << format_number(p.axis->max) << ", " << p.axis->points << ")";
    } else {
      for (std::size_t i = 0; i < p.values.size(); ++i) {
        out << (i ? ", " : "") << format_number(p.values[i]);
      }
    }
    out << "\n";
  }
  if (c.tc_ratio) out << "tc_ratio = " << format_number(*c.tc_ratio) << "\n";
  out << "k_max = " << c.k_max << "\n";
  out << "\n[numerics]\n";
  out << "rel_tol = " << format_number(c.options.policy.rel_tol) << "\n";
  out << "max_terms = " << c.options.policy.max_terms << "\n";
  out << "mu_mode = " << (c.options.mu_mode == MuMode::ExactSolve ? "exact" : "approx") << "\n";
  out << "degeneracy = "
      << (c.options.weighting == DegeneracyWeighting::Weighted ? "weighted" : "verbatim") << "\n";
  out << "eq38_literal = " << (c.options.eq38_literal ? "true" : "false") << "\n";
  out << "\n[output]\n";
  if (!c.out_path.empty()) out << "path = " << c.out_path << "\n";
  out << "workers = " << c.workers << "\n";
  return out.str();
}

void validate(const SweepConfig& c) {
  std::vector<std::string> problems;
  auto require = [&](std::string_view name) {
    if (!c.has(name)) problems.push_back("missing parameter '" + std::string(name) + "'");
  };
  auto require_one = [&](std::string_view a, std::string_view b) {
    if (c.has(a) == c.has(b)) {
      problems.push_back("exactly one of '" + std::string(a) + "' and '" + std::string(b) +
                         "' must be set");
    }
  };
  auto require_temperatures = [&] {
    require("T_h");
    if (c.tc_ratio.has_value() == c.has("T_c")) {
      problems.push_back("exactly one of 'T_c' and 'tc_ratio' must be set");
    }
    if (c.tc_ratio && !(*c.tc_ratio > 0.0 && std::isfinite(*c.tc_ratio))) {
      problems.push_back("tc_ratio must be positive");
    }
  };

  std::vector<std::string> allowed;
  switch (c.ensemble) {
    case SweepEnsemble::Canonical:
      allowed = {"mass", "omega", "N", "T_h", "T_c"};
      require("mass");
      require("omega");
      require("N");
      require_temperatures();
      break;
    case SweepEnsemble::Bose:
      allowed = {"mass", "nu", "omega", "Omega", "N", "T_h", "T_c"};
      require("mass");
      require_one("omega", "Omega");
      require("N");
      require_temperatures();
      break;
    case SweepEnsemble::Morse:
      allowed = {"mass", "omega", "frequency", "D", "chi", "T_h", "T_c"};
      require("mass");
      require_one("omega", "frequency");
      require_one("D", "chi");
      require_temperatures();
      break;
    case SweepEnsemble::ChemicalPotential:
      allowed = {"mass", "nu", "omega", "Omega", "N", "T"};
      require("mass");
      require_one("omega", "Omega");
      require("N");
      require("T");
      break;
    case SweepEnsemble::Barrier:
      allowed = {"lambda"};
      require("lambda");
      if (c.k_max < 0) problems.push_back("k_max must be >= 0");
      break;
  }
  if (c.tc_ratio && (c.ensemble == SweepEnsemble::ChemicalPotential ||
                     c.ensemble == SweepEnsemble::Barrier)) {
    problems.push_back("tc_ratio does not apply to the " + std::string(to_string(c.ensemble)) +
                       " sweep");
  }

  for (const auto& p : c.params) {
    if (std::find(allowed.begin(), allowed.end(), p.name) == allowed.end()) {
      problems.push_back("parameter '" + p.name + "' does not apply to the " +
                         std::string(to_string(c.ensemble)) + " sweep");
      continue;
    }
    if (p.values.empty()) problems.push_back("parameter '" + p.name + "' has no values");
    if (p.axis) {
      try {
        p.axis->validate(p.name);
      } catch (const Error& e) {
        problems.push_back(e.what());
      }
    }
    for (double v : p.values) {
      std::ostringstream msg;
      if (p.name == "N") {
        if (!(v >= 1.0) || v != std::floor(v) || v > 1e9) {
          msg << "N must be a positive integer, got " << format_number(v);
        }
      } else if (p.name == "chi" || p.name == "lambda") {
        if (!(v >= 0.0)) msg << p.name << " must be >= 0, got " << format_number(v);
        if (p.name == "chi" && std::isinf(v)) msg << "chi must be finite";
      } else if (p.name == "D") {
        if (!(v > 0.0)) msg << "D must be positive (J, or with an eV suffix), got " << format_number(v);
      } else if (!(v > 0.0) || !std::isfinite(v)) {
        msg << p.name << " must be positive and finite, got " << format_number(v);
      }
      if (!msg.str().empty()) {
        problems.push_back(msg.str());
        break;
      }
    }
  }
  if (!(c.options.policy.rel_tol > 0.0 && c.options.policy.rel_tol < 1.0)) {
    problems.push_back("rel_tol must lie in (0, 1)");
  }
  if (c.options.policy.max_terms < 10) problems.push_back("max_terms must be >= 10");
  if (c.workers < 1) problems.push_back("workers must be >= 1");

  if (!problems.empty()) {
    std::string msg = "invalid sweep configuration:";
    for (const auto& p : problems) msg += "\n  - " + p;
    config_error(msg);
  }
}

}  // namespace szilard
