#pragma once

// Scenario runner behind the `relamp` executable: flat JSON configs, named
// experiments, CSV tables and a JSON summary.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace relamp::cli {

enum class ExitCode : int { ok = 0, internal = 1, validation = 2, convergence = 3, consistency = 4 };

struct ConfigIssue {
  std::string parameter;
  std::string message;
};

struct ScenarioConfig {
  std::string scenario;  // spread | dispersion | currents-check | oscillator | boost
  std::string units;     // natural | electron
  std::uint64_t seed = 0;
  std::optional<std::string> out;

  // spread
  double sigma = 1.0;
  std::vector<double> times{0.0, 0.5, 1.3, 2.0};
  double r_out = 4.0;
  unsigned r_points = 81;
  double r_max = 20.0;
  unsigned panels = 16;
  unsigned panel_order = 16;

  // dispersion
  double k_min = 0.0;
  double k_max = 2.0;
  unsigned k_points = 201;

  // currents-check
  double carrier = 0.15;
  double width = 35.0;
  double length = 1024.0;
  unsigned points = 2048;
  std::vector<unsigned> orders{1, 2, 3};
  std::vector<double> dts{0.4, 0.2, 0.1, 0.05};
  unsigned sweep_order = 8;
  double sweep_dt = 0.05;
  double horizon = 10.0;
  double band = 0.5;

  // oscillator
  double gamma = 1e-3;
  unsigned levels = 6;
  unsigned basis = 48;
  unsigned quadrature_order = 0;

  // boost
  std::vector<double> betas{0.1, 0.5, 0.9};
  unsigned axis = 0;
  double rho = 1.0;
  std::vector<double> flux{0.0, 0.0, 0.0};

  /// Scenario-relevant keys with defaults filled in, sorted.
  nlohmann::json normalized() const;
  /// FNV-1a 64 of normalized().dump(), as 16 hex digits.
  std::string hash() const;
};

struct ValidationResult {
  std::optional<ScenarioConfig> config;
  std::vector<ConfigIssue> issues;
  std::vector<std::string> warnings;

  bool ok() const { return issues.empty(); }
};

/// Parses and range-checks a config; collects every problem rather than the
/// first. Whitespace-only text counts as an empty object.
ValidationResult validate_config(std::string_view text);

struct Column {
  std::string name;
  std::string unit;
};

struct ResultTable {
  std::string name;
  std::vector<Column> columns;
  std::vector<std::vector<double>> rows;

  /// Throws std::logic_error on ragged rows or non-finite values.
  void check() const;
};

struct RunResult {
  std::vector<ResultTable> tables;
  nlohmann::json summary;
  ExitCode status = ExitCode::ok;
};

/// Executes a validated config. Library errors propagate as exceptions.
RunResult run_scenario(const ScenarioConfig& config);

/// Shortest round-trip decimal form.
std::string format_number(double value);

/// RFC-4180 text: header "name [unit]" then rows, CRLF line endings.
std::string to_csv(const ResultTable& table);

/// Writes <dir>/<table>.csv for each table and <dir>/summary.json.
void write_outputs(const RunResult& result, const std::string& dir);

/// Maps a library exception to its exit status.
ExitCode exit_code_for(const std::exception& e);

}  // namespace relamp::cli
