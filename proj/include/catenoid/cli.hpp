#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "catenoid/mode_ode.hpp"
#include "catenoid/spectrum.hpp"

namespace catenoid::cli {

enum class Format { Json, Csv };

Format parse_format(std::string_view s);

/// Parses "0..5", "0,1,3" or a mix such as "0..2,7" into sorted unique
/// nonnegative orders. Throws std::invalid_argument on malformed input.
std::vector<int> parse_modes(std::string_view s);

struct RunConfig {
  double root_tol = 1e-12;
  double step_tol = 1e-12;
  double bisect_tol = 1e-12;
  double nullity_tol = 1e-8;
  int n_scan = 256;
  int oracle_n = 512;
  std::vector<int> modes{0, 1};
  Format format = Format::Json;
  std::optional<std::string> output_path;
  bool skip_oracle = false;
  bool flip_potential = false;  // fault injection for the verification suite

  /// Throws std::invalid_argument when a tolerance is not positive,
  /// n_scan < 32 or oracle_n < 64.
  void validate() const;
  SolverSettings solver() const;
};

struct CommandOutput {
  std::string text;
  int exit_code = 0;
};

CommandOutput cmd_constants(const RunConfig& config);

/// Exit code 1 unless index == 4 and nullity == 2.
CommandOutput cmd_index(const RunConfig& config);

struct ScanRequest {
  int m = 0;
  Parity parity = Parity::Even;
  double lambda_min = 0.0;
  double lambda_max = 3.0;
  int n = 100;
};

/// Mismatch table on n equally spaced λ in [lambda_min, lambda_max].
/// Throws std::domain_error unless 0 <= lambda_min < lambda_max and n >= 2.
CommandOutput cmd_scan(const RunConfig& config, const ScanRequest& request);

struct EigenfunctionRequest {
  int m = 0;
  Parity parity = Parity::Even;
  int which = 0;
  int samples = 201;
};

/// Throws std::out_of_range when `which` names no located eigenvalue.
CommandOutput cmd_eigenfunction(const RunConfig& config, const EigenfunctionRequest& request);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Cross-module invariant suite. Deterministic for a fixed config.
std::vector<CheckResult> run_verification(const RunConfig& config);

/// Exit code 1 when any check fails.
CommandOutput cmd_verify(const RunConfig& config);

}  // namespace catenoid::cli
