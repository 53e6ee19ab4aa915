#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bmetro/error.hpp"
#include "bmetro/report/config.hpp"
#include "bmetro/report/dataset.hpp"
#include "bmetro/report/manifest.hpp"
#include "bmetro/report/svg.hpp"

namespace bmetro::report {

struct Output {
  Dataset data;
  std::optional<PlotSpec> plot;  // rendered when "svg" is among the formats
};

struct CommandOutput {
  std::vector<Output> outputs;
  std::string summary;  // human-readable digest printed by the CLI
  bool failed = false;  // e.g. a selftest check failed
};

/// Five-row summary: classical optimum, bound, ratio and the large-N
/// reference constants for omega, alpha, epsilon, Gamma, n_E.
CommandOutput cmd_table(const RunConfig& config);
/// Frequency strategies against the quadratic and linear bounds.
CommandOutput cmd_figure_frequency(const RunConfig& config);
/// Temperature strategies against the passive and general bounds.
CommandOutput cmd_figure_temperature(const RunConfig& config);
CommandOutput cmd_bound(const RunConfig& config);
/// Throws invalid_argument listing the available names on an unknown strategy.
CommandOutput cmd_strategy(const RunConfig& config);
/// Runs the built-in invariant checks.
CommandOutput cmd_selftest(const RunConfig& config);

std::vector<std::string> strategies_for(Parameter target);

struct RunResult {
  Manifest manifest;
  std::string manifest_path;
  std::vector<std::string> files;  // absolute or output-dir-relative paths written
  std::string summary;
  bool failed = false;
};

/// Validates the config, dispatches `command` ("table", "figure", "bound",
/// "strategy", "selftest"), writes <dir>/<command>-<timestamp>.<ext> for each
/// requested format, and records a manifest (<dir>/manifest.json plus a
/// per-run copy next to the outputs).
RunResult run_command(const std::string& command, const RunConfig& config);

struct ReplayResult {
  RunResult run;
  bool identical = false;             // every recorded hash reproduced
  std::vector<std::string> mismatches;
};

/// Re-runs the command recorded in a manifest and compares output hashes.
ReplayResult replay(const std::string& manifest_path);

/// Process exit code for a library error: 2 invalid, 3 infeasible, 4 numerical.
int exit_code_for(const Error& e);

}  // namespace bmetro::report
