#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>

#include "bmetro/types.hpp"

namespace bmetro::report {

struct TimeGrid {
  double t_min = 1e-3;
  double t_max = 10.0;
  int points = 200;
  bool log_spaced = true;
};

/// Everything a CLI run depends on. `to_map` / `from_map` round-trip it
/// through the flat key=value form used by config files and manifests.
struct RunConfig {
  Parameter target = Parameter::frequency;
  double gamma = 1.0;
  double n_env = 0.1;
  double photons = 5.0;
  TimeGrid grid;
  int cutoff = 0;                 // 0 selects the heuristic
  std::string output_dir = "out";
  std::set<std::string> formats{"csv", "json", "svg"};
  std::uint64_t seed = 20240601;
  std::string strategy;           // strategy name for `strategy`
  double time = 0.0;              // single evaluation time; 0 evaluates the grid
  std::string figure;             // "fre" or "temp" for `figure`

  /// Throws invalid_argument on out-of-range values.
  void validate() const;

  std::map<std::string, std::string> to_map() const;
  /// Applies recognised keys on top of *this; unknown keys are rejected.
  void apply(const std::map<std::string, std::string>& values);
};

/// Reads `key = value` lines; `#` starts a comment, blank lines are ignored.
std::map<std::string, std::string> read_config_file(const std::string& path);
std::map<std::string, std::string> parse_config_text(const std::string& text);

/// Default output directory: BMETRO_OUTPUT_DIR if set, else "out".
std::string default_output_dir();

/// Fig. 1 / Fig. 2 style default grids.
TimeGrid frequency_figure_grid();
TimeGrid temperature_figure_grid();

}  // namespace bmetro::report
