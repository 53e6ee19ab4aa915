// bmetro: tables, figure data and bound/strategy evaluations for single-mode
// metrology under thermal loss.
//
// Settings are resolved in this order, later entries winning:
//   built-in defaults < figure defaults < --config file < command-line flags

#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "bmetro/report/commands.hpp"

namespace {

using bmetro::report::RunConfig;

struct Flags {
  std::string config_file;
  std::string target;
  double gamma = 0, n_env = 0, photons = 0, t_min = 0, t_max = 0, time = 0;
  int points = 0, cutoff = 0;
  bool linear_grid = false;
  std::string output_dir, formats, name;
  std::uint64_t seed = 0;
};

void add_run_options(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_file, "Key = value config file")->check(CLI::ExistingFile);
  cmd->add_option("--target", f.target, "frequency|displacement|squeezing|loss|temperature");
  cmd->add_option("--gamma", f.gamma, "Loss rate Gamma");
  cmd->add_option("--n-env", f.n_env, "Thermal occupation of the environment");
  cmd->add_option("--photons", f.photons, "Mean photon number N of the probe");
  cmd->add_option("--t-min", f.t_min, "Smallest time on the grid [1/gamma]");
  cmd->add_option("--t-max", f.t_max, "Largest time on the grid [1/gamma]");
  cmd->add_option("--points", f.points, "Number of grid points");
  cmd->add_flag("--linear-grid", f.linear_grid, "Linearly spaced grid instead of log");
  cmd->add_option("--cutoff", f.cutoff, "Fock cutoff override (0 = automatic)");
  cmd->add_option("--output-dir", f.output_dir, "Output directory");
  cmd->add_option("--formats", f.formats, "Comma-separated subset of csv,json,svg");
  cmd->add_option("--seed", f.seed, "Recorded seed");
  cmd->add_option("--time", f.time, "Evaluate at a single time [1/gamma]");
}

// Overrides only the flags given on the command line.
std::map<std::string, std::string> flag_values(const CLI::App* cmd, const Flags& f) {
  std::map<std::string, std::string> m;
  auto set = [&](const char* opt, const char* key, std::string value) {
    const CLI::Option* o = cmd->get_option_no_throw(opt);
    if (o != nullptr && o->count() > 0) m[key] = std::move(value);
  };
  auto num = [](double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
  };
  set("--target", "target", f.target);
  set("--gamma", "gamma", num(f.gamma));
  set("--n-env", "n_env", num(f.n_env));
  set("--photons", "photons", num(f.photons));
  set("--t-min", "t_min", num(f.t_min));
  set("--t-max", "t_max", num(f.t_max));
  set("--points", "points", std::to_string(f.points));
  set("--linear-grid", "log_grid", "false");
  set("--cutoff", "cutoff", std::to_string(f.cutoff));
  set("--output-dir", "output_dir", f.output_dir);
  set("--formats", "formats", f.formats);
  set("--seed", "seed", std::to_string(f.seed));
  set("--time", "time", num(f.time));
  set("--name", "strategy", f.name);
  return m;
}

RunConfig resolve(const CLI::App* cmd, const Flags& f, const std::string& figure) {
  RunConfig c;
  c.output_dir = bmetro::report::default_output_dir();
  if (figure == "fre") {
    c.target = bmetro::Parameter::frequency;
    c.grid = bmetro::report::frequency_figure_grid();
  } else if (figure == "temp") {
    c.target = bmetro::Parameter::temperature;
    c.grid = bmetro::report::temperature_figure_grid();
    c.photons = 5.0;
    c.n_env = 0.1;
  }
  c.figure = figure;
  if (!f.config_file.empty()) c.apply(bmetro::report::read_config_file(f.config_file));
  c.apply(flag_values(cmd, f));
  return c;
}

int report(const bmetro::report::RunResult& r) {
  std::cout << r.summary;
  for (const auto& file : r.files) std::cout << "wrote " << file << "\n";
  std::cout << "manifest " << r.manifest_path << "\n";
  return r.failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Precision bounds and strategies for bosonic metrology under thermal loss"};
  app.require_subcommand(1);
  app.set_version_flag("--version", bmetro::report::version());

  Flags flags;
  std::string figure, manifest;

  auto* table = app.add_subcommand("table", "Five-row summary of classical optima and bounds");
  auto* fig = app.add_subcommand("figure", "Figure data: 'fre' (frequency) or 'temp' (temperature)");
  fig->add_option("which", figure, "fre|temp")->required()->check(CLI::IsMember({"fre", "temp"}));
  auto* bound = app.add_subcommand("bound", "Rate bound for --target");
  auto* strategy = app.add_subcommand("strategy", "Evaluate a named strategy for --target");
  strategy->add_option("--name", flags.name, "Strategy name")->required();
  auto* selftest = app.add_subcommand("selftest", "Run the built-in invariant checks");
  auto* replay = app.add_subcommand("replay", "Re-run a manifest and compare output hashes");
  replay->add_option("manifest", manifest, "Path to a manifest.json")->required()->check(CLI::ExistingFile);
  for (auto* cmd : {table, fig, bound, strategy, selftest}) add_run_options(cmd, flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (replay->parsed()) {
      const auto r = bmetro::report::replay(manifest);
      const int code = report(r.run);
      for (const auto& m : r.mismatches) std::cout << "mismatch " << m << "\n";
      std::cout << (r.identical ? "replay identical\n" : "replay differs\n");
      return r.identical ? code : 1;
    }
    for (auto* cmd : {table, fig, bound, strategy, selftest}) {
      if (!cmd->parsed()) continue;
      const RunConfig c = resolve(cmd, flags, cmd == fig ? figure : "");
      return report(bmetro::report::run_command(cmd->get_name(), c));
    }
  } catch (const bmetro::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return bmetro::report::exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
