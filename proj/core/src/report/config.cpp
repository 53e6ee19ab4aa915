#include "bmetro/report/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bmetro/error.hpp"

namespace bmetro::report {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw_invalid("config key '" + key + "': '" + v + "' is not a number");
  }
}

long to_long(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long long d = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return static_cast<long>(d);
  } catch (const std::exception&) {
    throw_invalid("config key '" + key + "': '" + v + "' is not an integer");
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "log") return true;
  if (v == "false" || v == "0" || v == "no" || v == "linear") return false;
  throw_invalid("config key '" + key + "': '" + v + "' is not a boolean");
}

}  // namespace

void RunConfig::validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw_invalid("gamma must be > 0");
  if (!(n_env >= 0.0) || !std::isfinite(n_env)) throw_invalid("n_env must be >= 0");
  if (!(photons >= 0.0) || !std::isfinite(photons)) throw_invalid("photons must be >= 0");
  if (grid.points < 2) throw_invalid("time grid needs at least 2 points");
  if (!(grid.t_min > 0.0) || !(grid.t_max > grid.t_min)) throw_invalid("time grid needs 0 < t_min < t_max");
  if (cutoff != 0 && cutoff < 2) throw_invalid("cutoff must be >= 2 (or 0 for automatic)");
  if (cutoff > 400) throw_invalid("cutoff above 400 is not supported");
  if (formats.empty()) throw_invalid("at least one output format is required");
  for (const auto& f : formats) {
    if (f != "csv" && f != "json" && f != "svg") throw_invalid("unknown output format '" + f + "'");
  }
  if (time < 0.0) throw_invalid("time must be >= 0");
}

std::map<std::string, std::string> RunConfig::to_map() const {
  std::map<std::string, std::string> m;
  m["target"] = std::string(to_string(target));
  m["gamma"] = format_double(gamma);
  m["n_env"] = format_double(n_env);
  m["photons"] = format_double(photons);
  m["t_min"] = format_double(grid.t_min);
  m["t_max"] = format_double(grid.t_max);
  m["points"] = std::to_string(grid.points);
  m["log_grid"] = grid.log_spaced ? "true" : "false";
  m["cutoff"] = std::to_string(cutoff);
  m["output_dir"] = output_dir;
  std::string fmts;
  for (const auto& f : formats) fmts += (fmts.empty() ? "" : ",") + f;
  m["formats"] = fmts;
  m["seed"] = std::to_string(seed);
  m["strategy"] = strategy;
  m["time"] = format_double(time);
  m["figure"] = figure;
  return m;
}

void RunConfig::apply(const std::map<std::string, std::string>& values) {
  for (const auto& [key, value] : values) {
    if (key == "target") {
      const auto p = parse_parameter(value);
      if (!p) throw_invalid("unknown target '" + value + "'");
      target = *p;
    } else if (key == "gamma") {
      gamma = to_double(key, value);
    } else if (key == "n_env") {
      n_env = to_double(key, value);
    } else if (key == "photons") {
      photons = to_double(key, value);
    } else if (key == "t_min") {
      grid.t_min = to_double(key, value);
    } else if (key == "t_max") {
      grid.t_max = to_double(key, value);
    } else if (key == "points") {
      grid.points = static_cast<int>(to_long(key, value));
    } else if (key == "log_grid") {
      grid.log_spaced = to_bool(key, value);
    } else if (key == "cutoff") {
      cutoff = static_cast<int>(to_long(key, value));
    } else if (key == "output_dir") {
      output_dir = value;
    } else if (key == "formats") {
      formats.clear();
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) formats.insert(item);
      }
    } else if (key == "seed") {
      seed = static_cast<std::uint64_t>(to_long(key, value));
    } else if (key == "strategy") {
      strategy = value;
    } else if (key == "time") {
      time = to_double(key, value);
    } else if (key == "figure") {
      figure = value;
    } else {
      throw_invalid("unknown config key '" + key + "'");
    }
  }
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw_invalid("config line " + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    for (char& c : key) {
      if (c == '-') c = '_';
    }
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw_invalid("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string default_output_dir() {
  if (const char* env = std::getenv("BMETRO_OUTPUT_DIR"); env != nullptr && *env != '\0') return env;
  return "out";
}

TimeGrid frequency_figure_grid() { return {1e-3, 10.0, 200, true}; }
TimeGrid temperature_figure_grid() { return {1e-3, 50.0, 120, true}; }

}  // namespace bmetro::report
