#include "bmetro/report/commands.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "bmetro/bounds.hpp"
#include "bmetro/cat_code.hpp"
#include "bmetro/fisher.hpp"
#include "bmetro/gaussian_dynamics.hpp"
#include "bmetro/master_equation.hpp"
#include "bmetro/parallel.hpp"
#include "bmetro/scalar_optimize.hpp"
#include "bmetro/states.hpp"
#include "bmetro/thermal_channel.hpp"

namespace bmetro::report {
namespace fs = std::filesystem;
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kAuditSlack = 1e-6;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::vector<double> grid_times(const RunConfig& c) {
  if (c.time > 0.0) return {c.time};
  return make_grid(c.grid.t_min, c.grid.t_max, c.grid.points, c.grid.log_spaced);
}

// Photon number that bounds <a'a> along any passive trajectory.
double photon_budget(const RunConfig& c) { return std::max(c.photons, c.n_env); }

GaussianState coherent_x(double photons) { return make_gaussian(std::sqrt(photons), 0.0); }
GaussianState coherent_p(double photons) { return make_gaussian(Complex(0.0, std::sqrt(photons)), 0.0); }
// Photons split evenly between displacement along p and squeezing along x.
GaussianState squeezed_p(double photons) {
  return make_gaussian(Complex(0.0, std::sqrt(photons / 2.0)), std::asinh(std::sqrt(photons / 2.0)));
}

int fock_photons(double photons) {
  const long n = std::lround(photons);
  if (std::abs(photons - static_cast<double>(n)) > 1e-9) {
    throw_invalid("Fock-state strategies need an integer photon number, got " + fmt(photons));
  }
  return static_cast<int>(n);
}

double fock_counting_fi(int n_in, double n_env, double gamma, double t) {
  ChannelSpec spec;
  spec.kappa = std::exp(-gamma * t);
  spec.n_env = n_env;
  return classical_fisher(thermal_mix_distribution(n_in, spec));
}

double fast_sensing_time(const RunConfig& c) {
  return 1.0 / (10.0 * std::max(c.photons, 1.0) * c.gamma);
}

// Throws numerical if any strategy column exceeds the bound column.
void audit(const Dataset& d, const std::vector<std::string>& strategies, const std::string& bound) {
  const int b = d.column_index(bound);
  for (const auto& name : strategies) {
    const int s = d.column_index(name);
    for (const auto& row : d.rows) {
      const double* v = std::get_if<double>(&row[s]);
      const double* w = std::get_if<double>(&row[b]);
      if (v == nullptr || w == nullptr || std::isnan(*v) || std::isnan(*w)) continue;
      if (*v > *w + kAuditSlack) {
        std::ostringstream os;
        os << "bound audit failed: " << name << " = " << *v << " exceeds " << bound << " = " << *w
           << " at t = " << std::get<double>(row[0]);
        throw_numerical(os.str());
      }
    }
  }
}

// ---------------------------------------------------------------- table

struct TableRow {
  Parameter target;
  double classical = kNaN;
  double bound = kNaN;
  double t_star = kNaN;
  double classical_ref = kNaN;
  double bound_ref = kNaN;
  std::string note;
};

IterationOptimum classical_optimum(Parameter p, const RunConfig& c) {
  const LindbladModel model = LindbladModel::for_target(p, c.gamma, c.n_env);
  switch (p) {
    case Parameter::frequency: return optimize_iteration_time(coherent_p(c.photons), model);
    case Parameter::displacement:
    case Parameter::loss: return optimize_iteration_time(coherent_x(c.photons), model);
    case Parameter::temperature: {
      // Photon counting on the vacuum: no probe photons are needed.
      auto family = [&](double t) {
        const double fi = fock_counting_fi(0, c.n_env, c.gamma, t);
        return SnrResult{t, fi, fi / t};
      };
      return optimize_iteration_time(family, TimeRange::defaults(c.gamma));
    }
    default: throw_invalid("no classical strategy for squeezing");
  }
}

void reference_constants(TableRow& r, const RunConfig& c) {
  const double g = c.gamma, n = c.n_env, big_n = c.photons;
  switch (r.target) {
    case Parameter::frequency:
      r.bound_ref = 4.0 * big_n / (g * (1.0 + 2.0 * n));
      r.classical_ref = 0.37 * r.bound_ref;
      break;
    case Parameter::displacement:
      r.bound_ref = 4.0 / g;
      r.classical_ref = 0.82 * r.bound_ref;
      break;
    case Parameter::squeezing: r.bound_ref = printed_squeezing_bound(big_n, g, n); break;
    case Parameter::loss:
      r.bound_ref = big_n * (1.0 + 2.0 * n) / g;
      r.classical_ref = 0.37 * big_n / (g * (1.0 + 2.0 * n));
      break;
    case Parameter::temperature:
      r.bound_ref = n > 0.0 ? big_n * g * (1.0 + 2.0 * n) / (n * (1.0 + n)) : kNaN;
      r.classical_ref = n > 0.0 ? g / n : kNaN;
      break;
  }
}

TableRow table_row(Parameter p, const RunConfig& c) {
  TableRow r;
  r.target = p;
  reference_constants(r, c);
  std::vector<std::string> notes;
  try {
    const BoundReport b = rate_bound(LindbladModel::for_target(p, c.gamma, c.n_env), c.photons);
    r.bound = b.rate_bound;
    if (b.unbounded) notes.push_back("bound unbounded: " + b.note);
  } catch (const Error& e) {
    notes.push_back(std::string("bound: ") + e.what());
  }
  if (p != Parameter::squeezing) {
    try {
      const IterationOptimum o = classical_optimum(p, c);
      r.classical = o.rate_star;
      r.t_star = o.t_star;
    } catch (const Error& e) {
      notes.push_back(std::string("classical: ") + e.what());
    }
  }
  for (const auto& s : notes) r.note += (r.note.empty() ? "" : "; ") + s;
  return r;
}

}  // namespace

CommandOutput cmd_table(const RunConfig& c) {
  c.validate();
  std::vector<TableRow> rows(std::size(kAllParameters));
  parallel_for(rows.size(), [&](std::size_t i) { rows[i] = table_row(kAllParameters[i], c); });

  Dataset d;
  d.name = "table";
  d.columns = {{"parameter", ""},           {"classical_rate", ""},  {"bound_rate", ""}, {"ratio", ""},
               {"classical_reference", ""}, {"bound_reference", ""}, {"t_star", "1/gamma"}, {"note", ""}};
  d.note("gamma", fmt(c.gamma));
  d.note("n_env", fmt(c.n_env));
  d.note("photons", fmt(c.photons));
  d.note("rates", "Fisher information per unit time, optimised over the iteration time");
  d.note("references", "large-N constants; the squeezing classical entry is undefined");
  std::ostringstream summary;
  summary << "parameter  classical      bound          ratio\n";
  for (const auto& r : rows) {
    const bool has_classical = r.target != Parameter::squeezing;
    const double ratio = has_classical ? r.classical / r.bound : kNaN;
    d.add_row({std::string(symbol(r.target)), has_classical ? Cell(r.classical) : Cell(std::string("-")),
               r.bound, has_classical ? Cell(ratio) : Cell(std::string("-")),
               has_classical ? Cell(r.classical_ref) : Cell(std::string("-")), r.bound_ref, r.t_star, r.note});
    char line[160];
    std::snprintf(line, sizeof line, "%-10s %-14s %-14s %s\n", std::string(symbol(r.target)).c_str(),
                  has_classical ? fmt(r.classical).c_str() : "-", fmt(r.bound).c_str(),
                  has_classical ? fmt(ratio).c_str() : "-");
    summary << line;
  }
  return {{{d, std::nullopt}}, summary.str(), false};
}

CommandOutput cmd_figure_frequency(const RunConfig& c) {
  c.validate();
  const LindbladModel model = LindbladModel::for_target(Parameter::frequency, c.gamma, c.n_env);
  const double nb = photon_budget(c);
  const double a_expect = closed_form_h(model, nb).a_expect;
  const double quad_var = 2.0 * nb * (nb + 1.0);  // Gaussian cap on Var(a'a)
  const GaussianState coherent = coherent_p(c.photons);
  const GaussianState squeezed = squeezed_p(c.photons);

  Dataset d;
  d.name = "figure-fre";
  d.columns = {{"t", "1/gamma"},        {"coherent_snr", ""}, {"squeezed_snr", ""}, {"quadratic_bound", ""},
               {"linear_bound", ""}, {"min_bound", ""}};
  for (double t : grid_times(c)) {
    const double q = quadratic_bound_constant(quad_var, t);
    const double l = 4.0 * t * a_expect;
    d.add_row({t, homodyne_snr(coherent, model, t).snr, homodyne_snr(squeezed, model, t).snr, q, l,
               std::min(q, l)});
  }
  audit(d, {"coherent_snr", "squeezed_snr"}, "min_bound");

  const double crossover = a_expect / (2.0 * nb * (nb + 1.0));
  d.note("gamma", fmt(c.gamma));
  d.note("n_env", fmt(c.n_env));
  d.note("photons", fmt(c.photons));
  d.note("crossover_t", fmt(crossover));
  d.note("tau", fmt(hamiltonian_rate_bound(model, c.photons).tau.value_or(kNaN)));
  d.note("audit", "strategies <= min(quadratic, linear) + 1e-6: pass");

  std::ostringstream s;
  s << "frequency figure: " << d.rows.size() << " points; quadratic bound tighter below t = " << fmt(crossover)
    << "/gamma, linear bound above\n";
  PlotSpec plot{"Frequency estimation: strategies and bounds", "t",
                {"coherent_snr", "squeezed_snr", "quadratic_bound", "linear_bound"}, true, true};
  return {{{d, plot}}, s.str(), false};
}

CommandOutput cmd_figure_temperature(const RunConfig& c) {
  c.validate();
  if (!(c.n_env > 0.0)) throw_infeasible("temperature figure needs n_env > 0");
  const int n_in = fock_photons(c.photons);
  const LindbladModel model = LindbladModel::for_target(Parameter::temperature, c.gamma, c.n_env);
  const double rate = noise_rate_bound(model, photon_budget(c)).rate_bound;
  const double ts = fast_sensing_time(c);
  const double fast_rate = fock_counting_fi(n_in, c.n_env, c.gamma, ts) / ts;

  const std::vector<double> times = grid_times(c);
  std::vector<std::vector<Cell>> rows(times.size());
  parallel_for(times.size(), [&](std::size_t i) {
    const double t = times[i];
    const PassiveTemperatureBounds pb = passive_temperature_bounds(c.n_env, c.photons, std::exp(-c.gamma * t));
    rows[i] = {t,
               pb.single_shot,
               pb.purification,
               t * rate,
               fock_counting_fi(n_in, c.n_env, c.gamma, t),
               t >= ts ? t * fast_rate : kNaN};
  });
  Dataset d;
  d.name = "figure-temp";
  d.columns = {{"t", "1/gamma"},    {"single_shot_bound", ""}, {"purification_bound", ""},
               {"linear_bound", ""}, {"passive_fock_fi", ""},   {"fast_protocol_fi", ""}};
  for (auto& r : rows) d.add_row(std::move(r));
  audit(d, {"passive_fock_fi"}, "single_shot_bound");
  audit(d, {"passive_fock_fi"}, "purification_bound");
  audit(d, {"passive_fock_fi", "fast_protocol_fi"}, "linear_bound");

  d.note("gamma", fmt(c.gamma));
  d.note("n_env", fmt(c.n_env));
  d.note("photons", fmt(c.photons));
  d.note("fast_sensing_time", fmt(ts));
  d.note("fast_protocol_rate", fmt(fast_rate));
  d.note("linear_rate", fmt(rate));
  d.note("audit", "passive <= passive bounds, all <= linear bound (+1e-6): pass");

  std::ostringstream s;
  s << "temperature figure: " << d.rows.size() << " points; fast protocol rate " << fmt(fast_rate)
    << " vs linear rate " << fmt(rate) << " (ratio " << fmt(fast_rate / rate) << ")\n";
  PlotSpec plot{"Temperature estimation: bounds and strategies", "t",
                {"single_shot_bound", "purification_bound", "linear_bound", "passive_fock_fi", "fast_protocol_fi"},
                true, true};
  return {{{d, plot}}, s.str(), false};
}

CommandOutput cmd_bound(const RunConfig& c) {
  c.validate();
  const LindbladModel model = LindbladModel::for_target(c.target, c.gamma, c.n_env);
  const BoundReport r = rate_bound(model, c.photons);
  if (r.unbounded && !is_hamiltonian_parameter(c.target)) {
    throw_infeasible(std::string(to_string(c.target)) + " rate bound is infinite: " + r.note);
  }
  Dataset d;
  d.name = "bound";
  d.columns = {{"quantity", ""}, {"value", ""}};
  d.add_row({std::string("rate_bound"), r.rate_bound});
  d.add_row({std::string("tau"), r.tau.value_or(kNaN)});
  d.add_row({std::string("unbounded"), r.unbounded ? 1.0 : 0.0});
  for (const auto& [k, v] : r.components) d.add_row({k, v});
  d.note("target", std::string(to_string(c.target)));
  d.note("gamma", fmt(c.gamma));
  d.note("n_env", fmt(c.n_env));
  d.note("photons", fmt(c.photons));
  if (!r.note.empty()) d.note("note", r.note);

  std::ostringstream s;
  s << to_string(c.target) << " rate bound: ";
  if (r.unbounded) {
    s << "unbounded";
    if (is_hamiltonian_parameter(c.target)) {
      const FockSpace space(default_cutoff(c.photons));
      if (hnls_test(model, space)) {
        d.note("hnls", "generator lies outside span{I, L, L', L'L}: quadratic-in-time scaling is not excluded");
        s << " (HNLS holds: the generator lies outside the span of I, L, L', L'L)";
      }
    }
    s << "\n";
  } else {
    s << fmt(r.rate_bound);
    if (r.tau) s << ", tau = " << fmt(*r.tau);
    s << "\n";
  }
  if (!r.note.empty()) s << r.note << "\n";
  return {{{d, std::nullopt}}, s.str(), false};
}

std::vector<std::string> strategies_for(Parameter target) {
  switch (target) {
    case Parameter::frequency:
    case Parameter::displacement: return {"coherent", "squeezed"};
    case Parameter::squeezing: return {"cat"};
    case Parameter::loss: return {"coherent", "parity"};
    case Parameter::temperature: return {"fock", "fast", "vacuum"};
  }
  return {};
}

namespace {

Dataset gaussian_strategy(const RunConfig& c, const GaussianState& probe, const std::string& label) {
  const LindbladModel model = LindbladModel::for_target(c.target, c.gamma, c.n_env);
  Dataset d;
  d.name = "strategy";
  d.columns = {{"t", "1/gamma"}, {"snr", ""}, {"rate", ""}, {"linear_bound", ""}};
  const double rate = rate_bound(model, photon_budget(c)).rate_bound;
  for (double t : grid_times(c)) {
    const SnrResult r = homodyne_snr(probe, model, t);
    d.add_row({t, r.snr, r.rate, t * rate});
  }
  audit(d, {"snr"}, "linear_bound");
  const IterationOptimum o = optimize_iteration_time(probe, model);
  d.note("strategy", label);
  d.note("optimum_rate", fmt(o.rate_star));
  d.note("optimum_t", fmt(o.t_star));
  return d;
}

Dataset parity_strategy(const RunConfig& c) {
  const LindbladModel model = LindbladModel::for_target(Parameter::loss, c.gamma, c.n_env);
  const double r = std::asinh(std::sqrt(c.photons));
  const int cutoff = c.cutoff > 0 ? c.cutoff : std::max(required_cutoff(0.0, r), default_cutoff(c.photons)) + 10;
  const FockSpace space(cutoff);
  const Operator rho0 = density(gaussian_vector(space, 0.0, r));
  const Operator zero = Operator::Zero(space.dim(), space.dim());
  const std::vector<double> times = grid_times(c);
  const auto traj = sensitivity_trajectory(rho0, zero, model, times, space);
  const double rate = noise_rate_bound(model, photon_budget(c)).rate_bound;

  Dataset d;
  d.name = "strategy";
  d.columns = {{"t", "1/gamma"},        {"parity_fi", ""},   {"counting_fi", ""},
               {"short_time_prediction", ""}, {"linear_bound", ""}};
  const double big_n = c.photons, n = c.n_env;
  for (const auto& step : traj) {
    const OutcomeDistribution counting = photon_counting(step.rho, step.drho);
    d.add_row({step.t, classical_fisher(parity_outcomes(counting)), classical_fisher(counting),
               step.t * (big_n * (1.0 + 2.0 * n) + n) / c.gamma, step.t * rate});
  }
  audit(d, {"parity_fi", "counting_fi"}, "linear_bound");
  d.note("strategy", "squeezed vacuum, parity readout");
  d.note("cutoff", std::to_string(cutoff));
  return d;
}

Dataset temperature_strategy(const RunConfig& c, const std::string& name) {
  if (!(c.n_env > 0.0)) throw_infeasible("temperature strategies need n_env > 0");
  const int n_in = name == "vacuum" ? 0 : fock_photons(c.photons);
  const LindbladModel model = LindbladModel::for_target(Parameter::temperature, c.gamma, c.n_env);
  const double rate = noise_rate_bound(model, std::max(static_cast<double>(n_in), c.n_env)).rate_bound;
  const double ts = fast_sensing_time(c);
  const double fast_rate = name == "fast" ? fock_counting_fi(n_in, c.n_env, c.gamma, ts) / ts : kNaN;

  Dataset d;
  d.name = "strategy";
  d.columns = {{"t", "1/gamma"}, {"fi", ""}, {"rate", ""}, {"linear_bound", ""}};
  const std::vector<double> times = grid_times(c);
  std::vector<std::vector<Cell>> rows(times.size());
  parallel_for(times.size(), [&](std::size_t i) {
    const double t = times[i];
    double fi = kNaN;
    if (name == "fast") {
      if (t >= ts) fi = t * fast_rate;
    } else {
      fi = fock_counting_fi(n_in, c.n_env, c.gamma, t);
    }
    rows[i] = {t, fi, fi / t, t * rate};
  });
  for (auto& r : rows) d.add_row(std::move(r));
  audit(d, {"fi"}, "linear_bound");
  d.note("strategy", name == "fast" ? "repeated Fock probes, photon counting" : "passive photon counting");
  d.note("input_photons", std::to_string(n_in));
  if (name == "fast") {
    d.note("sensing_time", fmt(ts));
    d.note("rate", fmt(fast_rate));
    d.note("linear_rate", fmt(rate));
  }
  return d;
}

Dataset cat_strategy(const RunConfig& c) {
  if (!(c.photons > 0.0)) throw_invalid("cat strategy needs photons > 0");
  Dataset d;
  d.name = "strategy";
  d.columns = {{"t", "1/gamma"}, {"qfi", ""}, {"rate", ""}, {"max_epsilon_valid", "gamma"}};
  for (double t : grid_times(c)) {
    const double q = protocol_qfi(c.photons, c.gamma, t);
    // Largest epsilon with t eps sqrt(4N + 2) <= 0.1.
    d.add_row({t, q, q / t, 0.1 / (t * std::sqrt(4.0 * c.photons + 2.0))});
  }
  const ProtocolOptimum o = optimize_protocol_rate(c.photons, c.gamma);
  d.note("strategy", "cat code, effective qubit");
  d.note("optimum_t", fmt(o.t_star));
  d.note("optimum_rate", fmt(o.rate_star));
  d.note("optimum_rate_per_N2", fmt(o.rate_per_n2));
  d.note("reference", "6.56 N^2/gamma at t = 1.26/gamma");
  if (c.n_env > 0.0) d.note("validity", "effective-qubit formula assumes n_env = 0");
  return d;
}

}  // namespace

CommandOutput cmd_strategy(const RunConfig& c) {
  c.validate();
  const auto names = strategies_for(c.target);
  if (std::find(names.begin(), names.end(), c.strategy) == names.end()) {
    std::string list;
    for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
    throw_invalid("unknown strategy '" + c.strategy + "' for target " + std::string(to_string(c.target)) +
                  "; available: " + list);
  }
  Dataset d;
  std::vector<std::string> ycols;
  if (c.target == Parameter::frequency) {
    d = gaussian_strategy(c, c.strategy == "coherent" ? coherent_p(c.photons) : squeezed_p(c.photons), c.strategy);
    ycols = {"snr", "linear_bound"};
  } else if (c.target == Parameter::displacement) {
    const GaussianState probe =
        c.strategy == "coherent" ? coherent_x(c.photons) : make_gaussian(0.0, std::asinh(std::sqrt(c.photons)));
    d = gaussian_strategy(c, probe, c.strategy);
    ycols = {"snr", "linear_bound"};
  } else if (c.target == Parameter::loss) {
    if (c.strategy == "coherent") {
      d = gaussian_strategy(c, coherent_x(c.photons), c.strategy);
      ycols = {"snr", "linear_bound"};
    } else {
      d = parity_strategy(c);
      ycols = {"parity_fi", "counting_fi", "short_time_prediction", "linear_bound"};
    }
  } else if (c.target == Parameter::temperature) {
    d = temperature_strategy(c, c.strategy);
    ycols = {"fi", "linear_bound"};
  } else {
    d = cat_strategy(c);
    ycols = {"qfi"};
  }
  d.note("target", std::string(to_string(c.target)));
  d.note("gamma", fmt(c.gamma));
  d.note("n_env", fmt(c.n_env));
  d.note("photons", fmt(c.photons));

  std::ostringstream s;
  s << to_string(c.target) << "/" << c.strategy << ": " << d.rows.size() << " point(s)\n";
  if (d.rows.size() == 1) {
    for (std::size_t i = 0; i < d.columns.size(); ++i) {
      if (const double* v = std::get_if<double>(&d.rows[0][i])) s << "  " << d.columns[i].header() << " = " << fmt(*v) << "\n";
    }
  }
  for (const auto& [k, v] : d.notes) {
    if (k.rfind("optimum", 0) == 0 || k == "reference") s << "  " << k << ": " << v << "\n";
  }
  std::optional<PlotSpec> plot;
  if (d.rows.size() > 1) plot = PlotSpec{std::string(to_string(c.target)) + " / " + c.strategy, "t", ycols, true, true};
  return {{{d, plot}}, s.str(), false};
}

// ---------------------------------------------------------------- running

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case Error::Kind::invalid_argument: return 2;
    case Error::Kind::infeasible: return 3;
    case Error::Kind::numerical: return 4;
  }
  return 1;
}

namespace {

std::string utc_stamp(std::chrono::system_clock::time_point tp, bool iso) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(tp);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, iso ? "%Y-%m-%dT%H:%M:%SZ" : "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_invalid("cannot write '" + path.string() + "'");
  out << content;
}

CommandOutput dispatch(const std::string& command, const RunConfig& c) {
  if (command == "table") return cmd_table(c);
  if (command == "figure") {
    if (c.figure == "fre") return cmd_figure_frequency(c);
    if (c.figure == "temp") return cmd_figure_temperature(c);
    throw_invalid("figure must be 'fre' or 'temp', got '" + c.figure + "'");
  }
  if (command == "bound") return cmd_bound(c);
  if (command == "strategy") return cmd_strategy(c);
  if (command == "selftest") return cmd_selftest(c);
  throw_invalid("unknown command '" + command + "'");
}

}  // namespace

RunResult run_command(const std::string& command, const RunConfig& config) {
  config.validate();
  const auto start = std::chrono::system_clock::now();
  const auto t0 = std::chrono::steady_clock::now();
  const CommandOutput out = dispatch(command, config);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const fs::path dir(config.output_dir);
  fs::create_directories(dir);
  std::string stem = command + (command == "figure" ? "-" + config.figure : "") + "-" + utc_stamp(start, false);
  // Keep earlier runs from the same second.
  for (int k = 1; fs::exists(dir / (stem + ".manifest.json")); ++k) {
    stem = command + (command == "figure" ? "-" + config.figure : "") + "-" + utc_stamp(start, false) + "-" +
           std::to_string(k);
    if (!fs::exists(dir / (stem + ".manifest.json"))) break;
  }

  RunResult result;
  result.summary = out.summary;
  result.failed = out.failed;
  Manifest& m = result.manifest;
  m.command = command;
  m.config = config.to_map();
  m.version = version();
  m.seed = config.seed;
  m.started_at = utc_stamp(start, true);
  m.wall_time_seconds = wall;

  for (std::size_t i = 0; i < out.outputs.size(); ++i) {
    const Output& o = out.outputs[i];
    const std::string base = out.outputs.size() > 1 ? stem + "-" + o.data.name : stem;
    for (const auto& fmt_name : config.formats) {
      std::string content;
      if (fmt_name == "csv") {
        content = to_csv(o.data);
      } else if (fmt_name == "json") {
        content = to_json(o.data);
      } else if (fmt_name == "svg") {
        if (!o.plot) continue;
        content = render_svg(o.data, *o.plot);
      }
      const std::string file = base + "." + fmt_name;
      write_file(dir / file, content);
      m.outputs.push_back({file, fnv1a64_hex(content)});
      result.files.push_back((dir / file).string());
    }
  }
  result.manifest_path = (dir / "manifest.json").string();
  write_manifest(m, result.manifest_path);
  write_manifest(m, (dir / (stem + ".manifest.json")).string());
  return result;
}

ReplayResult replay(const std::string& manifest_path) {
  const Manifest recorded = read_manifest(manifest_path);
  RunConfig config;
  config.apply(recorded.config);
  ReplayResult r;
  r.run = run_command(recorded.command, config);

  // Pair outputs by extension and order; names differ only in their timestamp.
  std::vector<OutputRecord> now = r.run.manifest.outputs;
  r.identical = now.size() == recorded.outputs.size();
  for (std::size_t i = 0; i < std::min(now.size(), recorded.outputs.size()); ++i) {
    if (now[i].fnv1a64 != recorded.outputs[i].fnv1a64) {
      r.identical = false;
      r.mismatches.push_back(recorded.outputs[i].file + " vs " + now[i].file);
    }
  }
  if (now.size() != recorded.outputs.size()) r.mismatches.push_back("different number of outputs");
  return r;
}

}  // namespace bmetro::report
