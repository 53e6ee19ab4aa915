#include <cmath>
#include <functional>
#include <sstream>

#include "bmetro/bounds.hpp"
#include "bmetro/cat_code.hpp"
#include "bmetro/fisher.hpp"
#include "bmetro/master_equation.hpp"
#include "bmetro/report/commands.hpp"
#include "bmetro/states.hpp"
#include "bmetro/thermal_channel.hpp"

namespace bmetro::report {
namespace {

struct Check {
  std::string name;
  std::function<std::pair<bool, std::string>()> run;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::pair<bool, std::string> within(double err, double tol) { return {err <= tol, "error " + sci(err)}; }

std::vector<Check> checks() {
  std::vector<Check> list;

  list.push_back({"commutator", [] {
    const FockSpace s(12);
    Operator c = s.a() * s.adag() - s.adag() * s.a() - s.identity();
    return within(c.topLeftCorner(11, 11).cwiseAbs().maxCoeff(), 1e-12);
  }});

  list.push_back({"rhs_traceless", [] {
    const FockSpace s(16);
    const auto m = LindbladModel(SqueezingDrive{0.3}, 1.0, 0.2, Parameter::squeezing);
    const Operator rho = density(coherent_vector(s, Complex(0.7, 0.4)));
    return within(std::abs(lindblad_rhs(rho, m, s).trace()), 1e-12);
  }});

  list.push_back({"beamsplitter_normalisation", [] {
    double worst = 0.0;
    for (int n = 0; n <= 6; ++n) {
      for (int m = 0; m <= 6; ++m) {
        double sum = 0.0;
        for (int np = 0; np <= n + m; ++np) {
          sum += beamsplitter_transition(np, n, m, 0.37);
        }
        worst = std::max(worst, std::abs(sum - 1.0));
      }
    }
    return within(worst, 1e-12);
  }});

  list.push_back({"channel_vs_master_equation", [] {
    const FockSpace s(40);
    const double gamma = 1.0, n_env = 0.3, t = 0.4;
    const auto m = LindbladModel::for_target(Parameter::temperature, gamma, n_env);
    Operator rho0 = density(fock_vector(s, 3));
    const auto r = integrate_with_sensitivity(rho0, Operator::Zero(40, 40), m, t, s);
    const OutcomeDistribution me = photon_counting(r.rho, r.drho);
    ChannelSpec spec;
    spec.kappa = std::exp(-gamma * t);
    spec.n_env = n_env;
    const OutcomeDistribution ch = thermal_mix_distribution(3, spec);
    double err = 0.0;
    for (std::size_t i = 0; i < ch.labels.size() && ch.labels[i] < 40; ++i) {
      err = std::max(err, std::abs(ch.probs[i] - me.probs[ch.labels[i]]));
      err = std::max(err, std::abs(ch.dprobs[i] - me.dprobs[ch.labels[i]]));
    }
    return within(err, 1e-7);
  }});

  list.push_back({"sld_dominates_observable", [] {
    const FockSpace s(30);
    const auto m = LindbladModel(FrequencyDrive{0.0}, 1.0, 0.1, Parameter::frequency);
    const Operator rho0 = density(coherent_vector(s, Complex(1.2, 0.0)));
    const auto r = integrate_with_sensitivity(rho0, Operator::Zero(30, 30), m, 0.5, s);
    const double qfi = sld_qfi(r.rho, r.drho).qfi;
    const Operator x = s.a() + s.adag();
    const Operator p = -kI * (s.a() - s.adag());
    const double snr = std::max(max_snr_check(r.rho, r.drho, x), max_snr_check(r.rho, r.drho, p));
    return std::pair{snr <= qfi * (1 + 1e-8) + 1e-10, "snr " + sci(snr) + " <= qfi " + sci(qfi)};
  }});

  list.push_back({"thermal_qfi", [] {
    // Thermal family: F = 1 / (n (n + 1)).
    const FockSpace s(80);
    const double n = 0.5, h = 1e-5;
    const Operator drho = (thermal_density(s, n + h) - thermal_density(s, n - h)) / (2 * h);
    return within(std::abs(sld_qfi(thermal_density(s, n), drho).qfi * n * (n + 1) - 1.0), 1e-6);
  }});

  list.push_back({"closed_vs_numeric_h", [] {
    const FockSpace s(40);
    const auto m = LindbladModel::for_target(Parameter::frequency, 1.0, 0.2);
    const double big_n = 2.0;
    const NumericH num = numeric_h_optimization(m, poisson_density(s, big_n), s);
    const double closed = closed_form_h(m, big_n).a_expect;
    return within(std::abs(num.a_expect - closed) / closed, 1e-6);
  }});

  list.push_back({"hnls_squeezing_zero_temperature", [] {
    const FockSpace s(30);
    const bool holds = hnls_test(LindbladModel::for_target(Parameter::squeezing, 1.0, 0.0), s);
    const bool violated = !hnls_test(LindbladModel::for_target(Parameter::squeezing, 1.0, 0.1), s);
    return std::pair{holds && violated, std::string(holds ? "holds at n=0" : "fails at n=0") +
                                            (violated ? ", violated at n>0" : ", holds at n>0")};
  }});

  list.push_back({"noise_formula_vs_matrices", [] {
    const FockSpace s(50);
    const auto m = LindbladModel::for_target(Parameter::loss, 1.0, 0.3);
    const double big_n = 3.0;
    const double formula = noise_rate_bound(m, big_n).rate_bound;
    const double matrices = noise_rate_from_state(m, poisson_density(s, big_n), s);
    return within(std::abs(formula - matrices) / formula, 1e-9);
  }});

  list.push_back({"cat_normalisation", [] {
    const FockSpace s(60);
    double err = 0.0;
    for (int parity : {+1, -1}) {
      const CatCode code = build_cat_code(Complex(1.5, 0.0), parity, s);
      err = std::max(err, std::abs(code.c_alpha.norm() - 1.0));
      err = std::max(err, std::abs(code.c_ialpha.norm() - 1.0));
    }
    return within(err, 1e-9);
  }});

  list.push_back({"qec_conditions", [] {
    const FockSpace s(60);
    const QecReport r = qec_code_check(3, s);
    return std::pair{r.ok(), "lambda " + sci(r.lambda) + ", mu " + sci(r.mu)};
  }});

  list.push_back({"gaussian_vs_fock_moments", [] {
    const FockSpace s(60);
    const GaussianState g = make_gaussian(Complex(0.8, -0.3), 0.4, 0.3);
    const GaussianState f = quadrature_moments(density(gaussian_vector(s, Complex(0.8, -0.3), 0.4, 0.3)), s);
    const double err = std::max((g.mean - f.mean).cwiseAbs().maxCoeff(), (g.cov - f.cov).cwiseAbs().maxCoeff());
    return within(err, 1e-8);
  }});
  return list;
}

}  // namespace

CommandOutput cmd_selftest(const RunConfig& config) {
  config.validate();
  Dataset d;
  d.name = "selftest";
  d.columns = {{"check", ""}, {"pass", ""}, {"detail", ""}};
  std::ostringstream s;
  bool failed = false;
  for (const auto& c : checks()) {
    bool ok = false;
    std::string detail;
    try {
      std::tie(ok, detail) = c.run();
    } catch (const std::exception& e) {
      detail = std::string("threw: ") + e.what();
    }
    failed = failed || !ok;
    d.add_row({c.name, ok ? 1.0 : 0.0, detail});
    s << (ok ? "PASS " : "FAIL ") << c.name << "  (" << detail << ")\n";
  }
  return {{{d, std::nullopt}}, s.str(), failed};
}

}  // namespace bmetro::report
