#include "bmetro/gaussian_dynamics.hpp"

#include <cmath>
#include <variant>

#include "bmetro/error.hpp"
#include "bmetro/scalar_optimize.hpp"

namespace bmetro {
namespace {

struct Drives {
  double omega = 0.0;
  double alpha = 0.0;
};

Drives drives_of(const LindbladModel& model) {
  Drives d;
  if (std::holds_alternative<SqueezingDrive>(model.hamiltonian())) {
    throw_invalid("Gaussian moment evolution does not cover the squeezing Hamiltonian");
  }
  if (const auto* f = std::get_if<FrequencyDrive>(&model.hamiltonian())) d.omega = f->omega;
  if (const auto* a = std::get_if<DisplacementDrive>(&model.hamiltonian())) d.alpha = a->alpha;
  return d;
}

}  // namespace

GaussianState evolve_moments(const GaussianState& state, const LindbladModel& model, double t) {
  if (!(t >= 0.0)) throw_invalid("evolution time must be >= 0");
  const Drives d = drives_of(model);
  const double g = model.gamma();
  const double decay = std::exp(-g * t);
  const double half = std::exp(-0.5 * g * t);
  const Eigen::Matrix2d rot = rotation(-d.omega * t);

  GaussianState out;
  out.mean = half * (rot * state.mean);
  out.mean.x() += 4.0 * d.alpha * (-std::expm1(-0.5 * g * t)) / g;
  out.cov = decay * (rot * state.cov * rot.transpose()) +
            (-std::expm1(-g * t)) * (1.0 + 2.0 * model.n_env()) * Eigen::Matrix2d::Identity();
  out.cov(1, 0) = out.cov(0, 1);
  return out;
}

SnrResult homodyne_snr(const GaussianState& probe, const LindbladModel& model, double t) {
  if (!(t >= 0.0)) throw_invalid("evolution time must be >= 0");
  const Drives d = drives_of(model);
  if (d.omega != 0.0) {
    throw_invalid("homodyne SNR is evaluated in the rotating frame; set omega = 0 (frame argument)");
  }
  const double g = model.gamma();
  const double half = std::exp(-0.5 * g * t);
  double slope = 0.0;
  switch (model.target()) {
    case Parameter::frequency:
      // d/domega of 2 Re(a0 e^{-i omega t}) e^{-Gamma t/2} at omega = 0
      slope = t * half * probe.mean.y();
      break;
    case Parameter::displacement:
      slope = 4.0 * (-std::expm1(-0.5 * g * t)) / g;
      break;
    case Parameter::loss:
      slope = -0.5 * t * half * probe.mean.x() +
              4.0 * d.alpha * (0.5 * g * t * half + std::expm1(-0.5 * g * t)) / (g * g);
      break;
    case Parameter::squeezing:
    case Parameter::temperature:
      throw_invalid("homodyne mean carries no first-order information on " +
                    std::string(to_string(model.target())) + "; use the cat or photon-counting strategies");
  }
  const GaussianState evolved = evolve_moments(probe, model, t);
  SnrResult r;
  r.t = t;
  r.snr = slope * slope / evolved.cov(0, 0);
  r.rate = t > 0.0 ? r.snr / t : 0.0;
  return r;
}

IterationOptimum optimize_iteration_time(const std::function<SnrResult(double)>& family,
                                         TimeRange range) {
  const ScalarOptimum best =
      maximize_unimodal([&](double t) { return family(t).rate; }, range.lo, range.hi);
  const SnrResult at = family(best.x);
  return {best.x, at.rate, at.snr};
}

IterationOptimum optimize_iteration_time(const GaussianState& probe, const LindbladModel& model,
                                         TimeRange range) {
  return optimize_iteration_time([&](double t) { return homodyne_snr(probe, model, t); }, range);
}

IterationOptimum optimize_iteration_time(const GaussianState& probe, const LindbladModel& model) {
  return optimize_iteration_time(probe, model, TimeRange::defaults(model.gamma()));
}

double effective_thermal_photons(double sigma2, double gamma, double t) {
  if (!(sigma2 >= 0.0)) throw_invalid("displacement variance must be >= 0");
  if (!(gamma > 0.0)) throw_invalid("Gamma must be > 0");
  if (!(t >= 0.0)) throw_invalid("time must be >= 0");
  if (t == 0.0) return 0.0;
  const double drift = 2.0 * (-std::expm1(-0.5 * gamma * t)) / (0.5 * gamma);
  return sigma2 * drift * drift / (-std::expm1(-gamma * t));
}

}  // namespace bmetro
