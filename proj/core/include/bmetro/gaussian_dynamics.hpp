#pragma once

#include <functional>

#include "bmetro/gaussian_state.hpp"
#include "bmetro/lindblad_model.hpp"

namespace bmetro {

/// Homodyne signal-to-noise ratio of the x quadrature after time t.
struct SnrResult {
  double t = 0.0;
  double snr = 0.0;
  double rate = 0.0;  // snr / t, zero at t = 0
};

struct TimeRange {
  double lo;
  double hi;
  /// Default search window [1e-4, 20] / Gamma.
  static TimeRange defaults(double gamma) { return {1e-4 / gamma, 20.0 / gamma}; }
};

struct IterationOptimum {
  double t_star = 0.0;
  double rate_star = 0.0;
  double snr_star = 0.0;
};

/// Closed-form first and second moments under the thermal-loss master
/// equation with a frequency or displacement drive (or none):
///   mean(t) = e^{-Gamma t/2} R(-omega t) mean0 + (4 alpha_d (1 - e^{-Gamma t/2}) / Gamma, 0)
///   cov(t)  = e^{-Gamma t} R cov0 R^T + (1 - e^{-Gamma t})(1 + 2 n_E) I
/// Rejects the squeezing Hamiltonian and t < 0.
GaussianState evolve_moments(const GaussianState& state, const LindbladModel& model, double t);

/// S = |d<x(t)>/d(target)|^2 / Var x(t), with the derivative taken
/// analytically. Targets: frequency (rotating frame, omega must be 0),
/// displacement and loss. Squeezing and temperature are rejected: the
/// homodyne mean carries no first-order information about them.
SnrResult homodyne_snr(const GaussianState& probe, const LindbladModel& model, double t);

/// argmax_t S(t)/t for a fixed probe; see maximize_unimodal for the
/// unimodality check.
IterationOptimum optimize_iteration_time(const GaussianState& probe, const LindbladModel& model,
                                         TimeRange range);
IterationOptimum optimize_iteration_time(const GaussianState& probe, const LindbladModel& model);

/// Same search for an arbitrary t -> SnrResult family (e.g. probes that
/// depend on t).
IterationOptimum optimize_iteration_time(const std::function<SnrResult(double)>& family,
                                         TimeRange range);

/// Thermal photons equivalent to a Gaussian-random displacement drive of
/// variance sigma2 acting for time t:
///   n(t) = sigma2 [2 (1 - e^{-Gamma t/2}) / (Gamma/2)]^2 / (1 - e^{-Gamma t}),
/// continuously extended to 0 at t = 0.
double effective_thermal_photons(double sigma2, double gamma, double t);

}  // namespace bmetro
