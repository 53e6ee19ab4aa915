#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "bmetro/error.hpp"

namespace bmetro {

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double initial_step = 0.0;  // 0 selects a step from the initial derivative
  long max_steps = 2'000'000;
};

struct OdeStats {
  long accepted = 0;
  long rejected = 0;
  long rhs_evaluations = 0;
};

/// Dormand-Prince 5(4) with FSAL and a standard PI-free step controller.
/// `State` is any Eigen dense matrix type; `rhs(t, y)` returns dy/dt.
/// The solution is reported at each of `times` (ascending, >= t0) through
/// `on_output(index, y)`; steps are clipped to land exactly on them.
template <class State, class Rhs, class Output>
OdeStats integrate_dopri5(State y, double t0, const std::vector<double>& times, Rhs&& rhs,
                          Output&& on_output, const OdeOptions& options = {}) {
  // Butcher tableau
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                   e6 = 22.0 / 525, e7 = -1.0 / 40;

  OdeStats stats;
  auto error_norm = [&](const State& err, const State& y0, const State& y1) {
    const auto scale =
        (options.atol + options.rtol * y0.cwiseAbs().cwiseMax(y1.cwiseAbs()).array()).eval();
    const double s = (err.cwiseAbs().array() / scale).square().sum();
    return std::sqrt(s / static_cast<double>(err.size()));
  };

  double t = t0;
  State k1 = rhs(t, y);
  ++stats.rhs_evaluations;

  double h = options.initial_step;
  if (h <= 0.0) {
    const double d0 = y.cwiseAbs().maxCoeff();
    const double d1 = k1.cwiseAbs().maxCoeff();
    h = (d0 > 1e-5 && d1 > 1e-5) ? 0.01 * d0 / d1 : 1e-6;
  }

  std::size_t next = 0;
  while (next < times.size() && times[next] <= t) on_output(next++, y);

  while (next < times.size()) {
    if (stats.accepted + stats.rejected >= options.max_steps) {
      throw_numerical("ODE integration exceeded the step budget");
    }
    const double target = times[next];
    bool lands = false;
    const double h_trial = h;
    if (t + h >= target) {
      h = target - t;
      lands = true;
    }
    const State k2 = rhs(t + c2 * h, (y + h * (a21 * k1)).eval());
    const State k3 = rhs(t + c3 * h, (y + h * (a31 * k1 + a32 * k2)).eval());
    const State k4 = rhs(t + c4 * h, (y + h * (a41 * k1 + a42 * k2 + a43 * k3)).eval());
    const State k5 = rhs(t + c5 * h, (y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)).eval());
    const State k6 =
        rhs(t + h, (y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)).eval());
    State y1 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const State k7 = rhs(t + h, y1);
    stats.rhs_evaluations += 6;
    const State err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double en = error_norm(err, y, y1);

    if (!std::isfinite(en)) throw_numerical("ODE integration produced non-finite values");
    const double factor =
        en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
    if (en <= 1.0) {
      ++stats.accepted;
      t = lands ? target : t + h;
      y = std::move(y1);
      k1 = k7;
      while (next < times.size() && times[next] <= t) on_output(next++, y);
      h = lands ? std::max(h_trial, h * factor) : h * factor;
    } else {
      ++stats.rejected;
      h *= std::min(1.0, factor);
    }
    if (h < 1e-14 * std::max(1.0, std::abs(t))) throw_numerical("ODE step size underflow");
  }
  return stats;
}

}  // namespace bmetro
