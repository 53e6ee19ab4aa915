#pragma once

#include "bmetro/lindblad_model.hpp"
#include "bmetro/outcome_distribution.hpp"

namespace bmetro {

/// Largest input photon number accepted by thermal_mix_distribution. Beyond
/// this the alternating beamsplitter sum loses too many digits even in
/// extended precision.
inline constexpr int kMaxChannelPhotons = 60;

/// Beamsplitter of transmissivity kappa mixing the probe with a thermal
/// environment mode of mean occupation n_env.
struct ChannelSpec {
  double kappa = 1.0;
  double n_env = 0.0;
  int env_cutoff = 0;  // 0 selects the smallest M with truncated weight < tail_tol
  double tail_tol = kTailTolerance;

  /// kappa = exp(-Gamma t), n_env from the model.
  static ChannelSpec from_model(const LindbladModel& model, double t);

  /// Throws invalid_argument unless kappa in [0, 1], n_env >= 0, env_cutoff >= 0.
  void validate() const;
  /// env_cutoff, or the automatic choice when it is 0.
  int resolved_env_cutoff() const;
};

/// Probability that inputs |n>|m> leave the beamsplitter as |n'>|n + m - n'>.
/// Evaluated in extended precision with logarithmic binomials.
double beamsplitter_transition(int nprime, int n, int m, double kappa);

/// Thermal weight n^m / (n + 1)^(m + 1) and its n-derivative.
double thermal_weight(int m, double n_env);
double thermal_weight_derivative(int m, double n_env);

/// Photon-counting statistics of |n_in> after the channel, with derivatives
/// with respect to n_env.
OutcomeDistribution thermal_mix_distribution(int n_in, const ChannelSpec& spec);

}  // namespace bmetro
