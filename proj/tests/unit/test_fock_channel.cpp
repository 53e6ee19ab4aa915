#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "bmetro/fisher.hpp"
#include "bmetro/master_equation.hpp"
#include "bmetro/states.hpp"
#include "bmetro/thermal_channel.hpp"

using namespace bmetro;

namespace {

using i128 = __int128;

i128 ipow(i128 b, int e) {
  i128 r = 1;
  while (e-- > 0) r *= b;
  return r;
}

i128 fact(int n) { return n <= 1 ? 1 : n * fact(n - 1); }
i128 binom(int n, int k) { return fact(n) / (fact(k) * fact(n - k)); }

// Transition probability at kappa = 9/25 in exact integer arithmetic:
// sqrt(kappa) = 3/5 and sqrt(1 - kappa) = 4/5, so every term is rational.
long double exact_probability(int np, int n, int m) {
  const int mp = n + m - np;
  if (mp < 0) return 0.0L;
  i128 sum = 0;
  for (int i = 0; i <= n; ++i) {
    const int j = np - n + i;
    if (j < 0 || j > m) continue;
    const i128 term = binom(n, i) * binom(m, j) * ipow(3, n + m - i - j) * ipow(4, i + j);
    sum += (j % 2 == 0) ? term : -term;
  }
  const i128 num = sum * sum;
  const i128 den = ipow(25, n + m);
  const long double pref = static_cast<long double>(fact(np) * fact(mp)) / static_cast<long double>(fact(n) * fact(m));
  return pref * static_cast<long double>(num) / static_cast<long double>(den);
}

std::vector<double> me_photon_distribution(int n_in, double n_env, double t, int cutoff, std::vector<double>* dp) {
  const FockSpace s(cutoff);
  const Operator rho0 = density(fock_vector(s, n_in));
  const Operator zero = Operator::Zero(cutoff, cutoff);
  if (n_env > 0.0 && dp != nullptr) {
    const auto r = integrate_with_sensitivity(rho0, zero, LindbladModel::for_target(Parameter::temperature, 1.0, n_env),
                                              t, s);
    *dp = photon_distribution(r.drho);
    return photon_distribution(r.rho);
  }
  return photon_distribution(integrate_master_equation(rho0, LindbladModel::for_target(Parameter::loss, 1.0, n_env), t, s).rho);
}

}  // namespace

TEST(Beamsplitter, ExactRationalOracle) {
  for (int n = 0; n <= 6; ++n)
    for (int m = 0; m + n <= 12; ++m)
      for (int np = 0; np <= n + m; ++np)
        EXPECT_NEAR(beamsplitter_transition(np, n, m, 9.0 / 25.0), static_cast<double>(exact_probability(np, n, m)),
                    1e-14)
            << n << " " << m << " " << np;
}

TEST(Beamsplitter, EmptyEnvironmentIsBinomial) {
  const double k = 0.63;
  for (int n = 0; n <= 15; ++n)
    for (int np = 0; np <= n; ++np) {
      const double b = std::tgamma(n + 1.0) / (std::tgamma(np + 1.0) * std::tgamma(n - np + 1.0));
      EXPECT_NEAR(beamsplitter_transition(np, n, 0, k), b * std::pow(k, np) * std::pow(1 - k, n - np), 1e-13);
    }
}

TEST(Beamsplitter, SymmetryAndUnitarity) {
  for (double k : {0.1, 0.37, 0.9}) {
    for (int n = 0; n <= 10; ++n)
      for (int m = 0; m <= 10; ++m) {
        double sum = 0.0;
        for (int np = 0; np <= n + m; ++np) {
          const double p = beamsplitter_transition(np, n, m, k);
          sum += p;
          EXPECT_NEAR(p, beamsplitter_transition(np, m, n, 1 - k), 1e-12);
          EXPECT_NEAR(p, beamsplitter_transition(n + m - np, m, n, k), 1e-12);
        }
        EXPECT_NEAR(sum, 1.0, 1e-12);
      }
  }
  EXPECT_DOUBLE_EQ(beamsplitter_transition(9, 4, 4, 0.5), 0.0);
  EXPECT_THROW(beamsplitter_transition(0, 1, 1, 1.5), Error);
}

TEST(ThermalWeights, ValuesAndDerivatives) {
  const double n = 0.4, h = 1e-6;
  double sum = 0.0;
  for (int m = 0; m < 200; ++m) {
    sum += thermal_weight(m, n);
    const double fd = (thermal_weight(m, n + h) - thermal_weight(m, n - h)) / (2 * h);
    EXPECT_NEAR(thermal_weight_derivative(m, n), fd, 1e-8);
  }
  EXPECT_NEAR(sum, 1.0, 1e-14);
  EXPECT_DOUBLE_EQ(thermal_weight_derivative(0, 0.0), -1.0);
  EXPECT_DOUBLE_EQ(thermal_weight_derivative(1, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(thermal_weight_derivative(2, 0.0), 0.0);
}

TEST(ChannelSpec, ValidationAndCutoff) {
  ChannelSpec s;
  s.kappa = 1.2;
  EXPECT_THROW(s.validate(), Error);
  s.kappa = 0.5;
  s.n_env = 1.0;
  const int M = s.resolved_env_cutoff();
  EXPECT_LT(std::pow(0.5, M), s.tail_tol);
  const auto from = ChannelSpec::from_model(LindbladModel::for_target(Parameter::loss, 2.0, 0.3), 0.5);
  EXPECT_NEAR(from.kappa, std::exp(-1.0), 1e-15);
  EXPECT_DOUBLE_EQ(from.n_env, 0.3);
  EXPECT_THROW(thermal_mix_distribution(kMaxChannelPhotons + 1, from), Error);
}

TEST(ThermalMix, ShortTimeLossAtZeroTemperature) {
  ChannelSpec s;
  const int N = 5;
  s.kappa = 1 - 1e-5;
  const auto d = thermal_mix_distribution(N, s);
  const auto at = [&](int label) {
    for (std::size_t i = 0; i < d.labels.size(); ++i)
      if (d.labels[i] == label) return d.probs[i];
    return 0.0;
  };
  EXPECT_NEAR(at(N - 1) / (N * 1e-5), 1.0, 1e-4);
  EXPECT_LT(at(N + 1), 1e-14);
}

TEST(ThermalMix, MatchesMasterEquation) {
  for (int n_in : {0, 1, 5, 12, 20}) {
    for (double t : {0.01, 0.1, 1.0}) {
      for (double n_env : {0.0, 0.1, 1.0}) {
        ChannelSpec spec;
        spec.kappa = std::exp(-t);
        spec.n_env = n_env;
        const OutcomeDistribution ch = thermal_mix_distribution(n_in, spec);
        const int cutoff = n_in + 45;
        std::vector<double> dp;
        const std::vector<double> p = me_photon_distribution(n_in, n_env, t, cutoff, &dp);
        for (std::size_t i = 0; i < ch.labels.size(); ++i) {
          const int k = ch.labels[i];
          const double pm = k < cutoff ? p[k] : 0.0;
          EXPECT_NEAR(ch.probs[i], pm, 1e-6) << n_in << " " << t << " " << n_env << " k=" << k;
          if (!dp.empty()) EXPECT_NEAR(ch.dprobs[i], k < cutoff ? dp[k] : 0.0, 1e-6);
        }
      }
    }
  }
}

TEST(ThermalMix, FockProbeShortTimeFisher) {
  const double n = 0.1, t = 1e-4;
  const int N = 5;
  ChannelSpec s;
  s.kappa = std::exp(-t);
  s.n_env = n;
  const double fi = classical_fisher(thermal_mix_distribution(N, s));
  const double leading = N * t * (1 + 2 * n) / (n * (1 + n)) + t / n;
  EXPECT_NEAR(fi / leading, 1.0, 1e-2);
}

TEST(ThermalMix, PassiveFisherSaturatesThermalQfi) {
  ChannelSpec s;
  s.kappa = std::exp(-40.0);
  s.n_env = 0.1;
  EXPECT_NEAR(classical_fisher(thermal_mix_distribution(5, s)), 1 / (0.1 * 1.1), 1e-6);
}
