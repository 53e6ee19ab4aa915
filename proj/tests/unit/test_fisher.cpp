#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "bmetro/fisher.hpp"
#include "bmetro/master_equation.hpp"
#include "bmetro/states.hpp"
#include "bmetro/thermal_channel.hpp"

using namespace bmetro;

namespace {

Operator random_hermitian(int d, std::mt19937& rng) {
  std::normal_distribution<double> g;
  Operator m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = Complex(g(rng), g(rng));
  return (m + m.adjoint()) / 2.0;
}

Operator random_full_rank(int d, std::mt19937& rng) {
  Operator m = random_hermitian(d, rng);
  Operator rho = m * m.adjoint() + 0.05 * Operator::Identity(d, d);
  return rho / rho.trace().real();
}

OutcomeDistribution make_dist(std::vector<double> p, std::vector<double> dp) {
  OutcomeDistribution d;
  for (std::size_t i = 0; i < p.size(); ++i) d.labels.push_back(static_cast<int>(i));
  d.probs = std::move(p);
  d.dprobs = std::move(dp);
  return d;
}

}  // namespace

TEST(ClassicalFisher, Basics) {
  EXPECT_NEAR(classical_fisher(make_dist({0.25, 0.75}, {0.5, -0.5})), 0.25 / 0.25 + 0.25 / 0.75, 1e-14);
  EXPECT_DOUBLE_EQ(classical_fisher(make_dist({1.0, 0.0}, {0.0, 0.0})), 0.0);
  EXPECT_THROW(classical_fisher(make_dist({1.0, 0.0}, {-0.1, 0.1})), Error);
}

TEST(ClassicalFisher, AdditiveOverIndependentCopies) {
  // Kept away from the 1e-14 probability floor so no product outcome is skipped.
  const auto one = make_dist({0.1, 0.2, 0.3, 0.4}, {0.05, -0.1, 0.2, -0.15});
  OutcomeDistribution two;
  for (std::size_t i = 0; i < one.size(); ++i)
    for (std::size_t j = 0; j < one.size(); ++j) {
      two.labels.push_back(static_cast<int>(i * one.size() + j));
      two.probs.push_back(one.probs[i] * one.probs[j]);
      two.dprobs.push_back(one.dprobs[i] * one.probs[j] + one.probs[i] * one.dprobs[j]);
    }
  EXPECT_NEAR(classical_fisher(two), 2 * classical_fisher(one), 1e-14);

  ChannelSpec s;
  s.kappa = 0.7;
  s.n_env = 0.3;
  const OutcomeDistribution ch = thermal_mix_distribution(3, s);
  OutcomeDistribution ch2;
  for (std::size_t i = 0; i < ch.size(); ++i)
    for (std::size_t j = 0; j < ch.size(); ++j) {
      ch2.labels.push_back(static_cast<int>(i * ch.size() + j));
      ch2.probs.push_back(ch.probs[i] * ch.probs[j]);
      ch2.dprobs.push_back(ch.dprobs[i] * ch.probs[j] + ch.probs[i] * ch.dprobs[j]);
    }
  // Outcomes below the floor drop out of the product; their share is tiny.
  EXPECT_NEAR(classical_fisher(ch2), 2 * classical_fisher(ch), 1e-9);
}

TEST(ClassicalFisher, MergingProportionalOutcomesIsLossless) {
  // Outcomes 0 and 1 share dp/p = 2; merging them keeps the information.
  const auto full = make_dist({0.1, 0.2, 0.7}, {0.2, 0.4, -0.6});
  const auto merged = full.coarse_grain([](int l) { return l < 2 ? 0 : 1; });
  EXPECT_NEAR(classical_fisher(merged), classical_fisher(full), 1e-14);
  const auto lossy = full.coarse_grain([](int l) { return l == 1 ? 0 : 1; });
  EXPECT_LT(classical_fisher(lossy), classical_fisher(full));
}

TEST(OutcomeDistribution, NormalizationChecks) {
  auto bad = make_dist({0.5, 0.4}, {0.0, 0.0});
  EXPECT_THROW(bad.normalize_and_check(), Error);
  auto tiny = make_dist({1.0, -1e-13}, {0.0, 0.0});
  EXPECT_NO_THROW(tiny.normalize_and_check());
  EXPECT_EQ(tiny.probs[1], 0.0);
}

TEST(Sld, SolvesDefiningEquation) {
  std::mt19937 rng(8);
  for (int k = 0; k < 10; ++k) {
    const Operator rho = random_full_rank(8, rng);
    Operator drho = random_hermitian(8, rng);
    drho -= drho.trace() / 8.0 * Operator::Identity(8, 8);
    const SldResult r = sld_qfi(rho, drho);
    EXPECT_LT(((rho * r.sld + r.sld * rho) / 2.0 - drho).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_NEAR(r.qfi, (rho * r.sld * r.sld).trace().real(), 1e-9 * r.qfi);
  }
}

TEST(Sld, OptimalObservableAttainsQfi) {
  std::mt19937 rng(9);
  for (int k = 0; k < 50; ++k) {
    const Operator rho = random_full_rank(6, rng);
    Operator drho = random_hermitian(6, rng);
    drho -= drho.trace() / 6.0 * Operator::Identity(6, 6);
    const SldResult r = sld_qfi(rho, drho);
    EXPECT_NEAR(max_snr_check(rho, drho, r.sld), r.qfi, 1e-8 * std::max(1.0, r.qfi));
    for (int j = 0; j < 20; ++j) EXPECT_LE(max_snr_check(rho, drho, random_hermitian(6, rng)), r.qfi * (1 + 1e-10));
  }
}

TEST(Sld, RejectsNonHermitianDerivative) {
  const Operator rho = Operator::Identity(3, 3) / 3.0;
  Operator drho = Operator::Zero(3, 3);
  drho(0, 1) = 1.0;
  EXPECT_THROW(sld_qfi(rho, drho), Error);
}

TEST(Sld, ThermalFamily) {
  const int d = 250;
  for (double n : {0.05, 0.1, 0.5, 2.0}) {
    Operator rho = Operator::Zero(d, d), drho = Operator::Zero(d, d);
    for (int m = 0; m < d; ++m) {
      rho(m, m) = thermal_weight(m, n);
      drho(m, m) = thermal_weight_derivative(m, n);
    }
    EXPECT_NEAR(sld_qfi(rho, drho).qfi * n * (1 + n), 1.0, 1e-8) << n;
  }
}

TEST(Sld, PureStateRankDeficiency) {
  // |psi(theta)> = cos theta |0> + sin theta |1>: QFI = 4.
  const double th = 0.3;
  Eigen::VectorXcd psi(3), dpsi(3);
  psi << std::cos(th), std::sin(th), 0.0;
  dpsi << -std::sin(th), std::cos(th), 0.0;
  const Operator rho = psi * psi.adjoint();
  const Operator drho = dpsi * psi.adjoint() + psi * dpsi.adjoint();
  EXPECT_NEAR(sld_qfi(rho, drho).qfi, 4.0, 1e-10);
}

TEST(DataProcessing, CountingNeverBeatsQfi) {
  const FockSpace s(45);
  for (Parameter p : {Parameter::loss, Parameter::temperature}) {
    for (double n : {0.1, 1.0}) {
      const auto m = LindbladModel::for_target(p, 1.0, n);
      for (const Operator& rho0 : {density(fock_vector(s, 3)), density(coherent_vector(s, 1.5)),
                                   density(gaussian_vector(s, 0.0, 0.6))}) {
        for (double t : {0.05, 0.5, 2.0}) {
          const auto r = integrate_with_sensitivity(rho0, Operator::Zero(45, 45), m, t, s);
          const OutcomeDistribution counting = photon_counting(r.rho, r.drho);
          const double qfi = sld_qfi(r.rho, r.drho).qfi;
          EXPECT_LE(classical_fisher(counting), qfi + 1e-6);
          EXPECT_LE(classical_fisher(parity_outcomes(counting)), classical_fisher(counting) + 1e-12);
        }
      }
    }
  }
}

TEST(DataProcessing, FockProbeCountingIsOptimalForTemperature) {
  const FockSpace s(40);
  const auto m = LindbladModel::for_target(Parameter::temperature, 1.0, 0.1);
  const auto r = integrate_with_sensitivity(density(fock_vector(s, 5)), Operator::Zero(40, 40), m, 0.01, s);
  const double qfi = sld_qfi(r.rho, r.drho).qfi;
  EXPECT_NEAR(classical_fisher(photon_counting(r.rho, r.drho)) / qfi, 1.0, 0.02);
}

TEST(Parity, ShortTimeLossPrediction) {
  const double N = 1.0, n = 0.1;
  const double t = 1e-3 / (N * (1 + n));
  const auto m = LindbladModel::for_target(Parameter::loss, 1.0, n);
  const FockSpace s(required_cutoff(0.0, std::asinh(std::sqrt(N))) + 10);
  const auto r = parity_fisher_squeezed_vacuum(std::asinh(std::sqrt(N)), m, t, s);
  EXPECT_NEAR(r.short_time_prediction, t * (N * (1 + 2 * n) + n), 1e-15);
  EXPECT_NEAR(r.parity_fi / r.short_time_prediction, 1.0, 0.02);
  EXPECT_LE(r.parity_fi, r.counting_fi + 1e-12);
}

TEST(FiniteDifference, AgreesWithSensitivityEquation) {
  const FockSpace s(40);
  const Operator rho0 = density(coherent_vector(s, Complex(0.8, 0.6)));
  for (Parameter p : kAllParameters) {
    const auto m = LindbladModel::for_target(p, 1.0, 0.2);
    const auto exact = integrate_with_sensitivity(rho0, Operator::Zero(40, 40), m, 0.7, s);
    const auto fd = finite_difference_sensitivity(rho0, m, 0.7, s);
    EXPECT_LT((exact.drho - fd.drho).cwiseAbs().maxCoeff(), 1e-6) << to_string(p);
    EXPECT_LT(fd.richardson_error, 1e-4);
  }
}
