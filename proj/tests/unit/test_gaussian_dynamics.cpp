#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "bmetro/fisher.hpp"
#include "bmetro/gaussian_dynamics.hpp"
#include "bmetro/master_equation.hpp"
#include "bmetro/states.hpp"

using namespace bmetro;

namespace {

// Homodyne SNR written out by hand from the moment solution.
double snr_frequency(double alpha_p, double r, double gamma, double n, double t) {
  const double e = std::exp(-gamma * t);
  return 4 * alpha_p * alpha_p * t * t * e / (e * std::exp(-2 * r) + (1 - e) * (1 + 2 * n));
}

double snr_displacement(double r, double gamma, double n, double t) {
  const double e = std::exp(-gamma * t);
  const double slope = 4 * (1 - std::exp(-gamma * t / 2)) / gamma;
  return slope * slope / (e * std::exp(-2 * r) + (1 - e) * (1 + 2 * n));
}

double snr_loss(double alpha, double gamma, double n, double t) {
  const double e = std::exp(-gamma * t);
  return alpha * alpha * t * t * e / (e + (1 - e) * (1 + 2 * n));
}

}  // namespace

TEST(EvolveMoments, SemigroupProperty) {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int k = 0; k < 50; ++k) {
    const GaussianState s = make_gaussian(Complex(u(rng) - 1, u(rng) - 1), 0.5 * u(rng), u(rng));
    const LindbladModel models[] = {LindbladModel(FrequencyDrive{u(rng)}, 0.5 + u(rng), u(rng), Parameter::frequency),
                                    LindbladModel(DisplacementDrive{u(rng)}, 0.5 + u(rng), u(rng),
                                                  Parameter::displacement)};
    for (const auto& m : models) {
      const double t1 = u(rng), t2 = u(rng);
      const GaussianState once = evolve_moments(s, m, t1 + t2);
      const GaussianState twice = evolve_moments(evolve_moments(s, m, t1), m, t2);
      EXPECT_LT((once.mean - twice.mean).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_LT((once.cov - twice.cov).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(EvolveMoments, CovarianceStaysPhysical) {
  const GaussianState s = make_gaussian(0.0, 1.2, 0.3);
  for (double n : {0.0, 0.1, 2.0}) {
    const auto m = LindbladModel::for_target(Parameter::frequency, 1.0, n);
    for (double t = 0.0; t < 20.0; t += 0.01) EXPECT_GE(evolve_moments(s, m, t).cov.determinant(), 1.0 - 1e-10);
  }
}

TEST(EvolveMoments, SqueezedVarianceFormula) {
  const double r = 0.8, n = 0.3, g = 1.4, t = 0.9;
  const auto m = LindbladModel::for_target(Parameter::frequency, g, n);
  const GaussianState s = evolve_moments(make_gaussian(Complex(0, 1.0), r), m, t);
  const double e = std::exp(-g * t);
  EXPECT_NEAR(s.cov(0, 0), e * std::exp(-2 * r) + (1 - e) * (1 + 2 * n), 1e-14);
}

TEST(EvolveMoments, RejectsSqueezingAndNegativeTime) {
  const auto sq = LindbladModel::for_target(Parameter::squeezing, 1.0, 0.1);
  EXPECT_THROW(evolve_moments(GaussianState::vacuum(), sq, 1.0), Error);
  EXPECT_THROW(evolve_moments(GaussianState::vacuum(), LindbladModel::for_target(Parameter::loss), -1.0), Error);
}

TEST(HomodyneSnr, FrequencyMatchesClosedForm) {
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> u(0.05, 2.0);
  for (int k = 0; k < 100; ++k) {
    const double a = u(rng), r = 0.5 * u(rng), g = u(rng), n = u(rng), t = u(rng);
    const auto m = LindbladModel::for_target(Parameter::frequency, g, n);
    const double got = homodyne_snr(make_gaussian(Complex(0, a), r), m, t).snr;
    const double want = snr_frequency(a, r, g, n, t);
    EXPECT_LT(std::abs(got - want) / want, 1e-12);
  }
}

TEST(HomodyneSnr, CoherentFrequencyZeroTemperature) {
  const double N = 3.0;
  const auto m = LindbladModel::for_target(Parameter::frequency, 1.0, 0.0);
  for (double t : {0.1, 1.0, 3.0})
    EXPECT_NEAR(homodyne_snr(make_gaussian(Complex(0, std::sqrt(N)), 0), m, t).rate, 4 * N * t * std::exp(-t), 1e-12);
}

TEST(HomodyneSnr, DisplacementSqueezedVacuum) {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(0.05, 2.0);
  for (int k = 0; k < 20; ++k) {
    const double r = 0.5 * u(rng), g = u(rng), n = u(rng), t = u(rng);
    const auto m = LindbladModel::for_target(Parameter::displacement, g, n);
    const double got = homodyne_snr(make_gaussian(0.0, r), m, t).snr;
    EXPECT_LT(std::abs(got / snr_displacement(r, g, n, t) - 1), 1e-12);
  }
}

TEST(HomodyneSnr, LossCoherent) {
  const auto m = LindbladModel::for_target(Parameter::loss, 0.8, 0.2);
  EXPECT_LT(std::abs(homodyne_snr(make_gaussian(1.3, 0), m, 0.7).snr / snr_loss(1.3, 0.8, 0.2, 0.7) - 1), 1e-12);
}

TEST(HomodyneSnr, RejectsUninformativeTargets) {
  EXPECT_THROW(homodyne_snr(GaussianState::vacuum(), LindbladModel::for_target(Parameter::temperature, 1, 0.1), 1),
               Error);
  EXPECT_THROW(homodyne_snr(GaussianState::vacuum(), LindbladModel(FrequencyDrive{0.5}, 1, 0, Parameter::frequency), 1),
               Error);
}

TEST(IterationTime, CoherentFrequencyOptimum) {
  const double N = 4.0;
  const auto o = optimize_iteration_time(make_gaussian(Complex(0, 2.0), 0),
                                         LindbladModel::for_target(Parameter::frequency, 1.0, 0.0));
  EXPECT_NEAR(o.t_star, 1.0, 1e-6);
  EXPECT_NEAR(o.rate_star, 4 * N / M_E, 1e-9);
}

TEST(IterationTime, CoherentDisplacementRatio) {
  const auto o = optimize_iteration_time(make_gaussian(1.0, 0), LindbladModel::for_target(Parameter::displacement));
  // max_u 4 (1 - e^{-u/2})^2 / u, found independently on a fine grid.
  double best = 0.0;
  for (double u = 0.01; u < 10; u += 1e-5) best = std::max(best, 4 * std::pow(1 - std::exp(-u / 2), 2) / u);
  EXPECT_NEAR(o.rate_star / 4.0, best, 1e-9);
  EXPECT_NEAR(o.rate_star / 4.0, 0.815, 0.005);
}

TEST(IterationTime, CoherentLossRatio) {
  const double N = 2.5;
  const auto o = optimize_iteration_time(make_gaussian(std::sqrt(N), 0), LindbladModel::for_target(Parameter::loss));
  EXPECT_NEAR(o.t_star, 1.0, 1e-6);
  EXPECT_NEAR(o.rate_star, N / M_E, 1e-9);
}

TEST(EffectiveThermalPhotons, Limits) {
  const double s2 = 0.3, g = 2.0;
  EXPECT_NEAR(effective_thermal_photons(s2, g, 60.0), 16 * s2 / (g * g), 1e-12);
  EXPECT_DOUBLE_EQ(effective_thermal_photons(s2, g, 0.0), 0.0);
  // Leading term of the formula: 4 sigma^2 t / Gamma.
  const double t = 1e-6;
  EXPECT_NEAR(effective_thermal_photons(s2, g, t) / (4 * s2 * t / g), 1.0, 1e-5);
}

TEST(CrossModule, MomentsMatchMasterEquation) {
  const FockSpace s(60);
  const auto m = LindbladModel(DisplacementDrive{0.3}, 1.0, 0.2, Parameter::displacement);
  const Complex alpha(0.6, -0.4);
  const double r = 0.5;
  const Operator rho0 = density(gaussian_vector(s, alpha, r));
  for (double t : {0.3, 1.0, 2.5}) {
    const auto fock = quadrature_moments(integrate_master_equation(rho0, m, t, s).rho, s);
    const auto gauss = evolve_moments(make_gaussian(alpha, r), m, t);
    EXPECT_LT((fock.mean - gauss.mean).cwiseAbs().maxCoeff(), 1e-7);
    EXPECT_LT((fock.cov - gauss.cov).cwiseAbs().maxCoeff(), 1e-7);
  }
}

TEST(CrossModule, HomodyneNeverExceedsQfi) {
  const FockSpace s(50);
  struct Case {
    Parameter p;
    Complex alpha;
    double r;
  };
  const Case cases[] = {{Parameter::frequency, Complex(0, 1.2), 0.0},
                        {Parameter::frequency, Complex(0, 0.8), 0.5},
                        {Parameter::displacement, 0.0, 0.6},
                        {Parameter::loss, 1.1, 0.0}};
  for (const auto& c : cases) {
    for (double n : {0.0, 0.2}) {
      const auto m = LindbladModel::for_target(c.p, 1.0, n);
      const Operator rho0 = density(gaussian_vector(s, c.alpha, c.r));
      for (double t : {0.2, 1.0}) {
        const auto r = integrate_with_sensitivity(rho0, Operator::Zero(50, 50), m, t, s);
        const double qfi = sld_qfi(r.rho, r.drho).qfi;
        const double snr = homodyne_snr(make_gaussian(c.alpha, c.r), m, t).snr;
        EXPECT_LE(snr, qfi + 1e-6) << to_string(c.p) << " n=" << n << " t=" << t;
      }
    }
  }
}
