#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "bmetro/cat_code.hpp"
#include "bmetro/fisher.hpp"
#include "bmetro/states.hpp"

using namespace bmetro;

TEST(CatCode, NormalizationAndPhotonNumber) {
  const FockSpace s(80);
  for (double z : {0.5, 1.0, 2.0, 6.0}) {
    for (int parity : {+1, -1}) {
      const double want = 1.0 / std::sqrt(2 * (1 + parity * std::exp(-2 * z)));
      EXPECT_NEAR(cat_normalization(z, parity), want, 1e-15);
      const CatCode c = build_cat_code(std::sqrt(z), parity, s);
      EXPECT_NEAR(c.c_alpha.norm(), 1.0, 1e-10);
      EXPECT_NEAR(c.c_ialpha.norm(), 1.0, 1e-10);
      const double n = expectation(density(c.c_alpha), s.number());
      EXPECT_NEAR(n, cat_mean_photons(z, parity), 1e-9);
      EXPECT_NEAR(cat_mean_photons(z, parity), parity > 0 ? z * std::tanh(z) : z / std::tanh(z), 1e-14);
    }
  }
  EXPECT_NEAR(cat_normalization(30.0, +1), 1 / std::sqrt(2.0), 1e-15);
}

TEST(CatCode, TailCheck) { EXPECT_THROW(build_cat_code(4.0, +1, FockSpace(15)), Error); }

TEST(CatCode, JumpFlipsParityExactly) {
  const FockSpace s(70);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> th(0, M_PI);
  for (double z : {1.0, 3.0, 8.0}) {
    const CatCode c = build_cat_code(std::sqrt(z), +1, s);
    const StateVector psi = std::cos(th(rng)) * c.c_alpha + std::sin(th(rng)) * c.c_ialpha;
    const double p = parity_expectation(psi.normalized(), s);
    EXPECT_DOUBLE_EQ(parity_expectation(apply_jump(psi.normalized(), s), s), -p);
  }
}

TEST(CatCode, JumpMapsEvenCatToOddCat) {
  const FockSpace s(70);
  const CatCode even = build_cat_code(2.0, +1, s), odd = build_cat_code(2.0, -1, s);
  EXPECT_GT(std::abs(odd.c_alpha.dot(apply_jump(even.c_alpha, s))), 1 - 1e-10);
}

TEST(CatCode, FourJumpsReturnToStart) {
  const FockSpace s(90);
  for (double z : {8.0, 10.0}) {
    const CatCode c = build_cat_code(std::sqrt(z), +1, s);
    const StateVector psi = (0.6 * c.c_alpha + 0.8 * c.c_ialpha).normalized();
    StateVector phi = psi;
    for (int k = 0; k < 4; ++k) phi = apply_jump(phi, s);
    EXPECT_GT(std::abs(psi.dot(phi)), 1 - 1e-8);
  }
}

TEST(CatCode, CodewordOverlap) {
  const FockSpace s(80);
  for (double z = 0.3; z < 6.0; z += 0.3) {
    for (int parity : {+1, -1}) {
      const CatCode c = build_cat_code(std::sqrt(z), parity, s);
      const double got = std::abs(c.c_alpha.dot(c.c_ialpha));
      const double trig = parity > 0 ? std::abs(std::cos(z)) : std::abs(std::sin(z));
      EXPECT_NEAR(got, 2 * std::exp(-z) * trig / (1 + parity * std::exp(-2 * z)), 1e-10) << z;
      if (parity > 0 || z >= 2.0) EXPECT_LE(got, 2 * std::exp(-z) + 1e-12);
    }
  }
}

TEST(ProjectedHamiltonian, LargeAmplitudeLimit) {
  const FockSpace s(90);
  const double eps = 0.3;
  for (double z : {2.0, 4.0, 8.0}) {
    const CatCode c = build_cat_code(std::sqrt(z), +1, s);
    const Eigen::Matrix2cd h = projected_hamiltonian(c, eps, s);
    EXPECT_LT(std::abs(h(0, 1)), 5 * std::exp(-z) * eps * z);
    EXPECT_LT((h - h.adjoint()).norm(), 1e-12);
    if (z >= 8.0) {
      EXPECT_NEAR(h(0, 0).real(), 2 * eps * z, 1e-2);
      EXPECT_NEAR(h(1, 1).real(), -2 * eps * z, 1e-2);
    }
  }
}

TEST(ApproximationResidual, MatchesCoherentValue) {
  const FockSpace s(100);
  const CatCode c = build_cat_code(std::sqrt(6.0), +1, s);
  EXPECT_NEAR(approximation_residual(c, s), std::sqrt(4 * 6.0 + 2), 1e-4);
  EXPECT_NEAR(approximation_residual(c, s, true), std::sqrt(4 * 6.0 + 2), 1e-4);
}

namespace {

// max over unit code states phi of ||(H - P H P) phi||, from the 2x2 Gram form.
double off_code_norm(const CatCode& c, double eps, const FockSpace& s) {
  Eigen::MatrixXcd basis(s.dim(), 2);
  basis << c.c_alpha, c.c_ialpha;
  const Eigen::MatrixXcd q = basis.householderQr().householderQ() * Eigen::MatrixXcd::Identity(s.dim(), 2);
  const Operator h = eps * (s.a() * s.a() + s.adag() * s.adag());
  const Eigen::MatrixXcd hq = h * q;
  const Eigen::MatrixXcd leak = hq - q * (q.adjoint() * hq);
  const Eigen::Matrix2cd gram = leak.adjoint() * leak;
  return std::sqrt(Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd>(gram).eigenvalues()(1));
}

}  // namespace

TEST(Leakage, DuhamelBoundHolds) {
  const FockSpace s(90);
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const double z = 1.0 + 9.0 * u(rng);
    const CatCode c = build_cat_code(std::sqrt(z), +1, s);
    const double eps = 0.01 + 0.05 * u(rng);
    const double t = 0.3 * u(rng) / (eps * std::sqrt(4 * z + 2));
    EXPECT_LE(leakage_numeric(c, eps, t, s, M_PI * u(rng)), t * off_code_norm(c, eps, s) + 1e-12);
  }
}

TEST(Leakage, AnalyticEstimateIsTheLargeAmplitudeLimit) {
  const FockSpace s(110);
  for (double z : {8.0, 12.0}) {
    const CatCode c = build_cat_code(std::sqrt(z), +1, s);
    const double eps = 0.03, N = cat_mean_photons(z, +1);
    EXPECT_NEAR(off_code_norm(c, eps, s) / (eps * std::sqrt(4 * N + 2)), 1.0, 1e-3);
  }
  const CatCode c = build_cat_code(2.0, +1, s);
  const double N = cat_mean_photons(4.0, +1), eps = 0.05;
  const double t = 0.1 / (eps * std::sqrt(4 * N + 2));
  EXPECT_NEAR(leakage_bound(t, eps, N), 0.1, 1e-14);
  EXPECT_LT(leakage_numeric(c, eps, t, s), 0.1);
}

// The estimate t eps sqrt(4N + 2) read as a strict upper bound, over
// |alpha|^2 in [2, 10]. It is a first-order quantity that the exact
// deviation reaches and, at finite amplitude, slightly exceeds.
TEST(Leakage, NumericStaysBelowAnalyticEstimate) {
  const FockSpace s(90);
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 15; ++k) {
    const double z = 2.0 + 8.0 * u(rng);
    const CatCode c = build_cat_code(std::sqrt(z), +1, s);
    const double N = cat_mean_photons(z, +1);
    const double eps = 0.01 + 0.05 * u(rng);
    const double t = 0.3 * u(rng) / (eps * std::sqrt(4 * N + 2));
    EXPECT_LE(leakage_numeric(c, eps, t, s, M_PI * u(rng)), leakage_bound(t, eps, N) + 1e-9) << "|alpha|^2 = " << z;
  }
}

TEST(Protocol, QfiAndOptimum) {
  const double N = 3.0, g = 1.5;
  EXPECT_NEAR(protocol_qfi(N, g, 0.7), 16 * N * N * std::pow(1 - std::exp(-g * 0.7), 2) / (g * g), 1e-12);
  const double t = 1e-6;
  EXPECT_NEAR(protocol_qfi(N, g, t) / (16 * N * N * t * t), 1.0, 1e-5);
  // Independent scan of 16 (1 - e^{-u})^2 / u.
  double best = 0.0, arg = 0.0;
  for (double u = 0.5; u < 3.0; u += 1e-6) {
    const double v = 16 * std::pow(1 - std::exp(-u), 2) / u;
    if (v > best) best = v, arg = u;
  }
  const ProtocolOptimum o = optimize_protocol_rate(N, g);
  EXPECT_NEAR(o.t_star * g, arg, 1e-5);
  EXPECT_NEAR(o.rate_per_n2, best, 1e-9);
  EXPECT_NEAR(o.t_star * g, 1.26, 0.01);
}

TEST(Protocol, AccumulatedPhase) {
  const double eps = 0.2, z = 3.0, g = 0.5;
  EXPECT_NEAR(accumulated_phase(eps, z, g, 1e-7) / (2 * eps * z * 1e-7), 1.0, 1e-6);
  EXPECT_NEAR(accumulated_phase(eps, z, g, 200.0), 2 * eps * z / g, 1e-12);
}

TEST(Protocol, QubitQfiMatchesSld) {
  // Two-level reduced model: |psi> = (|0> + e^{i phi}|1>)/sqrt2 with phi = 4 N eps t.
  const double N = 2.0, t = 0.3, eps = 0.0;
  const double dphi = 4 * N * t;
  Eigen::VectorXcd psi(2), dpsi(2);
  psi << 1 / std::sqrt(2.0), std::exp(Complex(0, dphi * eps)) / std::sqrt(2.0);
  dpsi << 0.0, kI * dphi / std::sqrt(2.0);
  const Operator rho = psi * psi.adjoint();
  const Operator drho = dpsi * psi.adjoint() + psi * dpsi.adjoint();
  // Without decay the protocol formula reduces to 16 N^2 t^2 at small Gamma t.
  EXPECT_NEAR(sld_qfi(rho, drho).qfi, 16 * N * N * t * t, 1e-10);
  EXPECT_NEAR(protocol_qfi(N, 1e-9, t) / (16 * N * N * t * t), 1.0, 1e-6);
}

class QecCheck : public ::testing::TestWithParam<int> {};

TEST_P(QecCheck, ConditionsHold) {
  const int N = GetParam();
  const FockSpace s(N + 10);
  const QecReport r = qec_code_check(N, s, 1.3);
  EXPECT_TRUE(r.ok());
  EXPECT_LT(r.l_residual, 1e-10);
  EXPECT_LT(r.ltl_residual, 1e-10);
  EXPECT_NEAR(r.lambda, 0.0, 1e-12);
  EXPECT_NEAR(r.mu, 1.3 * (N - 1), 1e-10);
  // <N-2| a^2 |N> = sqrt(N (N - 1)) puts the eigenvalues at +-sqrt(N (N - 1)).
  const Eigen::Vector2d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd>(r.projected_generator).eigenvalues();
  EXPECT_NEAR(ev(1), std::sqrt(N * (N - 1.0)), 1e-12);
  EXPECT_NEAR(ev(0), -std::sqrt(N * (N - 1.0)), 1e-12);
  EXPECT_NEAR(r.implied_coefficient, 4.0 * N * (N - 1), 1e-10);
}

INSTANTIATE_TEST_SUITE_P(Photons, QecCheck, ::testing::Values(2, 3, 4, 6, 9));
