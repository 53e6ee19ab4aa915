#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "bmetro/gaussian_state.hpp"
#include "bmetro/lindblad_model.hpp"
#include "bmetro/master_equation.hpp"
#include "bmetro/states.hpp"

using namespace bmetro;

namespace {

Operator random_density(int dim, std::mt19937& rng) {
  std::normal_distribution<double> g;
  Operator m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = Complex(g(rng), g(rng));
  Operator rho = m * m.adjoint();
  return rho / rho.trace().real();
}

}  // namespace

TEST(GaussianState, CoherentMomentsAndPhotonNumber) {
  const GaussianState s = make_gaussian(1.5, 0.0);
  EXPECT_NEAR(s.mean.x(), 3.0, 1e-15);
  EXPECT_NEAR(s.mean.y(), 0.0, 1e-15);
  EXPECT_TRUE(s.cov.isApprox(Eigen::Matrix2d::Identity(), 1e-15));
  EXPECT_NEAR(photon_number(s), 2.25, 1e-12);
}

TEST(GaussianState, SqueezedVacuum) {
  const double r = 0.7;
  const GaussianState s = make_gaussian(0.0, r);
  EXPECT_NEAR(s.cov(0, 0), std::exp(-2 * r), 1e-14);
  EXPECT_NEAR(s.cov(1, 1), std::exp(2 * r), 1e-14);
  EXPECT_NEAR(photon_number(s), std::pow(std::sinh(r), 2), 1e-12);
}

TEST(GaussianState, FrequencyProbeDisplacedAlongP) {
  const GaussianState s = make_gaussian(Complex(0.0, 1.3), 0.4);
  EXPECT_NEAR(s.mean.x(), 0.0, 1e-15);
  EXPECT_NEAR(s.mean.y(), 2.6, 1e-15);
  EXPECT_NEAR(s.cov(0, 0), std::exp(-0.8), 1e-14);
}

TEST(GaussianState, PhotonNumberProperty) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> mag(0.0, 3.0), phase(0.0, 2 * M_PI), sq(0.0, 1.5);
  for (int k = 0; k < 100; ++k) {
    const double a = mag(rng), r = sq(rng);
    const GaussianState s = make_gaussian(std::polar(a, phase(rng)), r, phase(rng));
    EXPECT_NEAR(photon_number(s), a * a + std::pow(std::sinh(r), 2), 1e-12 * (1 + a * a + std::sinh(r) * std::sinh(r)));
    EXPECT_GE(s.cov.determinant(), 1.0 - 1e-10);
    EXPECT_NO_THROW(s.validate());
  }
}

TEST(GaussianState, RejectsUnphysicalCovariance) {
  GaussianState s;
  s.cov = 0.5 * Eigen::Matrix2d::Identity();
  EXPECT_THROW(s.validate(), Error);
}

TEST(FockSpace, LadderOperators) {
  const FockSpace s(25);
  EXPECT_EQ(s.adag(), s.a().adjoint());
  for (int n = 1; n < 25; ++n) EXPECT_DOUBLE_EQ(s.a()(n - 1, n).real(), std::sqrt(static_cast<double>(n)));
  const Operator comm = s.a() * s.adag() - s.adag() * s.a();
  EXPECT_LT((comm - s.identity()).topLeftCorner(24, 24).cwiseAbs().maxCoeff(), 1e-13);
  EXPECT_NEAR(comm(24, 24).real(), -24.0, 1e-12);  // truncation edge
  EXPECT_THROW(FockSpace(1), Error);
}

TEST(FockSpace, DefaultCutoffHeuristic) {
  EXPECT_EQ(default_cutoff(0.0), 30);
  EXPECT_EQ(default_cutoff(5.0), static_cast<int>(std::ceil(5 + 10 * std::sqrt(6.0) + 20)));
}

TEST(Parameter, ParsingAndNames) {
  for (Parameter p : kAllParameters) {
    EXPECT_EQ(parse_parameter(to_string(p)), p);
    EXPECT_EQ(parse_parameter(symbol(p)), p);
  }
  EXPECT_FALSE(parse_parameter("phase").has_value());
}

TEST(LindbladModel, Validation) {
  EXPECT_THROW(LindbladModel(NoDrive{}, 0.0, 0.1, Parameter::loss), Error);
  EXPECT_THROW(LindbladModel(NoDrive{}, 1.0, -0.1, Parameter::loss), Error);
  EXPECT_THROW(LindbladModel(NoDrive{}, 1.0, 0.1, Parameter::frequency), Error);
  EXPECT_EQ(LindbladModel::for_target(Parameter::loss, 1.0, 0.0).lindblad_count(), 1);
  EXPECT_EQ(LindbladModel::for_target(Parameter::loss, 1.0, 0.2).lindblad_count(), 2);
  // dL2/dn_E diverges at n_E = 0.
  const FockSpace s(5);
  EXPECT_THROW(LindbladModel::for_target(Parameter::temperature, 1.0, 0.0).lindblad_derivatives(s), Error);
}

TEST(LindbladModel, TargetValueRoundTrip) {
  const auto m = LindbladModel(SqueezingDrive{0.3}, 2.0, 0.1, Parameter::squeezing);
  EXPECT_DOUBLE_EQ(m.target_value(), 0.3);
  EXPECT_DOUBLE_EQ(m.with_target_value(0.5).target_value(), 0.5);
  EXPECT_DOUBLE_EQ(m.with_target(Parameter::loss).with_target_value(3.0).gamma(), 3.0);
  EXPECT_DOUBLE_EQ(m.with_target(Parameter::temperature).with_target_value(0.7).n_env(), 0.7);
}

TEST(LindbladModel, LindbladDerivativesMatchFiniteDifferences) {
  const FockSpace s(8);
  for (Parameter p : {Parameter::loss, Parameter::temperature}) {
    const auto m = LindbladModel::for_target(p, 1.3, 0.4);
    const double h = 1e-6, x = m.target_value();
    const auto plus = m.with_target_value(x + h).lindblad_operators(s);
    const auto minus = m.with_target_value(x - h).lindblad_operators(s);
    const auto d = m.lindblad_derivatives(s);
    for (int j = 0; j < 2; ++j) EXPECT_LT(((plus[j] - minus[j]) / (2 * h) - d[j]).norm(), 1e-8);
  }
}

TEST(MasterEquation, RhsIsTracelessAndHermitian) {
  std::mt19937 rng(11);
  const FockSpace s(14);
  const LindbladModel models[] = {LindbladModel(FrequencyDrive{0.7}, 1.0, 0.3, Parameter::frequency),
                                  LindbladModel(DisplacementDrive{0.4}, 0.5, 0.0, Parameter::displacement),
                                  LindbladModel(SqueezingDrive{0.2}, 2.0, 1.0, Parameter::squeezing)};
  for (const auto& m : models) {
    for (int k = 0; k < 5; ++k) {
      const Operator rho = random_density(14, rng);
      const Operator d = lindblad_rhs(rho, m, s);
      EXPECT_LT(std::abs(d.trace()), 1e-12);
      EXPECT_LT((d - d.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(MasterEquation, EntrywiseDissipatorMatchesMatrixProducts) {
  std::mt19937 rng(3);
  const FockSpace s(10);
  const auto m = LindbladModel(SqueezingDrive{0.3}, 1.2, 0.4, Parameter::squeezing);
  const Operator rho = random_density(10, rng);
  Operator expected = -kI * (m.hamiltonian_matrix(s) * rho - rho * m.hamiltonian_matrix(s));
  for (const Operator& L : m.lindblad_operators(s)) {
    const Operator LdL = L.adjoint() * L;
    expected += L * rho * L.adjoint() - 0.5 * (LdL * rho + rho * LdL);
  }
  EXPECT_LT((lindblad_rhs(rho, m, s) - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(MasterEquation, DerivativeGeneratorMatchesFiniteDifference) {
  std::mt19937 rng(5);
  const FockSpace s(10);
  const Operator rho = random_density(10, rng);
  for (Parameter p : kAllParameters) {
    const auto base = LindbladModel::for_target(p, 1.1, 0.3);
    const double x = base.target_value() + 0.2, h = 1e-6;
    const auto m = base.with_target_value(x);
    const Operator fd =
        (lindblad_rhs(rho, m.with_target_value(x + h), s) - lindblad_rhs(rho, m.with_target_value(x - h), s)) /
        (2 * h);
    EXPECT_LT((LindbladGenerator(m, s).apply_derivative(rho) - fd).cwiseAbs().maxCoeff(), 1e-7) << to_string(p);
  }
}

TEST(MasterEquation, SinglePhotonDecayRate) {
  const FockSpace s(6);
  const auto m = LindbladModel::for_target(Parameter::loss, 1.7, 0.0);
  const Operator rho = density(fock_vector(s, 1));
  EXPECT_NEAR(expectation(lindblad_rhs(rho, m, s), s.number()), -1.7, 1e-14);
}

TEST(MasterEquation, IntegrationPreservesStateProperties) {
  const FockSpace s(40);
  const auto m = LindbladModel(SqueezingDrive{0.15}, 1.0, 0.2, Parameter::squeezing);
  const Operator rho0 = density(coherent_vector(s, Complex(1.0, 0.5)));
  IntegratorOptions opts;
  opts.verify = true;
  const auto r = integrate_master_equation(rho0, m, 1.5, s, opts);
  EXPECT_NO_THROW(validate_density(r.rho));
  EXPECT_LT(r.trace_drift, 1e-10);
  EXPECT_GE(r.consistency, 0.0);
  EXPECT_LT(r.consistency, 1e-8);
}

TEST(MasterEquation, ThermalStateIsStationary) {
  const FockSpace s(60);
  const auto m = LindbladModel::for_target(Parameter::loss, 1.0, 0.5);
  const Operator th = thermal_density(s, 0.5);
  const auto r = integrate_master_equation(density(fock_vector(s, 2)), m, 25.0, s);
  EXPECT_LT(trace_distance(r.rho, th), 1e-8);
}

TEST(MasterEquation, TruncationIsDetected) {
  const FockSpace s(12);
  const auto m = LindbladModel(DisplacementDrive{3.0}, 0.1, 0.0, Parameter::displacement);
  const Operator rho0 = density(fock_vector(s, 0));
  try {
    integrate_master_equation(rho0, m, 2.0, s);
    FAIL() << "expected a truncation error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), Error::Kind::numerical);
  }
}

TEST(States, GaussianVectorMatchesMoments) {
  std::mt19937 rng(19);
  std::uniform_real_distribution<double> u(-1.5, 1.5), sq(0.0, 1.0), ph(0.0, M_PI);
  const FockSpace s(90);
  for (int k = 0; k < 10; ++k) {
    const Complex alpha(u(rng), u(rng));
    const double r = sq(rng), axis = ph(rng);
    const GaussianState want = make_gaussian(alpha, r, axis);
    const GaussianState got = quadrature_moments(density(gaussian_vector(s, alpha, r, axis)), s);
    EXPECT_LT((want.mean - got.mean).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LT((want.cov - got.cov).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(States, CoherentTailThrows) {
  const FockSpace s(10);
  EXPECT_THROW(coherent_vector(s, 3.0), Error);
  EXPECT_NO_THROW(coherent_vector(FockSpace(40), 3.0));
}

TEST(States, RequiredCutoffHoldsTail) {
  const int d = required_cutoff(Complex(1.0, 1.0), 0.5);
  EXPECT_NO_THROW(gaussian_vector(FockSpace(d), Complex(1.0, 1.0), 0.5));
}

TEST(States, PoissonAndThermal) {
  const FockSpace s(80);
  EXPECT_NEAR(expectation(poisson_density(s, 4.0), s.number()), 4.0, 1e-10);
  EXPECT_NEAR(expectation(thermal_density(s, 2.0), s.number()), 2.0, 1e-6);
  EXPECT_NEAR(fidelity(poisson_density(s, 1.0), poisson_density(s, 1.0)), 1.0, 1e-10);
}
