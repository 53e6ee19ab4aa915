#include "bmetro/states.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "bmetro/error.hpp"

namespace bmetro {
namespace {

// exp(-i K) psi for hermitian K.
StateVector apply_unitary(const Operator& hermitian, const StateVector& psi) {
  Eigen::SelfAdjointEigenSolver<Operator> es(hermitian);
  const Eigen::VectorXcd phases =
      (-kI * es.eigenvalues().cast<Complex>()).array().exp().matrix();
  return es.eigenvectors() * (phases.asDiagonal() * (es.eigenvectors().adjoint() * psi));
}

// D(alpha) R(axis) S(r)|0> on a space of dimension dim.
StateVector gaussian_on(int dim, Complex alpha, double r, double axis) {
  FockSpace big(dim);
  StateVector psi = StateVector::Zero(dim);
  psi(0) = 1.0;
  if (r > 0.0) {
    const Complex zeta = std::polar(r, 2.0 * axis);
    const Operator gen =
        0.5 * (std::conj(zeta) * big.a() * big.a() - zeta * big.adag() * big.adag());
    psi = apply_unitary(kI * gen, psi);
  }
  if (alpha != Complex(0.0)) {
    const Operator gen = alpha * big.adag() - std::conj(alpha) * big.a();
    psi = apply_unitary(kI * gen, psi);
  }
  return psi;
}

Eigen::MatrixXcd sqrt_psd(const Operator& m) {
  Eigen::SelfAdjointEigenSolver<Operator> es(m);
  const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

StateVector fock_vector(const FockSpace& space, int n) {
  if (n < 0 || n >= space.dim()) throw_invalid("Fock level outside the truncated space");
  StateVector v = StateVector::Zero(space.dim());
  v(n) = 1.0;
  return v;
}

StateVector coherent_vector(const FockSpace& space, Complex alpha, double tail_tol) {
  const int d = space.dim();
  StateVector v(d);
  const double mag2 = std::norm(alpha);
  double kept = 0.0;
  for (int n = 0; n < d; ++n) {
    if (alpha == Complex(0.0)) {
      v(n) = (n == 0) ? 1.0 : 0.0;
    } else {
      const double logmag = -0.5 * mag2 + n * std::log(std::abs(alpha)) - 0.5 * std::lgamma(n + 1.0);
      v(n) = std::polar(std::exp(logmag), n * std::arg(alpha));
    }
    kept += std::norm(v(n));
  }
  if (1.0 - kept > tail_tol) {
    std::ostringstream os;
    os << "coherent state |alpha|^2 = " << mag2 << " loses " << 1.0 - kept
       << " population at cutoff " << d << "; need cutoff >= " << default_cutoff(mag2);
    throw_numerical(os.str());
  }
  return v;
}

StateVector gaussian_vector(const FockSpace& space, Complex alpha, double r, double squeeze_axis,
                            double tail_tol) {
  const int d = space.dim();
  int big = std::max(2 * d, d + 60);
  StateVector full = gaussian_on(big, alpha, r, squeeze_axis);
  // Enlarge until the kept components are insensitive to the outer truncation.
  for (int attempt = 0; attempt < 6; ++attempt) {
    const int bigger = big + big / 2;
    StateVector next = gaussian_on(bigger, alpha, r, squeeze_axis);
    const double diff = (next.head(d) - full.head(d)).norm();
    full = next;
    big = bigger;
    if (diff < 1e-13) break;
  }
  StateVector v = full.head(d);
  const double lost = full.tail(full.size() - d).squaredNorm();
  if (lost > tail_tol) {
    std::ostringstream os;
    os << "Gaussian state (|alpha|^2 = " << std::norm(alpha) << ", r = " << r << ") loses " << lost
       << " population at cutoff " << d << "; need cutoff >= " << required_cutoff(alpha, r, tail_tol);
    throw_numerical(os.str());
  }
  return v;
}

int required_cutoff(Complex alpha, double r, double tail_tol) {
  const double n_mean = std::norm(alpha) + std::sinh(r) * std::sinh(r);
  const int big = std::max(4 * default_cutoff(n_mean), 200);
  const StateVector full = gaussian_on(big, alpha, r, 0.0);
  double tail = 0.0;
  for (int n = big - 1; n >= 0; --n) {
    tail += std::norm(full(n));
    if (tail > tail_tol) return std::max(n + 1, 2);
  }
  return 2;
}

Operator density(const StateVector& psi) { return psi * psi.adjoint(); }

Operator thermal_density(const FockSpace& space, double n_env) {
  if (!(n_env >= 0.0)) throw_invalid("thermal occupation must be >= 0");
  const int d = space.dim();
  Operator rho = Operator::Zero(d, d);
  double total = 0.0;
  for (int m = 0; m < d; ++m) {
    const double p = (n_env == 0.0) ? (m == 0 ? 1.0 : 0.0)
                                    : std::exp(m * std::log(n_env) - (m + 1) * std::log1p(n_env));
    rho(m, m) = p;
    total += p;
  }
  return rho / total;
}

Operator poisson_density(const FockSpace& space, double mean_photons) {
  if (!(mean_photons >= 0.0)) throw_invalid("mean photon number must be >= 0");
  const int d = space.dim();
  Operator rho = Operator::Zero(d, d);
  double total = 0.0;
  for (int n = 0; n < d; ++n) {
    const double p = (mean_photons == 0.0)
                         ? (n == 0 ? 1.0 : 0.0)
                         : std::exp(-mean_photons + n * std::log(mean_photons) - std::lgamma(n + 1.0));
    rho(n, n) = p;
    total += p;
  }
  return rho / total;
}

std::vector<double> photon_distribution(const Operator& rho) {
  std::vector<double> p(rho.rows());
  for (Eigen::Index n = 0; n < rho.rows(); ++n) p[n] = rho(n, n).real();
  return p;
}

double tail_population(const Operator& rho, int levels) {
  double s = 0.0;
  const auto d = rho.rows();
  for (Eigen::Index n = std::max<Eigen::Index>(0, d - levels); n < d; ++n) s += rho(n, n).real();
  return s;
}

double expectation(const Operator& rho, const Operator& observable) {
  return (rho * observable).trace().real();
}

GaussianState quadrature_moments(const Operator& rho, const FockSpace& space) {
  const Operator x = space.a() + space.adag();
  const Operator p = -kI * (space.a() - space.adag());
  GaussianState g;
  const double mx = expectation(rho, x);
  const double mp = expectation(rho, p);
  g.mean = Eigen::Vector2d(mx, mp);
  g.cov(0, 0) = expectation(rho, x * x) - mx * mx;
  g.cov(1, 1) = expectation(rho, p * p) - mp * mp;
  const double sym = 0.5 * expectation(rho, x * p + p * x) - mx * mp;
  g.cov(0, 1) = sym;
  g.cov(1, 0) = sym;
  return g;
}

void validate_density(const Operator& rho) {
  if (rho.rows() != rho.cols()) throw_numerical("density matrix is not square");
  const double herm = (rho - rho.adjoint()).norm();
  if (herm > 1e-10) throw_numerical("density matrix is not hermitian");
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > 1e-8) {
    std::ostringstream os;
    os << "density matrix trace " << tr << " deviates from 1";
    throw_numerical(os.str());
  }
  Eigen::SelfAdjointEigenSolver<Operator> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    std::ostringstream os;
    os << "density matrix has negative eigenvalue " << es.eigenvalues().minCoeff();
    throw_numerical(os.str());
  }
}

double trace_distance(const Operator& rho, const Operator& sigma) {
  const Operator diff = rho - sigma;
  Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (diff + diff.adjoint()), Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double fidelity(const Operator& rho, const Operator& sigma) {
  const Operator s = sqrt_psd(rho);
  const Operator inner = s * sigma * s;
  Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (inner + inner.adjoint()), Eigen::EigenvaluesOnly);
  const double f = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return f * f;
}

}  // namespace bmetro
