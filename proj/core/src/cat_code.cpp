#include "bmetro/cat_code.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "bmetro/error.hpp"
#include "bmetro/lindblad_model.hpp"
#include "bmetro/states.hpp"

namespace bmetro {
namespace {

void check_parity(int parity) {
  if (parity != 1 && parity != -1) throw_invalid("cat parity must be +1 or -1");
}

// exp(-i t K) psi for hermitian K.
StateVector evolve(const Operator& k, double t, const StateVector& psi) {
  Eigen::SelfAdjointEigenSolver<Operator> es(k);
  const Eigen::VectorXcd phases = (-kI * t * es.eigenvalues().cast<Complex>()).array().exp().matrix();
  return es.eigenvectors() * (phases.asDiagonal() * (es.eigenvectors().adjoint() * psi));
}

// Loewdin-orthonormalised code basis as columns.
Eigen::MatrixXcd code_basis(const CatCode& code) {
  Eigen::MatrixXcd v(code.c_alpha.size(), 2);
  v.col(0) = code.c_alpha;
  v.col(1) = code.c_ialpha;
  const Eigen::Matrix2cd s = v.adjoint() * v;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(s);
  const Eigen::Vector2d inv_sqrt = es.eigenvalues().cwiseSqrt().cwiseInverse();
  const Eigen::Matrix2cd s_inv_half =
      es.eigenvectors() * inv_sqrt.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  return v * s_inv_half;
}

}  // namespace

double cat_normalization(double alpha_sq, int parity) {
  check_parity(parity);
  if (alpha_sq < 0.0) throw_invalid("|alpha|^2 must be >= 0");
  const double overlap = std::exp(-2.0 * alpha_sq);
  const double s = 2.0 * (1.0 + parity * overlap);
  if (s <= 0.0) throw_invalid("odd cat state is undefined at alpha = 0");
  return 1.0 / std::sqrt(s);
}

double cat_mean_photons(double alpha_sq, int parity) {
  check_parity(parity);
  if (alpha_sq == 0.0) {
    if (parity < 0) throw_invalid("odd cat state is undefined at alpha = 0");
    return 0.0;
  }
  return parity > 0 ? alpha_sq * std::tanh(alpha_sq) : alpha_sq / std::tanh(alpha_sq);
}

CatCode build_cat_code(Complex alpha, int parity, const FockSpace& space, double tail_tol) {
  check_parity(parity);
  CatCode code;
  code.alpha = alpha;
  code.parity = parity;
  code.normalization = cat_normalization(std::norm(alpha), parity);
  const Complex ia = kI * alpha;
  code.c_alpha = code.normalization *
                 (coherent_vector(space, alpha, tail_tol) + double(parity) * coherent_vector(space, -alpha, tail_tol));
  code.c_ialpha = code.normalization *
                  (coherent_vector(space, ia, tail_tol) + double(parity) * coherent_vector(space, -ia, tail_tol));
  return code;
}

Eigen::Matrix2cd projected_hamiltonian(const CatCode& code, double epsilon, const FockSpace& space) {
  const Eigen::MatrixXcd e = code_basis(code);
  const Operator h = epsilon * (space.a() * space.a() + space.adag() * space.adag());
  return e.adjoint() * h * e;
}

double protocol_qfi(double mean_photons, double gamma, double t) {
  if (!(t >= 0.0)) throw_invalid("time must be >= 0");
  if (!(gamma > 0.0)) throw_invalid("Gamma must be > 0");
  const double decay = -std::expm1(-gamma * t);
  return 16.0 * mean_photons * mean_photons * decay * decay / (gamma * gamma);
}

double accumulated_phase(double epsilon, double alpha_sq, double gamma, double t) {
  if (!(t >= 0.0)) throw_invalid("time must be >= 0");
  if (!(gamma > 0.0)) throw_invalid("Gamma must be > 0");
  return 2.0 * epsilon * alpha_sq * -std::expm1(-gamma * t) / gamma;
}

ProtocolOptimum optimize_protocol_rate(double mean_photons, double gamma) {
  if (!(mean_photons > 0.0)) throw_invalid("photon number must be > 0");
  auto rate = [&](double t) { return protocol_qfi(mean_photons, gamma, t) / t; };
  const ScalarOptimum best = maximize_unimodal(rate, 1e-3 / gamma, 20.0 / gamma);
  ProtocolOptimum out;
  out.t_star = best.x;
  out.rate_star = best.value;
  out.rate_per_n2 = best.value * gamma / (mean_photons * mean_photons);
  return out;
}

double leakage_bound(double t, double epsilon, double mean_photons) {
  if (t < 0.0 || epsilon < 0.0 || mean_photons < 0.0) throw_invalid("leakage bound needs nonnegative inputs");
  return t * epsilon * std::sqrt(4.0 * mean_photons + 2.0);
}

double approximation_residual(const CatCode& code, const FockSpace& space, bool ialpha) {
  const Operator g = space.a() * space.a() + space.adag() * space.adag();
  const double shift = 2.0 * (code.alpha * code.alpha).real();
  const StateVector& c = ialpha ? code.c_ialpha : code.c_alpha;
  return (g * c - (ialpha ? -shift : shift) * c).norm();
}

double leakage_numeric(const CatCode& code, double epsilon, double t, const FockSpace& space, double theta) {
  const Eigen::MatrixXcd e = code_basis(code);
  const Eigen::Vector2cd coeff(std::cos(theta), std::sin(theta));
  const StateVector psi = e * coeff;
  const Operator h = epsilon * (space.a() * space.a() + space.adag() * space.adag());
  const StateVector exact = evolve(h, t, psi);
  const Eigen::Matrix2cd hp = e.adjoint() * h * e;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(hp);
  const Eigen::Vector2cd phases = (-kI * t * es.eigenvalues().cast<Complex>()).array().exp().matrix();
  const Eigen::Vector2cd ideal = es.eigenvectors() * (phases.asDiagonal() * (es.eigenvectors().adjoint() * coeff));
  return (exact - e * ideal).norm();
}

StateVector apply_jump(const StateVector& psi, const FockSpace& space) {
  const StateVector out = space.a() * psi;
  const double n = out.norm();
  if (n == 0.0) throw_invalid("jump annihilates the state");
  return out / n;
}

double parity_expectation(const StateVector& psi, const FockSpace& space) {
  return (psi.adjoint() * space.parity() * psi)(0, 0).real() / psi.squaredNorm();
}

QecReport qec_code_check(int photons, const FockSpace& space, double gamma) {
  if (photons < 2) throw_invalid("code needs N >= 2");
  if (photons >= space.dim()) throw_invalid("cutoff must exceed N");
  if (!(gamma > 0.0)) throw_invalid("Gamma must be > 0");

  // Code vectors as (system x ancilla) coefficient matrices.
  const int d = space.dim();
  const double s = 1.0 / std::sqrt(2.0);
  std::array<Eigen::MatrixXcd, 2> code{Eigen::MatrixXcd::Zero(d, 2), Eigen::MatrixXcd::Zero(d, 2)};
  code[0](photons - 2, 0) = s;
  code[0](photons, 0) = s;
  code[1](photons - 2, 1) = s;
  code[1](photons, 1) = -s;

  auto compress = [&](const Operator& x) {
    Eigen::Matrix2cd m;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) m(i, j) = (code[i].adjoint() * x * code[j]).trace();
    }
    return m;
  };
  auto scalar_residual = [](const Eigen::Matrix2cd& m, double& value) {
    const Complex c = 0.5 * m.trace();
    value = c.real();
    return (m - c * Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() + std::abs(c.imag());
  };

  QecReport r;
  r.photons = photons;
  const Operator l = std::sqrt(gamma) * space.a();
  r.projected_generator = compress(squeezing_generator(space));
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(r.projected_generator);
  r.generator_gap = es.eigenvalues()(1) - es.eigenvalues()(0);
  r.implied_coefficient = r.generator_gap * r.generator_gap;
  r.generator_nontrivial = r.generator_gap > 1e-10;

  const Eigen::Matrix2cd pl = compress(l);
  r.l_residual = (pl - 0.5 * pl.trace() * Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
  r.lambda = std::abs(0.5 * pl.trace());
  r.ltl_residual = scalar_residual(compress(l.adjoint() * l), r.mu);

  if (!r.generator_nontrivial) r.failures.emplace_back("projected generator is proportional to the identity");
  if (r.l_residual > 1e-10) r.failures.emplace_back("projected jump operator is not a multiple of the identity");
  if (r.ltl_residual > 1e-10) r.failures.emplace_back("projected L'L is not a multiple of the identity");
  return r;
}

}  // namespace bmetro
