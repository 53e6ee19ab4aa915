#include "bmetro/gaussian_state.hpp"

#include <cmath>
#include <sstream>

#include "bmetro/error.hpp"

namespace bmetro {

GaussianState GaussianState::thermal(double n_mean) {
  if (!(n_mean >= 0.0)) throw_invalid("thermal occupation must be >= 0");
  GaussianState s;
  s.cov = (1.0 + 2.0 * n_mean) * Eigen::Matrix2d::Identity();
  return s;
}

void GaussianState::validate(double tol) const {
  if (!mean.allFinite() || !cov.allFinite()) throw_invalid("Gaussian state has non-finite entries");
  if (std::abs(cov(0, 1) - cov(1, 0)) > tol) throw_invalid("covariance matrix is not symmetric");
  const double det = cov.determinant();
  if (cov(0, 0) <= 0.0 || det < 1.0 - tol) {
    std::ostringstream os;
    os << "covariance violates the uncertainty relation (det = " << det << ")";
    throw_invalid(os.str());
  }
}

double photon_number(const GaussianState& state) {
  return state.mean.squaredNorm() / 4.0 + (state.cov.trace() - 2.0) / 4.0;
}

Eigen::Matrix2d rotation(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Eigen::Matrix2d r;
  r << c, -s, s, c;
  return r;
}

GaussianState make_gaussian(Complex alpha, double r, double squeeze_axis) {
  if (!(r >= 0.0)) throw_invalid("squeezing magnitude r must be >= 0");
  GaussianState s;
  s.mean = Eigen::Vector2d(2.0 * alpha.real(), 2.0 * alpha.imag());
  const Eigen::Matrix2d rot = rotation(squeeze_axis);
  const Eigen::Vector2d diag(std::exp(-2.0 * r), std::exp(2.0 * r));
  s.cov = rot * diag.asDiagonal() * rot.transpose();
  // exact symmetry for downstream validation
  s.cov(1, 0) = s.cov(0, 1);
  return s;
}

}  // namespace bmetro
