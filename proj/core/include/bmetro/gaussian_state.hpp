#pragma once

#include <Eigen/Dense>

#include "bmetro/types.hpp"

namespace bmetro {

/// Single-mode Gaussian state in the quadrature convention x = a + a',
/// p = -i(a - a'). The vacuum has mean 0 and covariance I, so a coherent
/// amplitude alpha sits at mean (2 Re alpha, 2 Im alpha).
struct GaussianState {
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  Eigen::Matrix2d cov = Eigen::Matrix2d::Identity();

  static GaussianState vacuum() { return {}; }
  static GaussianState thermal(double n_mean);

  /// Throws invalid_argument unless cov is symmetric and det(cov) >= 1
  /// (single-mode uncertainty relation), both to `tol`.
  void validate(double tol = 1e-10) const;

  /// <a> in the same convention.
  Complex amplitude() const { return {mean.x() / 2.0, mean.y() / 2.0}; }
};

double photon_number(const GaussianState& state);

/// Phase-space rotation matrix R(theta) = [[cos, -sin], [sin, cos]].
Eigen::Matrix2d rotation(double theta);

/// D(alpha) R(axis) S(r)|0>: covariance R(axis) diag(e^{-2r}, e^{2r}) R(axis)^T,
/// so axis = 0 squeezes the x quadrature.
GaussianState make_gaussian(Complex alpha, double r, double squeeze_axis = 0.0);

}  // namespace bmetro
