#pragma once

#include <vector>

#include "bmetro/fock_space.hpp"
#include "bmetro/lindblad_model.hpp"

namespace bmetro {

/// Gauge freedom h = [[h00, hvec'], [hvec, hmat]] of the Lindblad
/// representation; hmat is hermitian by construction because only its
/// upper triangle is stored in the real parameterisation.
struct HCorrection {
  double h00 = 0.0;
  Eigen::VectorXcd hvec;
  Eigen::MatrixXcd hmat;

  static HCorrection zero(int lindblad_count);
  int lindblad_count() const { return static_cast<int>(hvec.size()); }

  /// Real coordinates [h00, Re/Im hvec_j, hmat_jj, Re/Im hmat_jk (j < k)];
  /// 4 entries for J = 1, 9 for J = 2.
  Eigen::VectorXd to_params() const;
  static HCorrection from_params(const Eigen::VectorXd& x, int lindblad_count);
  static int param_count(int lindblad_count) { return 1 + 2 * lindblad_count + lindblad_count * lindblad_count; }
};

struct ABOperators {
  Operator a_op;
  Operator b_op;
};

/// a(h) = sum_j K_j' K_j with K = i*Ldot + hmat L + hvec,
/// b(h) = Hdot - (i/2)(Ldot' L - L' Ldot) + h00 + L' hvec + hvec' L + L' hmat L.
/// With general = false the Ldot terms are omitted (Hamiltonian targets).
ABOperators ab_operators(const HCorrection& h, const LindbladModel& model, const FockSpace& space,
                         bool general);

/// Both operators as affine functions of the real coordinates x:
///   K_j(x) = K_j0 + sum_p x_p K_jp,   b(x) = B_0 + sum_p x_p B_p.
struct AffineH {
  int lindblad_count = 0;
  std::vector<Operator> k0;                // per j
  std::vector<std::vector<Operator>> kp;   // [p][j]
  Operator b0;
  std::vector<Operator> bp;                // per p

  int params() const { return static_cast<int>(bp.size()); }

  /// <a(x)> = x'Qx + 2 q'x + c on rho.
  void a_quadratic(const Operator& rho, Eigen::MatrixXd& Q, Eigen::VectorXd& q, double& c) const;
  /// <b(x)^2> = x'Qx + 2 q'x + c on rho.
  void b2_quadratic(const Operator& rho, Eigen::MatrixXd& Q, Eigen::VectorXd& q, double& c) const;
};

AffineH affine_h(const LindbladModel& model, const FockSpace& space, bool general);

}  // namespace bmetro
