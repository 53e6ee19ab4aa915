#pragma once

#include <vector>

#include <Eigen/Sparse>

#include "bmetro/fock_space.hpp"
#include "bmetro/lindblad_model.hpp"
#include "bmetro/ode.hpp"
#include "bmetro/types.hpp"

namespace bmetro {

/// The thermal-loss Lindbladian on a truncated space, plus its derivative
/// with respect to the model's target parameter. Dissipators are applied
/// entrywise; they reproduce the products of the truncated matrices a, a'
/// exactly (including (a a')_{D-1,D-1} = 0), so the generator is traceless.
class LindbladGenerator {
 public:
  LindbladGenerator(const LindbladModel& model, const FockSpace& space);

  int dim() const noexcept { return dim_; }

  /// -i[H, rho] + sum_j (L_j rho L_j' - {L_j' L_j, rho}/2)
  Operator apply(const Operator& rho) const;
  /// d/d(target) of the generator, applied to rho.
  Operator apply_derivative(const Operator& rho) const;

 private:
  using Sparse = Eigen::SparseMatrix<Complex>;

  void add_dissipators(const Operator& rho, double loss, double gain, Operator& out) const;
  static void add_commutator(const Sparse& h, const Operator& rho, Operator& out);

  int dim_;
  Sparse h_;
  Sparse dh_;
  bool has_h_ = false;
  bool has_dh_ = false;
  double loss_ = 0.0;   // Gamma (1 + n_E)
  double gain_ = 0.0;   // Gamma n_E
  double dloss_ = 0.0;  // d/d(target) of loss_
  double dgain_ = 0.0;
};

/// dρ/dt for the model; throws invalid_argument on dimension mismatch.
Operator lindblad_rhs(const Operator& rho, const LindbladModel& model, const FockSpace& space);

struct IntegratorOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double tail_tol = kTailTolerance;
  /// Repeat with tolerances tightened 100x and record the trace distance
  /// between the two results in `consistency`.
  bool verify = false;
};

struct IntegrationResult {
  double t = 0.0;
  Operator rho;
  Operator drho;  // empty unless a sensitivity was integrated
  OdeStats stats;
  double trace_drift = 0.0;
  double consistency = -1.0;  // < 0 when not verified
};

/// Adaptive Runge-Kutta solution of the master equation up to time t.
/// Throws numerical when the population in the top two Fock levels exceeds
/// tail_tol, naming a larger cutoff.
IntegrationResult integrate_master_equation(const Operator& rho0, const LindbladModel& model, double t,
                                            const FockSpace& space, const IntegratorOptions& options = {});

/// Joint integration of rho and d(rho)/d(target):
///   d(drho)/dt = L(drho) + (dL/dtarget)(rho).
IntegrationResult integrate_with_sensitivity(const Operator& rho0, const Operator& drho0,
                                             const LindbladModel& model, double t, const FockSpace& space,
                                             const IntegratorOptions& options = {});

/// Sensitivity trajectory reported at each of `times` (ascending, >= 0).
std::vector<IntegrationResult> sensitivity_trajectory(const Operator& rho0, const Operator& drho0,
                                                      const LindbladModel& model,
                                                      const std::vector<double>& times,
                                                      const FockSpace& space,
                                                      const IntegratorOptions& options = {});

}  // namespace bmetro
