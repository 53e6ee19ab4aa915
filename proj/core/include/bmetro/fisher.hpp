#pragma once

#include "bmetro/fock_space.hpp"
#include "bmetro/lindblad_model.hpp"
#include "bmetro/master_equation.hpp"
#include "bmetro/outcome_distribution.hpp"

namespace bmetro {

/// sum_i dp_i^2 / p_i. Outcomes with p_i < 1e-14 are skipped when their
/// derivative is below 1e-10; otherwise the information diverges and a
/// numerical error is raised.
double classical_fisher(const OutcomeDistribution& dist);

/// Photon-number statistics of rho with derivatives read off drho.
OutcomeDistribution photon_counting(const Operator& rho, const Operator& drho,
                                    double tail_tol = kTailTolerance);

/// Photon counting coarse-grained to even (label 0) / odd (label 1).
OutcomeDistribution parity_outcomes(const OutcomeDistribution& counting);

struct SldResult {
  double qfi = 0.0;
  Operator sld;  // symmetric logarithmic derivative in the Fock basis
};

/// Solves (rho L + L rho)/2 = drho in the eigenbasis of rho. Eigenpairs
/// with lambda_i + lambda_j <= 1e-12 lambda_max are dropped.
SldResult sld_qfi(const Operator& rho, const Operator& drho);

/// Signal-to-noise |tr(drho O)|^2 / Var(O) of a hermitian observable;
/// never exceeds the QFI and equals it for O = SLD.
double max_snr_check(const Operator& rho, const Operator& drho, const Operator& observable);

struct ParityFisherResult {
  double parity_fi = 0.0;
  double counting_fi = 0.0;
  double short_time_prediction = 0.0;  // t [N (1 + 2 n_E) + n_E] / Gamma
};

/// Squeezed vacuum of squeezing r sent through the channel for time t;
/// Fisher information about Gamma of parity and of full photon counting.
ParityFisherResult parity_fisher_squeezed_vacuum(double r, const LindbladModel& model, double t,
                                                 const FockSpace& space,
                                                 const IntegratorOptions& options = {});

struct FiniteDifference {
  Operator drho;
  double richardson_error = 0.0;  // max-norm gap between step h and h/2 estimates
};

/// d(rho(t))/d(target) by central differences with step 1e-4 max(|value|, 0.01),
/// refined by one Richardson extrapolation. Falls back to a one-sided
/// stencil when a central step would make Gamma or n_E negative.
FiniteDifference finite_difference_sensitivity(const Operator& rho0, const LindbladModel& model, double t,
                                               const FockSpace& space,
                                               const IntegratorOptions& options = {});

}  // namespace bmetro
