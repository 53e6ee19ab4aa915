#pragma once

#include <string>
#include <vector>

#include "bmetro/fock_space.hpp"
#include "bmetro/scalar_optimize.hpp"
#include "bmetro/types.hpp"

namespace bmetro {

/// Two-component cat code N(|a> +- |-a>), N(|ia> +- |-ia>) of fixed parity.
struct CatCode {
  Complex alpha;
  int parity = +1;            // +1 even, -1 odd
  double normalization = 0.0; // exact [2 (1 +- e^{-2|a|^2})]^{-1/2}
  StateVector c_alpha;
  StateVector c_ialpha;
};

double cat_normalization(double alpha_sq, int parity);
/// <a'a> of a cat state: |a|^2 tanh|a|^2 (even) or |a|^2 coth|a|^2 (odd).
double cat_mean_photons(double alpha_sq, int parity);

/// Throws numerical if the coherent tails do not fit below the cutoff.
CatCode build_cat_code(Complex alpha, int parity, const FockSpace& space, double tail_tol = kTailTolerance);

/// eps (a'^2 + a^2) compressed to the code space, written in the Loewdin
/// orthonormalisation of {c_alpha, c_ialpha}. Tends to 2 eps Re(a^2) diag(1, -1).
Eigen::Matrix2cd projected_hamiltonian(const CatCode& code, double epsilon, const FockSpace& space);

/// Effective-qubit QFI 16 N^2 (1 - e^{-Gamma t})^2 / Gamma^2.
double protocol_qfi(double mean_photons, double gamma, double t);
/// Relative phase 2 eps |a|^2 (1 - e^{-Gamma t}) / Gamma accumulated while
/// the amplitude decays as a e^{-Gamma t / 2}.
double accumulated_phase(double epsilon, double alpha_sq, double gamma, double t);

struct ProtocolOptimum {
  double t_star = 0.0;          // argmax of I/t
  double rate_star = 0.0;       // max I/t
  double rate_per_n2 = 0.0;     // rate_star * Gamma / N^2
};

ProtocolOptimum optimize_protocol_rate(double mean_photons, double gamma);

/// t eps sqrt(4N + 2): bound on the distance between exact and code-space evolution.
double leakage_bound(double t, double epsilon, double mean_photons);

/// || (a'^2 + a^2 -+ 2 Re a^2) |C> || for c_alpha (sign -) or c_ialpha (sign +).
double approximation_residual(const CatCode& code, const FockSpace& space, bool ialpha = false);

/// || exp(-i t eps (a'^2 + a^2)) psi - exp(-i t P H P) psi || for
/// psi = cos(theta) e0 + sin(theta) e1 in the orthonormalised code basis,
/// both evolutions exact in the truncated space.
double leakage_numeric(const CatCode& code, double epsilon, double t, const FockSpace& space,
                       double theta = 0.0);

/// a psi, renormalised.
StateVector apply_jump(const StateVector& psi, const FockSpace& space);
double parity_expectation(const StateVector& psi, const FockSpace& space);

struct QecReport {
  int photons = 0;
  Eigen::Matrix2cd projected_generator;  // P (a^2 + a'^2) P in {c0, c1}
  double generator_gap = 0.0;            // eigenvalue spread of the projected generator
  double implied_coefficient = 0.0;      // F = coefficient * t^2, equal to gap^2
  bool generator_nontrivial = false;
  double lambda = 0.0;                   // P L P = lambda I
  double mu = 0.0;                       // P L'L P = mu I
  double l_residual = 0.0;
  double ltl_residual = 0.0;
  std::vector<std::string> failures;     // names of violated conditions
  bool ok() const { return failures.empty(); }
};

/// Static error-correction conditions for the code
///   c0 = (|N-2> + |N>)|0>_A / sqrt 2,  c1 = (|N-2> - |N>)|1>_A / sqrt 2
/// with L = sqrt(Gamma) a and the squeezing generator, checked to 1e-10.
QecReport qec_code_check(int photons, const FockSpace& space, double gamma = 1.0);

}  // namespace bmetro
