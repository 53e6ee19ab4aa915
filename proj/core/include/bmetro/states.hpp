#pragma once

#include <vector>

#include "bmetro/fock_space.hpp"
#include "bmetro/gaussian_state.hpp"
#include "bmetro/types.hpp"

namespace bmetro {

StateVector fock_vector(const FockSpace& space, int n);

/// |alpha> truncated to the space; throws numerical if the discarded
/// population exceeds tail_tol.
StateVector coherent_vector(const FockSpace& space, Complex alpha, double tail_tol = kTailTolerance);

/// D(alpha) R(axis) S(r)|0>, matching make_gaussian(alpha, r, axis).
/// Built in an enlarged space and truncated; throws numerical if the
/// discarded population exceeds tail_tol.
StateVector gaussian_vector(const FockSpace& space, Complex alpha, double r, double squeeze_axis = 0.0,
                            double tail_tol = kTailTolerance);

/// Smallest cutoff whose discarded population for D(alpha)S(r)|0> is below tail_tol.
int required_cutoff(Complex alpha, double r, double tail_tol = kTailTolerance);

Operator density(const StateVector& psi);

/// Gibbs state of mean occupation n_env, renormalised on the truncated space.
Operator thermal_density(const FockSpace& space, double n_env);

/// Phase-averaged coherent state: Poisson photon statistics, no coherences.
Operator poisson_density(const FockSpace& space, double mean_photons);

std::vector<double> photon_distribution(const Operator& rho);

/// Population in the top `levels` Fock levels.
double tail_population(const Operator& rho, int levels = 2);

double expectation(const Operator& rho, const Operator& observable);

/// First and second quadrature moments of rho (x = a + a', p = -i(a - a')).
GaussianState quadrature_moments(const Operator& rho, const FockSpace& space);

/// Throws numerical unless rho is hermitian (1e-10), unit trace (1e-8) and
/// has eigenvalues >= -1e-10.
void validate_density(const Operator& rho);

double trace_distance(const Operator& rho, const Operator& sigma);
/// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const Operator& rho, const Operator& sigma);

}  // namespace bmetro
