#pragma once

#include <variant>
#include <vector>

#include "bmetro/fock_space.hpp"
#include "bmetro/types.hpp"

namespace bmetro {

struct NoDrive {};
struct FrequencyDrive {
  double omega = 0.0;
};
struct DisplacementDrive {
  double alpha = 0.0;
};
struct SqueezingDrive {
  double epsilon = 0.0;
};

/// Exactly one Hamiltonian term; coefficients in units of the loss rate.
using Hamiltonian = std::variant<NoDrive, FrequencyDrive, DisplacementDrive, SqueezingDrive>;

/// Thermal-loss master equation with L1 = sqrt(Gamma (1 + n_E)) a and
/// L2 = sqrt(Gamma n_E) a' (L2 dropped when n_E = 0), plus one Hamiltonian
/// term and the tag of the parameter being estimated.
class LindbladModel {
 public:
  /// Validates gamma > 0, n_env >= 0, finite coefficients, and that a
  /// Hamiltonian target has the matching Hamiltonian term.
  LindbladModel(Hamiltonian hamiltonian, double gamma, double n_env, Parameter target);

  /// Model whose Hamiltonian matches the target (zero coefficient in the
  /// rotating frame); noise targets get no Hamiltonian.
  static LindbladModel for_target(Parameter target, double gamma = 1.0, double n_env = 0.0);

  const Hamiltonian& hamiltonian() const noexcept { return hamiltonian_; }
  double gamma() const noexcept { return gamma_; }
  double n_env() const noexcept { return n_env_; }
  Parameter target() const noexcept { return target_; }

  /// J = 2 for n_E > 0, otherwise 1.
  int lindblad_count() const noexcept { return n_env_ > 0.0 ? 2 : 1; }

  /// sqrt rates of L1, L2 (only the first J entries are meaningful).
  double rate_loss() const;
  double rate_gain() const;

  /// Current value of the target parameter (the Hamiltonian coefficient,
  /// Gamma or n_E) and a copy with it replaced.
  double target_value() const;
  LindbladModel with_target_value(double value) const;

  LindbladModel with_target(Parameter target) const;
  LindbladModel with_hamiltonian(Hamiltonian h) const;
  LindbladModel with_n_env(double n_env) const;
  LindbladModel with_gamma(double gamma) const;

  // Matrix forms on a truncated space.
  Operator hamiltonian_matrix(const FockSpace& space) const;
  /// dH/d(target); zero for noise targets.
  Operator hamiltonian_derivative(const FockSpace& space) const;
  std::vector<Operator> lindblad_operators(const FockSpace& space) const;
  /// dL_j/d(target); zero for Hamiltonian targets.
  std::vector<Operator> lindblad_derivatives(const FockSpace& space) const;

 private:
  Hamiltonian hamiltonian_;
  double gamma_;
  double n_env_;
  Parameter target_;
};

/// Generator of each Hamiltonian family with unit coefficient.
Operator frequency_generator(const FockSpace& space);     // a'a
Operator displacement_generator(const FockSpace& space);  // i(a' - a)
Operator squeezing_generator(const FockSpace& space);     // a^2 + a'^2

}  // namespace bmetro
