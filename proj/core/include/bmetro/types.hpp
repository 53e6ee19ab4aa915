#pragma once

#include <complex>
#include <optional>
#include <string_view>

#include <Eigen/Dense>

namespace bmetro {

using Complex = std::complex<double>;

/// Dense complex matrix on a truncated Fock space. Density matrices, their
/// parameter derivatives, observables and Lindblad operators all use it.
using Operator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Default tolerance on probability mass lost to Fock-space truncation.
inline constexpr double kTailTolerance = 1e-8;

/// Estimated parameter of the thermal-loss model.
enum class Parameter {
  frequency,     // omega in H = omega a'a
  displacement,  // alpha in H = i alpha (a' - a)
  squeezing,     // epsilon in H = epsilon (a^2 + a'^2)
  loss,          // Gamma
  temperature,   // n_E
};

inline constexpr Parameter kAllParameters[] = {Parameter::frequency, Parameter::displacement,
                                               Parameter::squeezing, Parameter::loss,
                                               Parameter::temperature};

std::string_view to_string(Parameter p);
/// Short symbol used in tables: omega, alpha, epsilon, Gamma, n_E.
std::string_view symbol(Parameter p);
/// Accepts the long name ("frequency"), the symbol ("omega") or common aliases.
std::optional<Parameter> parse_parameter(std::string_view text);

constexpr bool is_hamiltonian_parameter(Parameter p) {
  return p == Parameter::frequency || p == Parameter::displacement ||
         p == Parameter::squeezing;
}

}  // namespace bmetro
