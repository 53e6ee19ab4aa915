#include "bmetro/lindblad_model.hpp"

#include <cmath>
#include <string>

#include "bmetro/error.hpp"

namespace bmetro {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double coefficient(const Hamiltonian& h) {
  return std::visit(overloaded{[](NoDrive) { return 0.0; },
                               [](FrequencyDrive d) { return d.omega; },
                               [](DisplacementDrive d) { return d.alpha; },
                               [](SqueezingDrive d) { return d.epsilon; }},
                    h);
}

bool matches(const Hamiltonian& h, Parameter target) {
  switch (target) {
    case Parameter::frequency: return std::holds_alternative<FrequencyDrive>(h);
    case Parameter::displacement: return std::holds_alternative<DisplacementDrive>(h);
    case Parameter::squeezing: return std::holds_alternative<SqueezingDrive>(h);
    default: return true;
  }
}

}  // namespace

LindbladModel::LindbladModel(Hamiltonian hamiltonian, double gamma, double n_env, Parameter target)
    : hamiltonian_(hamiltonian), gamma_(gamma), n_env_(n_env), target_(target) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw_invalid("loss rate Gamma must be finite and > 0");
  if (!(n_env >= 0.0) || !std::isfinite(n_env)) throw_invalid("thermal occupation n_E must be finite and >= 0");
  if (!std::isfinite(coefficient(hamiltonian))) throw_invalid("Hamiltonian coefficient must be finite");
  if (!matches(hamiltonian, target)) {
    throw_invalid("target '" + std::string(to_string(target)) +
                  "' requires the matching Hamiltonian term in the model");
  }
}

LindbladModel LindbladModel::for_target(Parameter target, double gamma, double n_env) {
  switch (target) {
    case Parameter::frequency: return {FrequencyDrive{0.0}, gamma, n_env, target};
    case Parameter::displacement: return {DisplacementDrive{0.0}, gamma, n_env, target};
    case Parameter::squeezing: return {SqueezingDrive{0.0}, gamma, n_env, target};
    default: return {NoDrive{}, gamma, n_env, target};
  }
}

double LindbladModel::rate_loss() const { return std::sqrt(gamma_ * (1.0 + n_env_)); }
double LindbladModel::rate_gain() const { return std::sqrt(gamma_ * n_env_); }

double LindbladModel::target_value() const {
  switch (target_) {
    case Parameter::loss: return gamma_;
    case Parameter::temperature: return n_env_;
    default: return coefficient(hamiltonian_);
  }
}

LindbladModel LindbladModel::with_target_value(double value) const {
  switch (target_) {
    case Parameter::frequency: return with_hamiltonian(FrequencyDrive{value});
    case Parameter::displacement: return with_hamiltonian(DisplacementDrive{value});
    case Parameter::squeezing: return with_hamiltonian(SqueezingDrive{value});
    case Parameter::loss: return with_gamma(value);
    case Parameter::temperature: return with_n_env(value);
  }
  return *this;
}

LindbladModel LindbladModel::with_target(Parameter target) const {
  return {hamiltonian_, gamma_, n_env_, target};
}
LindbladModel LindbladModel::with_hamiltonian(Hamiltonian h) const {
  return {h, gamma_, n_env_, target_};
}
LindbladModel LindbladModel::with_n_env(double n_env) const {
  return {hamiltonian_, gamma_, n_env, target_};
}
LindbladModel LindbladModel::with_gamma(double gamma) const {
  return {hamiltonian_, gamma, n_env_, target_};
}

Operator frequency_generator(const FockSpace& space) { return space.number(); }

Operator displacement_generator(const FockSpace& space) {
  return kI * (space.adag() - space.a());
}

Operator squeezing_generator(const FockSpace& space) {
  return space.a() * space.a() + space.adag() * space.adag();
}

Operator LindbladModel::hamiltonian_matrix(const FockSpace& space) const {
  return std::visit(
      overloaded{[&](NoDrive) -> Operator { return Operator::Zero(space.dim(), space.dim()); },
                 [&](FrequencyDrive d) -> Operator { return d.omega * frequency_generator(space); },
                 [&](DisplacementDrive d) -> Operator {
                   return d.alpha * displacement_generator(space);
                 },
                 [&](SqueezingDrive d) -> Operator {
                   return d.epsilon * squeezing_generator(space);
                 }},
      hamiltonian_);
}

Operator LindbladModel::hamiltonian_derivative(const FockSpace& space) const {
  switch (target_) {
    case Parameter::frequency: return frequency_generator(space);
    case Parameter::displacement: return displacement_generator(space);
    case Parameter::squeezing: return squeezing_generator(space);
    default: return Operator::Zero(space.dim(), space.dim());
  }
}

std::vector<Operator> LindbladModel::lindblad_operators(const FockSpace& space) const {
  std::vector<Operator> ops;
  ops.push_back(rate_loss() * space.a());
  if (lindblad_count() == 2) ops.push_back(rate_gain() * space.adag());
  return ops;
}

std::vector<Operator> LindbladModel::lindblad_derivatives(const FockSpace& space) const {
  const int d = space.dim();
  std::vector<Operator> ops(lindblad_count(), Operator::Zero(d, d));
  if (target_ == Parameter::loss) {
    // d/dGamma sqrt(Gamma c) = sqrt(c) / (2 sqrt(Gamma))
    ops[0] = std::sqrt(1.0 + n_env_) / (2.0 * std::sqrt(gamma_)) * space.a();
    if (lindblad_count() == 2) ops[1] = std::sqrt(n_env_) / (2.0 * std::sqrt(gamma_)) * space.adag();
  } else if (target_ == Parameter::temperature) {
    if (lindblad_count() < 2) {
      throw_infeasible("derivative of sqrt(Gamma n_E) diverges at n_E = 0");
    }
    ops[0] = std::sqrt(gamma_) / (2.0 * std::sqrt(1.0 + n_env_)) * space.a();
    ops[1] = std::sqrt(gamma_) / (2.0 * std::sqrt(n_env_)) * space.adag();
  }
  return ops;
}

}  // namespace bmetro
