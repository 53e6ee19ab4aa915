#include "bmetro/fock_space.hpp"

#include <cmath>

#include "bmetro/error.hpp"

namespace bmetro {

FockSpace::FockSpace(int cutoff) : cutoff_(cutoff) {
  if (cutoff < 2) throw_invalid("Fock cutoff must be >= 2");
  a_ = Operator::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) a_(n - 1, n) = std::sqrt(static_cast<double>(n));
  adag_ = a_.adjoint();
  number_ = Operator::Zero(cutoff, cutoff);
  for (int n = 0; n < cutoff; ++n) number_(n, n) = static_cast<double>(n);
}

Operator FockSpace::parity() const {
  Operator p = Operator::Zero(cutoff_, cutoff_);
  for (int n = 0; n < cutoff_; ++n) p(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
  return p;
}

int default_cutoff(double mean_photons) {
  if (!(mean_photons >= 0.0)) throw_invalid("mean photon number must be >= 0");
  return static_cast<int>(std::ceil(mean_photons + 10.0 * std::sqrt(mean_photons + 1.0) + 20.0));
}

}  // namespace bmetro
