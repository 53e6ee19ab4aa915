#pragma once

#include "bmetro/types.hpp"

namespace bmetro {

/// Truncated single-mode Hilbert space span{|0>, ..., |D-1>} with cached
/// ladder operators. Immutable after construction.
class FockSpace {
 public:
  /// Throws invalid_argument for cutoff < 2.
  explicit FockSpace(int cutoff);

  int cutoff() const noexcept { return cutoff_; }
  int dim() const noexcept { return cutoff_; }

  const Operator& a() const noexcept { return a_; }
  const Operator& adag() const noexcept { return adag_; }
  const Operator& number() const noexcept { return number_; }
  Operator identity() const { return Operator::Identity(cutoff_, cutoff_); }

  /// (-1)^n on the diagonal.
  Operator parity() const;

 private:
  int cutoff_;
  Operator a_;
  Operator adag_;
  Operator number_;
};

/// Cutoff heuristic ceil(N + 10 sqrt(N + 1) + 20) for thermal and coherent
/// tails of mean photon number N.
int default_cutoff(double mean_photons);

}  // namespace bmetro
