#pragma once

#include <vector>

#include "bmetro/types.hpp"

namespace bmetro {

/// Measurement statistics p(i) together with dp(i)/d(parameter).
struct OutcomeDistribution {
  std::vector<int> labels;
  std::vector<double> probs;
  std::vector<double> dprobs;
  double tail_tol = kTailTolerance;

  std::size_t size() const noexcept { return probs.size(); }

  /// Clamps entries in [-1e-12, 0) to zero; throws numerical on larger
  /// negativity, on mismatched sizes, or when sum(probs) is outside
  /// [1 - tail_tol, 1] or |sum(dprobs)| > tail_tol.
  void normalize_and_check();

  /// Groups outcomes by `group_of(label)`; probabilities and derivatives add.
  template <class F>
  OutcomeDistribution coarse_grain(F&& group_of) const;
};

template <class F>
OutcomeDistribution OutcomeDistribution::coarse_grain(F&& group_of) const {
  OutcomeDistribution out;
  out.tail_tol = tail_tol;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const int g = group_of(labels[i]);
    std::size_t k = 0;
    while (k < out.labels.size() && out.labels[k] != g) ++k;
    if (k == out.labels.size()) {
      out.labels.push_back(g);
      out.probs.push_back(0.0);
      out.dprobs.push_back(0.0);
    }
    out.probs[k] += probs[i];
    out.dprobs[k] += dprobs[i];
  }
  return out;
}

}  // namespace bmetro
