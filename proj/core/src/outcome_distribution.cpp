#include "bmetro/outcome_distribution.hpp"

#include <numeric>
#include <sstream>

#include "bmetro/error.hpp"

namespace bmetro {

void OutcomeDistribution::normalize_and_check() {
  if (probs.size() != dprobs.size() || probs.size() != labels.size()) {
    throw_numerical("outcome distribution has mismatched label/prob/derivative sizes");
  }
  for (double& p : probs) {
    if (p < -1e-12) {
      std::ostringstream os;
      os << "negative outcome probability " << p << " (insufficient cutoff or integrator step)";
      throw_numerical(os.str());
    }
    if (p < 0.0) p = 0.0;
  }
  const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  const double dtotal = std::accumulate(dprobs.begin(), dprobs.end(), 0.0);
  // small slack for rounding in the summation itself
  const double slack = 1e-12;
  if (total > 1.0 + slack || total < 1.0 - tail_tol - slack) {
    std::ostringstream os;
    os << "outcome probabilities sum to " << total << ", outside [1 - " << tail_tol << ", 1]";
    throw_numerical(os.str());
  }
  if (std::abs(dtotal) > tail_tol + slack) {
    std::ostringstream os;
    os << "outcome derivatives sum to " << dtotal << ", expected 0 within " << tail_tol;
    throw_numerical(os.str());
  }
}

}  // namespace bmetro
