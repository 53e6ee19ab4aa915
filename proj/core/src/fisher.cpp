#include "bmetro/fisher.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "bmetro/error.hpp"
#include "bmetro/states.hpp"

namespace bmetro {

double classical_fisher(const OutcomeDistribution& dist) {
  if (dist.probs.size() != dist.dprobs.size()) throw_invalid("probabilities and derivatives differ in length");
  double fi = 0.0;
  for (std::size_t i = 0; i < dist.probs.size(); ++i) {
    const double p = dist.probs[i];
    const double dp = dist.dprobs[i];
    if (p < 1e-14) {
      if (std::abs(dp) >= 1e-10) {
        std::ostringstream os;
        os << "outcome " << (i < dist.labels.size() ? dist.labels[i] : static_cast<int>(i))
           << " has probability " << p << " but derivative " << dp << "; Fisher information diverges";
        throw_numerical(os.str());
      }
      continue;
    }
    fi += dp * dp / p;
  }
  return fi;
}

OutcomeDistribution photon_counting(const Operator& rho, const Operator& drho, double tail_tol) {
  if (rho.rows() != drho.rows() || rho.cols() != drho.cols()) throw_invalid("rho and drho differ in shape");
  OutcomeDistribution dist;
  dist.tail_tol = tail_tol;
  const int d = static_cast<int>(rho.rows());
  for (int n = 0; n < d; ++n) {
    dist.labels.push_back(n);
    dist.probs.push_back(rho(n, n).real());
    dist.dprobs.push_back(drho(n, n).real());
  }
  dist.normalize_and_check();
  return dist;
}

OutcomeDistribution parity_outcomes(const OutcomeDistribution& counting) {
  return counting.coarse_grain([](int n) { return n % 2; });
}

SldResult sld_qfi(const Operator& rho, const Operator& drho) {
  if (rho.rows() != drho.rows() || rho.cols() != drho.cols() || rho.rows() != rho.cols()) {
    throw_invalid("rho and drho must be square and of equal size");
  }
  if ((drho - drho.adjoint()).cwiseAbs().maxCoeff() > 1e-8) throw_invalid("drho is not hermitian");

  Eigen::SelfAdjointEigenSolver<Operator> es(rho);
  const Eigen::VectorXd& lam = es.eigenvalues();
  const Operator& v = es.eigenvectors();
  const Operator d = v.adjoint() * drho * v;
  const double cut = 1e-12 * lam.cwiseAbs().maxCoeff();

  const int n = static_cast<int>(lam.size());
  Operator l = Operator::Zero(n, n);
  double qfi = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double s = lam(i) + lam(j);
      if (s <= cut) continue;
      l(i, j) = 2.0 * d(i, j) / s;
      qfi += 2.0 * std::norm(d(i, j)) / s;
    }
  }
  return {qfi, v * l * v.adjoint()};
}

double max_snr_check(const Operator& rho, const Operator& drho, const Operator& observable) {
  if ((observable - observable.adjoint()).cwiseAbs().maxCoeff() > 1e-8) {
    throw_invalid("observable is not hermitian");
  }
  const double mean = (rho * observable).trace().real();
  const double second = (rho * observable * observable).trace().real();
  const double var = second - mean * mean;
  const double scale = std::max(1.0, second);
  if (!(var > 1e-12 * scale)) throw_invalid("observable has zero variance in this state");
  const Complex slope = (drho * observable).trace();
  return std::norm(slope) / var;
}

ParityFisherResult parity_fisher_squeezed_vacuum(double r, const LindbladModel& model, double t,
                                                 const FockSpace& space, const IntegratorOptions& options) {
  if (model.target() != Parameter::loss) throw_invalid("parity readout estimates the loss rate");
  if (!(t >= 0.0)) throw_invalid("evolution time must be >= 0");
  if (!(r >= 0.0)) throw_invalid("squeezing must be >= 0");

  const Operator rho0 = density(gaussian_vector(space, 0.0, r, 0.0, options.tail_tol));
  const Operator zero = Operator::Zero(space.dim(), space.dim());
  const IntegrationResult res = integrate_with_sensitivity(rho0, zero, model, t, space, options);

  const OutcomeDistribution counting = photon_counting(res.rho, res.drho, options.tail_tol);
  ParityFisherResult out;
  out.counting_fi = classical_fisher(counting);
  out.parity_fi = classical_fisher(parity_outcomes(counting));
  const double photons = std::sinh(r) * std::sinh(r);
  const double n = model.n_env();
  out.short_time_prediction = t * (photons * (1.0 + 2.0 * n) + n) / model.gamma();
  return out;
}

FiniteDifference finite_difference_sensitivity(const Operator& rho0, const LindbladModel& model, double t,
                                               const FockSpace& space, const IntegratorOptions& options) {
  const double x = model.target_value();
  const double h = 1e-4 * std::max(std::abs(x), 0.01);
  const bool nonneg = model.target() == Parameter::loss || model.target() == Parameter::temperature;
  const bool one_sided = nonneg && x - 2.0 * h < 0.0;
  if (model.target() == Parameter::loss && one_sided && x <= 0.0) throw_invalid("Gamma must be > 0");

  auto at = [&](double v) { return integrate_master_equation(rho0, model.with_target_value(v), t, space, options).rho; };
  auto estimate = [&](double step) -> Operator {
    if (one_sided) return (-3.0 * at(x) + 4.0 * at(x + step) - at(x + 2.0 * step)) / (2.0 * step);
    return (at(x + step) - at(x - step)) / (2.0 * step);
  };
  const Operator coarse = estimate(h);
  const Operator fine = estimate(0.5 * h);
  FiniteDifference out;
  out.drho = (4.0 * fine - coarse) / 3.0;
  out.richardson_error = (fine - coarse).cwiseAbs().maxCoeff();
  return out;
}

}  // namespace bmetro
