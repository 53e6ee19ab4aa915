#include "bmetro/thermal_channel.hpp"

#include <cmath>
#include <sstream>

#include "bmetro/error.hpp"

namespace bmetro {
namespace {

long double log_factorial(int k) { return std::lgamma(static_cast<long double>(k) + 1.0L); }

long double log_binomial(int n, int k) {
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

// x^e for e >= 0 with 0^0 = 1, in log form; returns false when the factor vanishes.
bool log_power(long double x, int e, long double& out) {
  if (e == 0) {
    out = 0.0L;
    return true;
  }
  if (x <= 0.0L) return false;
  out = 0.5L * e * std::log(x);  // amplitudes carry square roots
  return true;
}

}  // namespace

ChannelSpec ChannelSpec::from_model(const LindbladModel& model, double t) {
  if (!(t >= 0.0)) throw_invalid("channel time must be >= 0");
  ChannelSpec spec;
  spec.kappa = std::exp(-model.gamma() * t);
  spec.n_env = model.n_env();
  return spec;
}

void ChannelSpec::validate() const {
  if (!(kappa >= 0.0 && kappa <= 1.0)) throw_invalid("transmissivity must lie in [0, 1]");
  if (!(n_env >= 0.0) || !std::isfinite(n_env)) throw_invalid("environment occupation must be >= 0");
  if (env_cutoff < 0) throw_invalid("environment cutoff must be >= 0");
  if (!(tail_tol > 0.0)) throw_invalid("tail tolerance must be > 0");
}

int ChannelSpec::resolved_env_cutoff() const {
  if (env_cutoff > 0) return env_cutoff;
  // m = 0, 1 are needed for the derivative even at zero temperature.
  if (n_env == 0.0) return 2;
  // Truncated weight r^M and its n-derivative M r^(M-1) / (n + 1)^2 must
  // both fall below the tolerance.
  const double r = n_env / (n_env + 1.0);
  int m = 2;
  while (std::pow(r, m) >= tail_tol || m * std::pow(r, m - 1) / ((n_env + 1.0) * (n_env + 1.0)) >= tail_tol) {
    ++m;
    if (m > 100000) throw_numerical("environment occupation too large for the thermal sum");
  }
  return m;
}

double beamsplitter_transition(int nprime, int n, int m, double kappa) {
  if (n < 0 || m < 0 || nprime < 0) throw_invalid("photon numbers must be >= 0");
  if (!(kappa >= 0.0 && kappa <= 1.0)) throw_invalid("transmissivity must lie in [0, 1]");
  if (nprime > n + m) return 0.0;
  const int mprime = n + m - nprime;
  const long double k = kappa;
  const long double kc = 1.0L - k;
  const long double log_pref =
      0.5L * (log_factorial(nprime) + log_factorial(mprime) - log_factorial(n) - log_factorial(m));

  // i photons of the probe are reflected out, j environment photons reflected in.
  long double amp = 0.0L;
  for (int i = 0; i <= n; ++i) {
    const int j = nprime - n + i;
    if (j < 0 || j > m) continue;
    long double lk = 0.0L, lkc = 0.0L;
    if (!log_power(k, n + m - i - j, lk) || !log_power(kc, i + j, lkc)) continue;
    const long double term = std::exp(log_pref + log_binomial(n, i) + log_binomial(m, j) + lk + lkc);
    amp += (j % 2 == 0) ? term : -term;
  }
  return static_cast<double>(amp * amp);
}

double thermal_weight(int m, double n_env) {
  if (m < 0) throw_invalid("environment photon number must be >= 0");
  if (n_env == 0.0) return m == 0 ? 1.0 : 0.0;
  return std::exp(m * std::log(n_env) - (m + 1) * std::log1p(n_env));
}

double thermal_weight_derivative(int m, double n_env) {
  if (n_env == 0.0) {
    // Limits of p(m) (m/n - (m+1)/(n+1)) as n -> 0.
    if (m == 0) return -1.0;
    if (m == 1) return 1.0;
    return 0.0;
  }
  return thermal_weight(m, n_env) * (m / n_env - (m + 1.0) / (n_env + 1.0));
}

OutcomeDistribution thermal_mix_distribution(int n_in, const ChannelSpec& spec) {
  spec.validate();
  if (n_in < 0) throw_invalid("input photon number must be >= 0");
  if (n_in > kMaxChannelPhotons) {
    std::ostringstream os;
    os << "input photon number " << n_in << " exceeds the supported limit " << kMaxChannelPhotons;
    throw_invalid(os.str());
  }
  const int env = spec.resolved_env_cutoff();

  double kept = 0.0;
  for (int m = 0; m < env; ++m) kept += thermal_weight(m, spec.n_env);
  if (kept < 1.0 - spec.tail_tol) {
    std::ostringstream os;
    os << "environment cutoff " << env << " keeps only " << kept << " of the thermal weight";
    throw_numerical(os.str());
  }

  OutcomeDistribution dist;
  dist.tail_tol = spec.tail_tol;
  const int outcomes = n_in + env;
  dist.labels.resize(outcomes);
  dist.probs.assign(outcomes, 0.0);
  dist.dprobs.assign(outcomes, 0.0);
  for (int k = 0; k < outcomes; ++k) dist.labels[k] = k;

  for (int m = 0; m < env; ++m) {
    const double w = thermal_weight(m, spec.n_env);
    const double dw = thermal_weight_derivative(m, spec.n_env);
    if (w == 0.0 && dw == 0.0) continue;
    for (int np = 0; np <= n_in + m; ++np) {
      const double p = beamsplitter_transition(np, n_in, m, spec.kappa);
      dist.probs[np] += w * p;
      dist.dprobs[np] += dw * p;
    }
  }
  dist.normalize_and_check();
  return dist;
}

}  // namespace bmetro
