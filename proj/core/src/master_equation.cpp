#include "bmetro/master_equation.hpp"

#include <cmath>
#include <sstream>

#include "bmetro/error.hpp"
#include "bmetro/states.hpp"

namespace bmetro {
namespace {

Eigen::SparseMatrix<Complex> to_sparse(const Operator& m) {
  return m.sparseView(Complex(1.0), 1e-300);
}

void check_dims(const Operator& rho, const FockSpace& space, const char* what) {
  if (rho.rows() != space.dim() || rho.cols() != space.dim()) {
    std::ostringstream os;
    os << what << " has dimension " << rho.rows() << "x" << rho.cols() << ", expected cutoff "
       << space.dim();
    throw_invalid(os.str());
  }
}

void check_tail(const Operator& rho, double tail_tol, int cutoff, double t) {
  const double tail = tail_population(rho, 2);
  if (tail > tail_tol) {
    std::ostringstream os;
    os << "population " << tail << " in the top two Fock levels at t = " << t
       << " exceeds the tail tolerance " << tail_tol << "; increase the cutoff to at least "
       << static_cast<int>(std::ceil(cutoff * 1.5)) + 10;
    throw_numerical(os.str());
  }
}

}  // namespace

LindbladGenerator::LindbladGenerator(const LindbladModel& model, const FockSpace& space)
    : dim_(space.dim()) {
  const Operator h = model.hamiltonian_matrix(space);
  has_h_ = h.cwiseAbs().maxCoeff() > 0.0;
  if (has_h_) h_ = to_sparse(h);
  const Operator dh = model.hamiltonian_derivative(space);
  has_dh_ = dh.cwiseAbs().maxCoeff() > 0.0;
  if (has_dh_) dh_ = to_sparse(dh);

  const double g = model.gamma();
  const double n = model.n_env();
  loss_ = g * (1.0 + n);
  gain_ = g * n;
  if (model.target() == Parameter::loss) {
    dloss_ = 1.0 + n;
    dgain_ = n;
  } else if (model.target() == Parameter::temperature) {
    dloss_ = g;
    dgain_ = g;
  }
}

void LindbladGenerator::add_commutator(const Sparse& h, const Operator& rho, Operator& out) {
  // out += -i (H rho - rho H)
  const Operator hr = h * rho;
  const Operator rh = (h.adjoint() * rho.adjoint()).adjoint();
  out.noalias() += -kI * (hr - rh);
}

void LindbladGenerator::add_dissipators(const Operator& rho, double loss, double gain,
                                        Operator& out) const {
  const int d = dim_;
  // (a a')_{kk} in the truncated space
  auto aad = [d](int k) { return k < d - 1 ? k + 1.0 : 0.0; };
  for (int n = 0; n < d; ++n) {
    for (int m = 0; m < d; ++m) {
      Complex v = 0.0;
      if (loss != 0.0) {
        Complex jump = 0.0;
        if (m + 1 < d && n + 1 < d) jump = std::sqrt((m + 1.0) * (n + 1.0)) * rho(m + 1, n + 1);
        v += loss * (jump - 0.5 * (m + n) * rho(m, n));
      }
      if (gain != 0.0) {
        Complex jump = 0.0;
        if (m > 0 && n > 0) jump = std::sqrt(static_cast<double>(m) * n) * rho(m - 1, n - 1);
        v += gain * (jump - 0.5 * (aad(m) + aad(n)) * rho(m, n));
      }
      out(m, n) += v;
    }
  }
}

Operator LindbladGenerator::apply(const Operator& rho) const {
  Operator out = Operator::Zero(dim_, dim_);
  if (has_h_) add_commutator(h_, rho, out);
  add_dissipators(rho, loss_, gain_, out);
  return out;
}

Operator LindbladGenerator::apply_derivative(const Operator& rho) const {
  Operator out = Operator::Zero(dim_, dim_);
  if (has_dh_) add_commutator(dh_, rho, out);
  if (dloss_ != 0.0 || dgain_ != 0.0) add_dissipators(rho, dloss_, dgain_, out);
  return out;
}

Operator lindblad_rhs(const Operator& rho, const LindbladModel& model, const FockSpace& space) {
  check_dims(rho, space, "density matrix");
  return LindbladGenerator(model, space).apply(rho);
}

namespace {

std::vector<IntegrationResult> run(const Operator& rho0, const Operator* drho0, const LindbladModel& model,
                                   const std::vector<double>& times, const FockSpace& space,
                                   const IntegratorOptions& options) {
  check_dims(rho0, space, "initial state");
  if (drho0 != nullptr) check_dims(*drho0, space, "initial derivative");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0) || (i > 0 && times[i] < times[i - 1])) {
      throw_invalid("integration times must be >= 0 and ascending");
    }
  }
  check_tail(rho0, options.tail_tol, space.dim(), 0.0);

  const LindbladGenerator gen(model, space);
  const int d = space.dim();
  const bool sens = drho0 != nullptr;
  OdeOptions ode;
  ode.rtol = options.rtol;
  ode.atol = options.atol;

  auto solve = [&](const OdeOptions& opts) {
    Operator y(d, sens ? 2 * d : d);
    y.leftCols(d) = rho0;
    if (sens) y.rightCols(d) = *drho0;
    std::vector<IntegrationResult> out(times.size());
    auto rhs = [&](double, const Operator& state) {
      Operator dy(d, state.cols());
      const Operator rho = state.leftCols(d);
      dy.leftCols(d) = gen.apply(rho);
      if (sens) dy.rightCols(d) = gen.apply(state.rightCols(d)) + gen.apply_derivative(rho);
      return dy;
    };
    const OdeStats stats = integrate_dopri5(y, 0.0, times, rhs, [&](std::size_t i, const Operator& state) {
      out[i].t = times[i];
      out[i].rho = state.leftCols(d);
      if (sens) out[i].drho = state.rightCols(d);
    }, opts);
    for (auto& r : out) r.stats = stats;
    return out;
  };

  std::vector<IntegrationResult> results = solve(ode);
  if (options.verify) {
    OdeOptions tight = ode;
    tight.rtol *= 1e-2;
    tight.atol *= 1e-2;
    const std::vector<IntegrationResult> ref = solve(tight);
    for (std::size_t i = 0; i < results.size(); ++i) {
      results[i].consistency = trace_distance(results[i].rho, ref[i].rho);
    }
  }
  for (auto& r : results) {
    r.trace_drift = std::abs(r.rho.trace().real() - 1.0);
    check_tail(r.rho, options.tail_tol, d, r.t);
  }
  return results;
}

}  // namespace

IntegrationResult integrate_master_equation(const Operator& rho0, const LindbladModel& model, double t,
                                            const FockSpace& space, const IntegratorOptions& options) {
  if (!(t >= 0.0)) throw_invalid("evolution time must be >= 0");
  return run(rho0, nullptr, model, {t}, space, options).front();
}

IntegrationResult integrate_with_sensitivity(const Operator& rho0, const Operator& drho0,
                                             const LindbladModel& model, double t, const FockSpace& space,
                                             const IntegratorOptions& options) {
  if (!(t >= 0.0)) throw_invalid("evolution time must be >= 0");
  return run(rho0, &drho0, model, {t}, space, options).front();
}

std::vector<IntegrationResult> sensitivity_trajectory(const Operator& rho0, const Operator& drho0,
                                                      const LindbladModel& model,
                                                      const std::vector<double>& times,
                                                      const FockSpace& space,
                                                      const IntegratorOptions& options) {
  return run(rho0, &drho0, model, times, space, options);
}

}  // namespace bmetro
