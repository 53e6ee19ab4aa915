#include "bmetro/bounds.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "bmetro/error.hpp"
#include "bmetro/scalar_optimize.hpp"
#include "bmetro/states.hpp"

namespace bmetro {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_hamiltonian_target(const LindbladModel& model) {
  if (!is_hamiltonian_parameter(model.target())) {
    throw_invalid("target '" + std::string(to_string(model.target())) + "' is not a Hamiltonian parameter");
  }
}

int interior(const FockSpace& space, int margin) {
  const int m = space.dim() - margin;
  if (m < 2) throw_invalid("cutoff too small for the interior margin");
  return m;
}

// Column-stacked interior block.
Eigen::VectorXcd block_vec(const Operator& op, int m) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(m) * m);
  for (int c = 0; c < m; ++c) v.segment(static_cast<Eigen::Index>(c) * m, m) = op.col(c).head(m);
  return v;
}

// Real and imaginary parts stacked, so complex operator identities become real equations.
Eigen::VectorXd real_vec(const Operator& op, int m) {
  const Eigen::VectorXcd v = block_vec(op, m);
  Eigen::VectorXd out(2 * v.size());
  out.head(v.size()) = v.real();
  out.tail(v.size()) = v.imag();
  return out;
}

}  // namespace

HnlsProjection hnls_projection(const LindbladModel& model, const FockSpace& space, int margin) {
  require_hamiltonian_target(model);
  const int m = interior(space, margin);
  const int d = space.dim();
  const std::vector<Operator> l = model.lindblad_operators(space);

  std::vector<Operator> basis{Operator::Identity(d, d)};
  for (const Operator& li : l) {
    basis.push_back(li);
    basis.push_back(li.adjoint());
  }
  for (const Operator& li : l) {
    for (const Operator& lj : l) basis.push_back(li.adjoint() * lj);
  }
  Eigen::MatrixXcd a(static_cast<Eigen::Index>(m) * m, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) a.col(static_cast<Eigen::Index>(k)) = block_vec(basis[k], m);
  const Eigen::VectorXcd b = block_vec(model.hamiltonian_derivative(space), m);

  HnlsProjection out;
  const double norm = b.norm();
  if (norm == 0.0) return out;
  const Eigen::VectorXcd coeff = a.completeOrthogonalDecomposition().solve(b);
  out.relative_residual = (a * coeff - b).norm() / norm;
  out.holds = out.relative_residual > kHnlsTolerance;
  return out;
}

bool hnls_test(const LindbladModel& model, const FockSpace& space) {
  const HnlsProjection first = hnls_projection(model, space);
  const HnlsProjection second = hnls_projection(model, FockSpace(space.dim() + 2 * kInteriorMargin + 2));
  auto ambiguous = [](double r) { return r > 0.1 * kHnlsTolerance && r < 10.0 * kHnlsTolerance; };
  if (first.holds != second.holds || ambiguous(first.relative_residual) ||
      ambiguous(second.relative_residual)) {
    std::ostringstream os;
    os << "HNLS verdict indeterminate: relative residuals " << first.relative_residual << " and "
       << second.relative_residual << " at cutoffs " << space.dim() << " and "
       << space.dim() + 2 * kInteriorMargin + 2;
    throw_numerical(os.str());
  }
  return first.holds;
}

HSolution closed_form_h(const LindbladModel& model, double mean_photons) {
  require_hamiltonian_target(model);
  if (!(mean_photons >= 0.0) || !std::isfinite(mean_photons)) throw_invalid("photon number must be >= 0");
  const double g = model.gamma();
  const double n = model.n_env();
  const double big_n = mean_photons;
  const int j = model.lindblad_count();
  HSolution out{HCorrection::zero(j), 0.0};

  switch (model.target()) {
    case Parameter::frequency: {
      // Cancel a'a with the diagonal of hmat; h00 absorbs the constant from a a' = a'a + 1.
      if (n == 0.0) {
        out.h.hmat(0, 0) = -1.0 / g;
        out.a_expect = big_n / g;
      } else if (big_n == 0.0) {
        out.h.hmat(0, 0) = -1.0 / (g * (1.0 + n));
        out.a_expect = 0.0;
      } else {
        const double s = g * (1.0 + n) / big_n + g * n / (big_n + 1.0);
        out.h.hmat(0, 0) = -(1.0 / big_n) / s;
        out.h.hmat(1, 1) = -(1.0 / (big_n + 1.0)) / s;
        out.h.h00 = -out.h.hmat(1, 1).real() * g * n;
        out.a_expect = big_n / (g * (1.0 + 2.0 * n - n / (big_n + 1.0)));
      }
      break;
    }
    case Parameter::displacement: {
      const double c1 = std::sqrt(g * (1.0 + n));
      const double c2 = std::sqrt(g * n);
      const double c = c1 * c1 + c2 * c2;
      out.h.hvec(0) = Complex(0.0, -c1 / c);
      if (j == 2) out.h.hvec(1) = Complex(0.0, c2 / c);
      out.a_expect = 1.0 / (g * (1.0 + 2.0 * n));
      break;
    }
    case Parameter::squeezing: {
      if (n == 0.0) {
        throw_infeasible("squeezing generator lies outside the Lindblad span at n_E = 0; rate unbounded");
      }
      const double o = -1.0 / (g * std::sqrt(n * (1.0 + n)));
      out.h.hmat(0, 1) = o;
      out.h.hmat(1, 0) = o;
      out.a_expect = ((1.0 + 2.0 * n) * big_n + n) / (g * n * (1.0 + n));
      break;
    }
    default: break;
  }
  return out;
}

double printed_squeezing_bound(double mean_photons, double gamma, double n_env) {
  if (n_env <= 0.0) return kInf;
  return 4.0 * (2.0 * mean_photons + 1.0) / (gamma * std::sqrt(n_env * (1.0 + n_env)));
}

NumericH numeric_h_optimization(const LindbladModel& model, const Operator& rho, const FockSpace& space,
                                int margin) {
  require_hamiltonian_target(model);
  if (rho.rows() != space.dim() || rho.cols() != space.dim()) throw_invalid("state dimension does not match cutoff");
  const int m = interior(space, margin);
  const double edge = tail_population(rho, margin);
  if (edge > kTailTolerance) {
    std::ostringstream os;
    os << "state has population " << edge << " in the top " << margin
       << " Fock levels; increase the cutoff";
    throw_numerical(os.str());
  }

  const AffineH f = affine_h(model, space, false);
  const int np = f.params();
  Eigen::MatrixXd p(2 * static_cast<Eigen::Index>(m) * m, np);
  for (int k = 0; k < np; ++k) p.col(k) = real_vec(f.bp[k], m);
  const Eigen::VectorXd p0 = real_vec(f.b0, m);
  const double scale = std::max(p0.norm(), 1e-300);

  NumericH out;
  // Compress P x + p0 = 0 to its row space: C x = d.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(p, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  int rank = 0;
  while (rank < sv.size() && sv(rank) > 1e-12 * sv(0)) ++rank;
  out.constraint_rank = rank;
  const Eigen::MatrixXd u = svd.matrixU().leftCols(rank);
  const Eigen::MatrixXd c = sv.head(rank).asDiagonal() * svd.matrixV().leftCols(rank).transpose();
  const Eigen::VectorXd d = -u.transpose() * p0;
  const double ls_residual = (p0 - u * (u.transpose() * p0)).norm() / scale;

  Eigen::MatrixXd q;
  Eigen::VectorXd lin;
  double c0 = 0.0;
  f.a_quadratic(rho, q, lin, c0);

  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(np + rank, np + rank);
  kkt.topLeftCorner(np, np) = q;
  kkt.topRightCorner(np, rank) = c.transpose();
  kkt.bottomLeftCorner(rank, np) = c;
  Eigen::VectorXd rhs(np + rank);
  rhs.head(np) = -lin;
  rhs.tail(rank) = d;
  const Eigen::VectorXd sol = kkt.completeOrthogonalDecomposition().solve(rhs);
  const Eigen::VectorXd x = sol.head(np);

  out.h = HCorrection::from_params(x, f.lindblad_count);
  out.a_expect = std::max(0.0, x.dot(q * x) + 2.0 * lin.dot(x) + c0);
  out.residual = std::max(ls_residual, (p * x + p0).norm() / scale);
  out.feasible = out.residual <= 1e-8;
  return out;
}

namespace {

std::optional<double> hamiltonian_tau(const LindbladModel& model, double big_n) {
  const double g = model.gamma();
  const double n = model.n_env();
  switch (model.target()) {
    case Parameter::frequency: return 1.0 / (2.0 * (big_n + 1.0) * g * (1.0 + 2.0 * n));
    case Parameter::displacement: return 1.0 / ((4.0 * big_n + 2.0) * g * (1.0 + 2.0 * n));
    default: return std::nullopt;
  }
}

}  // namespace

BoundReport hamiltonian_rate_bound(const LindbladModel& model, double mean_photons) {
  require_hamiltonian_target(model);
  BoundReport r;
  r.target = model.target();
  try {
    const HSolution s = closed_form_h(model, mean_photons);
    r.rate_bound = 4.0 * s.a_expect;
    r.components.emplace_back("a_expect", s.a_expect);
  } catch (const Error& e) {
    if (e.kind() != Error::Kind::infeasible) throw;
    r.rate_bound = kInf;
    r.unbounded = true;
    r.note = e.what();
  }
  r.tau = hamiltonian_tau(model, mean_photons);
  if (model.target() == Parameter::squeezing && !r.unbounded) {
    r.components.emplace_back("printed_closed_form",
                              printed_squeezing_bound(mean_photons, model.gamma(), model.n_env()));
    r.note = "printed_closed_form is below the constrained minimum and is shown for comparison only";
  }
  return r;
}

BoundReport noise_rate_bound(const LindbladModel& model, double mean_photons) {
  if (is_hamiltonian_parameter(model.target())) throw_invalid("noise bound needs the loss or temperature target");
  if (!(mean_photons >= 0.0) || !std::isfinite(mean_photons)) throw_invalid("photon number must be >= 0");
  const double g = model.gamma();
  const double n = model.n_env();
  const double big_n = mean_photons;
  BoundReport r;
  r.target = model.target();
  if (model.target() == Parameter::loss) {
    r.rate_bound = (big_n * (1.0 + 2.0 * n) + n) / g;
    r.components.emplace_back("photon_term", big_n * (1.0 + 2.0 * n) / g);
    r.components.emplace_back("additive_term", n / g);
  } else {
    if (n == 0.0) {
      r.rate_bound = kInf;
      r.unbounded = true;
      r.note = "temperature rate diverges as 1/n_E at n_E = 0";
      return r;
    }
    const double leading = (1.0 + 2.0 * n) * big_n * g / (n * (1.0 + n));
    r.rate_bound = leading + g / n;
    r.components.emplace_back("photon_term", leading);
    r.components.emplace_back("additive_term", g / n);
  }
  // The same quantity without the factor 4, i.e. <Ldot' Ldot> itself.
  r.components.emplace_back("ldot_expectation", r.rate_bound / 4.0);
  return r;
}

BoundReport rate_bound(const LindbladModel& model, double mean_photons) {
  return is_hamiltonian_parameter(model.target()) ? hamiltonian_rate_bound(model, mean_photons)
                                                  : noise_rate_bound(model, mean_photons);
}

double noise_rate_from_state(const LindbladModel& model, const Operator& rho, const FockSpace& space) {
  if (rho.rows() != space.dim()) throw_invalid("state dimension does not match cutoff");
  double s = 0.0;
  for (const Operator& ld : model.lindblad_derivatives(space)) s += (rho * ld.adjoint() * ld).trace().real();
  return 4.0 * s;
}

double quadratic_bound(const std::function<double(double)>& variance_profile, double t) {
  if (!(t >= 0.0)) throw_invalid("time must be >= 0");
  if (t == 0.0) return 0.0;
  auto integrand = [&](double s) {
    const double v = variance_profile(s);
    if (v < 0.0 || std::isnan(v)) throw_invalid("variance profile must be nonnegative");
    return std::sqrt(v);
  };
  double err = 0.0;
  const double integral =
      boost::math::quadrature::gauss_kronrod<double, 15>::integrate(integrand, 0.0, t, 20, 1e-8, &err);
  return 4.0 * integral * integral;
}

double quadratic_bound_constant(double variance, double t) {
  if (variance < 0.0) throw_invalid("variance must be nonnegative");
  return 4.0 * t * t * variance;
}

double theorem1_rate(const Operator& rho, const HCorrection& h, const LindbladModel& model, double qfi_now,
                     const FockSpace& space) {
  if (!(qfi_now >= 0.0)) throw_invalid("QFI must be >= 0");
  if (rho.rows() != space.dim() || rho.cols() != space.dim()) throw_invalid("state dimension does not match cutoff");
  const ABOperators ab = ab_operators(h, model, space, true);
  const double a = (rho * ab.a_op).trace().real();
  const double b2 = std::max(0.0, (rho * ab.b_op * ab.b_op).trace().real());
  return 4.0 * (a + std::sqrt(b2 * qfi_now));
}

Theorem1Optimum theorem1_rate_optimized(const Operator& rho, const LindbladModel& model, double qfi_now,
                                        const FockSpace& space) {
  if (!(qfi_now >= 0.0)) throw_invalid("QFI must be >= 0");
  if (rho.rows() != space.dim() || rho.cols() != space.dim()) throw_invalid("state dimension does not match cutoff");
  const AffineH f = affine_h(model, space, true);
  Eigen::MatrixXd qa, qb;
  Eigen::VectorXd la, lb;
  double ca = 0.0, cb = 0.0;
  f.a_quadratic(rho, qa, la, ca);
  f.b2_quadratic(rho, qb, lb, cb);

  // Objective for fixed c: <a> + (c I + <b^2>/c) / 2.
  auto solve = [&](double c, Eigen::VectorXd& x) {
    const double w = c > 0.0 ? 0.5 / c : 0.0;
    const Eigen::MatrixXd m = qa + w * qb;
    const Eigen::VectorXd l = la + w * lb;
    x = m.completeOrthogonalDecomposition().solve(-l);
    const double a = std::max(0.0, x.dot(qa * x) + 2.0 * la.dot(x) + ca);
    const double b2 = std::max(0.0, x.dot(qb * x) + 2.0 * lb.dot(x) + cb);
    return std::pair{a, b2};
  };

  Theorem1Optimum out;
  Eigen::VectorXd x;
  if (qfi_now == 0.0) {
    const Eigen::VectorXd xa = qa.completeOrthogonalDecomposition().solve(-la);
    out.h = HCorrection::from_params(xa, f.lindblad_count);
    out.rate = theorem1_rate(rho, out.h, model, 0.0, space);
    return out;
  }
  // Seed the bracket from h = 0.
  const double c0 = std::sqrt(std::max(cb, 1e-300) / qfi_now);
  auto value = [&](double logc) {
    const double c = std::exp(logc);
    const auto [a, b2] = solve(c, x);
    return a + 0.5 * (c * qfi_now + b2 / c);
  };
  const double centre = std::log(c0);
  const ScalarOptimum best =
      golden_section_maximize([&](double u) { return -value(u); }, centre - 40.0, centre + 40.0, 1e-12, 600);
  solve(std::exp(best.x), x);
  out.h = HCorrection::from_params(x, f.lindblad_count);
  // Evaluate exactly (not through the c-relaxation) for the reported rate.
  out.rate = theorem1_rate(rho, out.h, model, qfi_now, space);
  return out;
}

PassiveTemperatureBounds passive_temperature_bounds(double n_env, double mean_photons, double kappa) {
  if (!(n_env > 0.0)) throw_invalid("n_E must be > 0");
  if (!(kappa >= 0.0 && kappa <= 1.0)) throw_invalid("transmissivity must lie in [0, 1]");
  if (!(mean_photons >= 0.0)) throw_invalid("photon number must be >= 0");
  const double n = n_env;
  PassiveTemperatureBounds out;
  out.single_shot = 1.0 / (n * (1.0 + n));
  if (kappa == 1.0) return out;  // purification bound vanishes
  const double lk = 1.0 - kappa;
  const double denom = n * lk + 1.0;
  out.purification = 1.0 / (n * (n + 1.0 / lk)) +
                     kappa * mean_photons * (2.0 * n + 1.0) * lk / (n * (n + 1.0) * denom * denom);
  return out;
}

}  // namespace bmetro
