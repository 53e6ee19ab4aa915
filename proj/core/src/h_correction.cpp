#include "bmetro/h_correction.hpp"

#include "bmetro/error.hpp"

namespace bmetro {

HCorrection HCorrection::zero(int lindblad_count) {
  HCorrection h;
  h.hvec = Eigen::VectorXcd::Zero(lindblad_count);
  h.hmat = Eigen::MatrixXcd::Zero(lindblad_count, lindblad_count);
  return h;
}

Eigen::VectorXd HCorrection::to_params() const {
  const int j = lindblad_count();
  Eigen::VectorXd x(param_count(j));
  int p = 0;
  x(p++) = h00;
  for (int i = 0; i < j; ++i) {
    x(p++) = hvec(i).real();
    x(p++) = hvec(i).imag();
  }
  for (int i = 0; i < j; ++i) x(p++) = hmat(i, i).real();
  for (int i = 0; i < j; ++i) {
    for (int k = i + 1; k < j; ++k) {
      x(p++) = hmat(i, k).real();
      x(p++) = hmat(i, k).imag();
    }
  }
  return x;
}

HCorrection HCorrection::from_params(const Eigen::VectorXd& x, int lindblad_count) {
  const int j = lindblad_count;
  if (x.size() != param_count(j)) throw_invalid("h parameter vector has the wrong length");
  HCorrection h = zero(j);
  int p = 0;
  h.h00 = x(p++);
  for (int i = 0; i < j; ++i, p += 2) h.hvec(i) = Complex(x(p), x(p + 1));
  for (int i = 0; i < j; ++i) h.hmat(i, i) = x(p++);
  for (int i = 0; i < j; ++i) {
    for (int k = i + 1; k < j; ++k, p += 2) {
      h.hmat(i, k) = Complex(x(p), x(p + 1));
      h.hmat(k, i) = std::conj(h.hmat(i, k));
    }
  }
  return h;
}

namespace {

struct Ingredients {
  Operator hdot;
  std::vector<Operator> l;
  std::vector<Operator> ldot;
};

Ingredients ingredients(const LindbladModel& model, const FockSpace& space, bool general) {
  Ingredients in;
  in.hdot = model.hamiltonian_derivative(space);
  in.l = model.lindblad_operators(space);
  const int d = space.dim();
  if (general) {
    in.ldot = model.lindblad_derivatives(space);
  } else {
    in.ldot.assign(in.l.size(), Operator::Zero(d, d));
  }
  return in;
}

Operator b_constant(const Ingredients& in) {
  Operator b = in.hdot;
  for (std::size_t j = 0; j < in.l.size(); ++j) {
    b -= 0.5 * kI * (in.ldot[j].adjoint() * in.l[j] - in.l[j].adjoint() * in.ldot[j]);
  }
  return b;
}

}  // namespace

ABOperators ab_operators(const HCorrection& h, const LindbladModel& model, const FockSpace& space,
                         bool general) {
  const Ingredients in = ingredients(model, space, general);
  const int j = static_cast<int>(in.l.size());
  if (h.lindblad_count() != j || h.hmat.rows() != j || h.hmat.cols() != j) {
    throw_invalid("h correction size does not match the number of Lindblad operators");
  }
  const int d = space.dim();
  const Operator id = Operator::Identity(d, d);
  ABOperators out;
  out.a_op = Operator::Zero(d, d);
  out.b_op = b_constant(in) + h.h00 * id;
  for (int r = 0; r < j; ++r) {
    Operator k = kI * in.ldot[r] + h.hvec(r) * id;
    for (int c = 0; c < j; ++c) {
      k += h.hmat(r, c) * in.l[c];
      out.b_op += in.l[r].adjoint() * h.hmat(r, c) * in.l[c];
    }
    out.a_op += k.adjoint() * k;
    out.b_op += in.l[r].adjoint() * h.hvec(r) + std::conj(h.hvec(r)) * in.l[r];
  }
  return out;
}

AffineH affine_h(const LindbladModel& model, const FockSpace& space, bool general) {
  const Ingredients in = ingredients(model, space, general);
  const int j = static_cast<int>(in.l.size());
  const int d = space.dim();
  const Operator id = Operator::Identity(d, d);
  const Operator zero = Operator::Zero(d, d);

  AffineH f;
  f.lindblad_count = j;
  for (int r = 0; r < j; ++r) f.k0.push_back(kI * in.ldot[r]);
  f.b0 = b_constant(in);

  auto add = [&](std::vector<Operator> k, Operator b) {
    f.kp.push_back(std::move(k));
    f.bp.push_back(std::move(b));
  };
  // h00
  add(std::vector<Operator>(j, zero), id);
  // hvec_r = x + i y
  for (int r = 0; r < j; ++r) {
    std::vector<Operator> kre(j, zero), kim(j, zero);
    kre[r] = id;
    kim[r] = kI * id;
    add(kre, in.l[r].adjoint() + in.l[r]);
    add(kim, kI * (in.l[r].adjoint() - in.l[r]));
  }
  // hmat_rr
  for (int r = 0; r < j; ++r) {
    std::vector<Operator> k(j, zero);
    k[r] = in.l[r];
    add(k, in.l[r].adjoint() * in.l[r]);
  }
  // hmat_rc = x + i y (r < c), hmat_cr = x - i y
  for (int r = 0; r < j; ++r) {
    for (int c = r + 1; c < j; ++c) {
      std::vector<Operator> kre(j, zero), kim(j, zero);
      kre[r] = in.l[c];
      kre[c] = in.l[r];
      kim[r] = kI * in.l[c];
      kim[c] = -kI * in.l[r];
      const Operator lrc = in.l[r].adjoint() * in.l[c];
      const Operator lcr = in.l[c].adjoint() * in.l[r];
      add(kre, lrc + lcr);
      add(kim, kI * (lrc - lcr));
    }
  }
  return f;
}

namespace {

// tr(rho X'Y)
Complex gram(const Operator& rho, const Operator& x, const Operator& y) {
  return (rho * x.adjoint() * y).trace();
}

}  // namespace

void AffineH::a_quadratic(const Operator& rho, Eigen::MatrixXd& Q, Eigen::VectorXd& q, double& c) const {
  const int n = params();
  Q.setZero(n, n);
  q.setZero(n);
  c = 0.0;
  for (int r = 0; r < lindblad_count; ++r) {
    c += gram(rho, k0[r], k0[r]).real();
    for (int p = 0; p < n; ++p) {
      q(p) += gram(rho, k0[r], kp[p][r]).real();
      for (int s = p; s < n; ++s) {
        const double v = gram(rho, kp[p][r], kp[s][r]).real();
        Q(p, s) += v;
        if (s != p) Q(s, p) += v;
      }
    }
  }
}

void AffineH::b2_quadratic(const Operator& rho, Eigen::MatrixXd& Q, Eigen::VectorXd& q, double& c) const {
  const int n = params();
  Q.resize(n, n);
  q.resize(n);
  c = gram(rho, b0, b0).real();
  for (int p = 0; p < n; ++p) {
    q(p) = gram(rho, b0, bp[p]).real();
    for (int s = p; s < n; ++s) {
      Q(p, s) = Q(s, p) = gram(rho, bp[p], bp[s]).real();
    }
  }
}

}  // namespace bmetro
