#include "oscsemi/hamflow.hpp"

#include <cmath>

#include "oscsemi/matcore.hpp"
#include "oscsemi/symclass.hpp"

namespace osc {

namespace {

Matrix flow_with_sign(const Matrix& d, Complex z, int sigma) {
  return matrix_exp((double)sigma * kI * z * d);
}

SymMatrix exponent_at(const Matrix& d, Complex z, int sigma,
                      Eigen::Index half_dim) {
  const Matrix r = flow_with_sign(d, z, sigma);
  return SymMatrix(cayley(r) * theta(half_dim));
}

}  // namespace

QuadHamiltonian::QuadHamiltonian(SymMatrix h) : h_(std::move(h)) {
  const Eigen::Index d = h_.half_dim();
  const Matrix om_inv = -omega(d).cast<Complex>();  // omega^{-1} = -omega
  d_ = 2.0 * h_.mat() * om_inv;

  // Calibrate: A_z should reduce to z H as z -> 0 along the positive axis.
  if (h_.mat().norm() > 0) {
    const Complex z{1e-4, 0.0};
    const Matrix target = z * h_.mat();
    double best = -1.0;
    for (int sigma : {-1, +1}) {
      const double err =
          (exponent_at(d_, z, sigma, d).mat() - target).norm();
      if (best < 0.0 || err < best) {
        best = err;
        sigma_ = sigma;
      }
    }
  }
}

Matrix QuadHamiltonian::flow(Complex z) const {
  return flow_with_sign(d_, z, sigma_);
}

GaussianOp propagator(const QuadHamiltonian& h, Complex z) {
  const Matrix r = h.flow(z);
  SymMatrix az;
  try {
    az = SymMatrix(cayley(r) * theta(h.half_dim()));
  } catch (const OscError& e) {
    if (e.kind() == ErrorKind::SingularShift)
      throw OscError(ErrorKind::NoGaussianSymbol,
                     "propagator: 1 + e^{izD} is singular");
    throw;
  }
  if (domain_member(h, z) != RegionLabel::Interior)
    throw OscError(ErrorKind::OutsideDomain,
                   "propagator: z outside the holomorphic domain");
  const Matrix m = Matrix::Identity(az.dim(), az.dim()) +
                   az.mat() * theta(h.half_dim());
  const DetResult det = det_schur(m);
  const Complex scale =
      std::exp(Complex(0.5 * det.log_abs, 0.5 * std::arg(det.value)));
  return GaussianOp(scale, az);
}

RegionLabel domain_member(const QuadHamiltonian& h, Complex z, double tol) {
  const ClassificationReport rep = classify_sp(h.flow(z), tol);
  if (!rep.flag("sp")) return RegionLabel::Outside;
  const double gap = rep.witness("min_eig_theta_gap");
  if (gap > tol) return RegionLabel::Interior;
  if (gap >= -tol) return RegionLabel::Closure;
  return RegionLabel::Outside;
}

RegionLabel davies_member(double psi, Complex z, double tol) {
  if (std::abs(psi) >= M_PI / 2.0)
    throw OscError(ErrorKind::OutsideDomain, "davies_member: need |psi| < pi/2");
  if (z.real() < -tol) return RegionLabel::Outside;

  double abs_arg;
  if (std::abs(z.real()) > 20.0) {
    abs_arg = 0.0;  // tanh z = +-1 up to 1e-17; arg folds to 0
  } else {
    // arg tanh z = arg(sinh z * conj(cosh z)), overflow-free and pole-safe.
    const Complex w = std::sinh(z) * std::conj(std::cosh(z));
    if (std::abs(w) < 1e-300) {
      if (std::abs(std::cosh(z)) < 1e-8)
        abs_arg = M_PI / 2.0;  // pole of tanh: purely imaginary blow-up
      else
        abs_arg = 0.0;  // zero of tanh
    } else {
      abs_arg = std::abs(std::arg(w));
    }
  }
  const double margin = M_PI / 2.0 - abs_arg - std::abs(psi);
  if (margin > tol && z.real() > tol) return RegionLabel::Interior;
  if (margin >= -tol && z.real() >= -tol) return RegionLabel::Closure;
  return RegionLabel::Outside;
}

namespace {

template <typename F>
DomainSample sample_grid(double re0, double re1, double im0, double im1,
                         int res, F label_of) {
  if (res < 1 || res > 2000)
    throw std::invalid_argument("sample_region: resolution out of range");
  DomainSample out;
  out.grid.resize((size_t)res * res);
  out.labels.resize((size_t)res * res);
  const double dre = res > 1 ? (re1 - re0) / (res - 1) : 0.0;
  const double dim = res > 1 ? (im1 - im0) / (res - 1) : 0.0;
#pragma omp parallel for collapse(2) schedule(dynamic, 16)
  for (int i = 0; i < res; ++i) {
    for (int j = 0; j < res; ++j) {
      const Complex z{re0 + i * dre, im0 + j * dim};
      const size_t idx = (size_t)i * res + j;
      out.grid[idx] = z;
      out.labels[idx] = label_of(z);
    }
  }
  return out;
}

}  // namespace

DomainSample sample_region_davies(double psi, double re0, double re1,
                                  double im0, double im1, int res,
                                  double tol) {
  if (std::abs(psi) >= M_PI / 2.0)
    throw OscError(ErrorKind::OutsideDomain,
                   "sample_region: need |psi| < pi/2");
  return sample_grid(re0, re1, im0, im1, res,
                     [&](Complex z) { return davies_member(psi, z, tol); });
}

DomainSample sample_region(const QuadHamiltonian& h, double re0, double re1,
                           double im0, double im1, int res, double tol) {
  return sample_grid(re0, re1, im0, im1, res,
                     [&](Complex z) { return domain_member(h, z, tol); });
}

GaussianOp metaplectic_form(const QuadHamiltonian& h, double t) {
  if (!h.form().is_real())
    throw OscError(ErrorKind::OutsideDomain,
                   "metaplectic_form: H must be real");
  const Eigen::Index d = h.half_dim();
  const Matrix om_inv = -omega(d).cast<Complex>();
  const Matrix r = matrix_exp(t * h.generator());
  Matrix ct;
  try {
    ct = cayley(r) * om_inv;
  } catch (const OscError& e) {
    if (e.kind() == ErrorKind::SingularShift)
      throw OscError(ErrorKind::NoGaussianSymbol,
                     "metaplectic_form: 1 + e^{tD} is singular");
    throw;
  }
  const Matrix om = omega(d).cast<Complex>();
  const DetResult det =
      det_schur(Matrix::Identity(2 * d, 2 * d) + ct * om);
  const Complex scale =
      std::exp(Complex(0.5 * det.log_abs, 0.5 * std::arg(det.value)));
  return GaussianOp(scale, SymMatrix(kI * ct));
}

}  // namespace osc
