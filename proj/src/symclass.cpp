#include "oscsemi/symclass.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "oscsemi/matcore.hpp"

namespace osc {

namespace {

double min_hermitian_eig(const Matrix& m) {
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// Distance of z to the closed ray (-inf, 0].
double dist_to_negative_ray(Complex z) {
  if (z.real() <= 0.0) return std::abs(z.imag());
  return std::abs(z);
}

}  // namespace

double qnd_witness(const SymMatrix& a) {
  const Matrix th = theta(a.half_dim());
  const Complex det = det_schur(Matrix::Identity(a.dim(), a.dim()) + a.mat() * th).value;
  const double n = (double)a.dim();
  // Raw determinants scale like ||A||^{2d}; normalize for stability.
  const double scale = std::max(1.0, std::pow(a.mat().norm() / std::sqrt(n), n));
  return std::abs(det) / scale;
}

ClassificationReport classify_sym(const SymMatrix& a, double tol) {
  ClassificationReport rep;
  rep.tol = tol;
  const Matrix& m = a.mat();
  const Matrix th = theta(a.half_dim());

  const double max_im = m.imag().cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, m.norm());
  rep.witnesses["max_im"] = max_im;
  const bool real = max_im <= tol * scale;
  rep.flags["real"] = real;

  const double min_re_eig = min_hermitian_eig(m);
  rep.witnesses["min_eig_re"] = min_re_eig;
  rep.flags["pos_weak"] = min_re_eig >= -tol * scale;
  const bool pos_strict = min_re_eig > tol * scale;
  rep.flags["pos_strict"] = pos_strict;

  const double qnd_w = qnd_witness(a);
  rep.witnesses["qnd_witness"] = qnd_w;
  rep.flags["qnd"] = qnd_w > tol;

  const Vector ev = eigenvalues(m * th);
  double max_abs = 0.0, max_re = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    max_abs = std::max(max_abs, std::abs(ev(i)));
    max_re = std::max(max_re, std::abs(ev(i).real()));
  }
  rep.witnesses["spectral_radius_Atheta"] = max_abs;
  rep.witnesses["sym_p_margin"] = 1.0 - max_abs;

  // Sym_p: real, strictly positive definite, sigma(A theta) inside [-1, 1].
  rep.flags["sym_p"] = real && pos_strict && max_abs <= 1.0 + tol;
  rep.flags["sym_p_qnd"] = real && pos_strict && max_abs < 1.0 - tol;
  // boundary-friendly variant over A >= 0
  rep.flags["sym_p_weak"] =
      real && rep.flag("pos_weak") && max_abs <= 1.0 + tol;
  return rep;
}

ClassificationReport classify_sp(const Matrix& r, double tol) {
  ClassificationReport rep;
  rep.tol = tol;
  const Eigen::Index n = r.rows();
  const Eigen::Index d = n / 2;
  const Matrix om = omega(d).cast<Complex>();
  const Matrix th = theta(d);
  const double scale = std::max(1.0, r.norm() * r.norm());

  const double sp_resid = (r.transpose() * om * r - om).norm();
  rep.witnesses["sp_residual"] = sp_resid;
  rep.flags["sp"] = sp_resid <= tol * scale;

  const Vector ev = eigenvalues(r);
  double min_shift = std::numeric_limits<double>::infinity();
  double min_ray_dist = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    min_shift = std::min(min_shift, std::abs(ev(i) + 1.0));
    min_ray_dist = std::min(min_ray_dist, dist_to_negative_ray(ev(i)));
  }
  rep.witnesses["min_dist_spectrum_to_minus1"] = min_shift;
  rep.witnesses["min_dist_spectrum_to_ray"] = min_ray_dist;
  rep.flags["reg"] = min_shift > tol;

  // theta - R* theta R is Hermitian; its minimal eigenvalue decides Sp_+/Sp_++.
  const Matrix gap = th - r.adjoint() * th * r;
  const double min_gap = min_hermitian_eig(gap);
  rep.witnesses["min_eig_theta_gap"] = min_gap;
  rep.flags["sp_plus"] = rep.flag("sp") && min_gap >= -tol * scale;
  rep.flags["sp_pp"] = rep.flag("sp") && min_gap > tol * scale;

  const double h_resid = (r.conjugate() * r - Matrix::Identity(n, n)).norm();
  rep.witnesses["sp_h_residual"] = h_resid;
  const bool sp_h = rep.flag("sp") && h_resid <= tol * scale;
  rep.flags["sp_h"] = sp_h;

  bool positive_spectrum = true;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i).real() <= tol || std::abs(ev(i).imag()) > tol * (1.0 + std::abs(ev(i))))
      positive_spectrum = false;
  rep.flags["sp_p"] = sp_h && positive_spectrum;
  return rep;
}

ClassificationReport classify_sp_alg(const Matrix& d_mat, double tol) {
  ClassificationReport rep;
  rep.tol = tol;
  const Eigen::Index n = d_mat.rows();
  const Eigen::Index d = n / 2;
  const Matrix om = omega(d).cast<Complex>();
  const Matrix th = theta(d);
  const double scale = std::max(1.0, d_mat.norm());

  const double sp_resid = (d_mat.transpose() * om + om * d_mat).norm();
  rep.witnesses["sp_residual"] = sp_resid;
  rep.flags["sp"] = sp_resid <= tol * scale;

  const double min_acc = min_hermitian_eig(d_mat.adjoint() * th + th * d_mat);
  rep.witnesses["min_eig_accretive"] = min_acc;
  rep.flags["sp_plus"] = rep.flag("sp") && min_acc >= -tol * scale;
  rep.flags["sp_pp"] = rep.flag("sp") && min_acc > tol * scale;

  const double h_resid = (d_mat.conjugate() + d_mat).norm();
  rep.witnesses["sp_h_residual"] = h_resid;
  const bool sp_h = rep.flag("sp") && h_resid <= tol * scale;
  rep.flags["sp_h"] = sp_h;

  const double min_theta_d = min_hermitian_eig(th * d_mat);
  rep.witnesses["min_eig_theta_D"] = min_theta_d;
  rep.flags["sp_p"] = sp_h && min_theta_d > tol * scale;
  return rep;
}

}  // namespace osc
