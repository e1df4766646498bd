#include "oscsemi/gaussops.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <vector>

#include "oscsemi/diamond.hpp"
#include "oscsemi/matcore.hpp"
#include "oscsemi/symclass.hpp"

namespace osc {

namespace {

Complex principal_sqrt_det(const DetResult& d) {
  return std::exp(Complex(0.5 * d.log_abs, 0.5 * std::arg(d.value)));
}

// Drop an imaginary part that is provably roundoff dust: abs_form's output is
// real by the conjugation argument, numerics add O(eps * ||A||).
Matrix realify(const Matrix& m) {
  const double scale = std::max(1.0, m.norm());
  if (m.imag().cwiseAbs().maxCoeff() <= 1e-7 * scale)
    return m.real().cast<Complex>();
  return m;
}

void require_pos_strict(const SymMatrix& a, const char* what) {
  if (!classify_sym(a).flag("pos_strict"))
    throw OscError(ErrorKind::OutsideDomain, what);
}

}  // namespace

Matrix KernelGaussian::full() const {
  const Eigen::Index d = quad_xx.rows();
  Matrix m(2 * d, 2 * d);
  m.topLeftCorner(d, d) = quad_xx;
  m.topRightCorner(d, d) = quad_xy;
  m.bottomLeftCorner(d, d) = quad_xy.transpose();
  m.bottomRightCorner(d, d) = quad_yy;
  return m;
}

Complex KernelGaussian::eval(const RealVector& x, const RealVector& y) const {
  const Vector xc = x.cast<Complex>(), yc = y.cast<Complex>();
  const Complex q = (xc.transpose() * quad_xx * xc).value() +
                    2.0 * (xc.transpose() * quad_xy * yc).value() +
                    (yc.transpose() * quad_yy * yc).value();
  return prefactor * std::exp(-q);
}

GaussianOp adjoint(const GaussianOp& g) {
  return GaussianOp(std::conj(g.scale), g.form.conjugate());
}

bool is_positive(const GaussianOp& g, double tol) {
  const double mag = std::max(1.0, std::abs(g.scale));
  if (std::abs(g.scale.imag()) > tol * mag || g.scale.real() <= tol * mag)
    return false;
  return classify_sym(g.form, tol).flag("sym_p");
}

KernelGaussian gaussian_kernel(const GaussianOp& g) {
  // Boundary forms (Re A = 0, e.g. metaplectic symbols) still have genuine
  // Gaussian kernels as long as F is invertible; only Re A < 0 is rejected.
  if (!classify_sym(g.form).flag("pos_weak"))
    throw OscError(ErrorKind::OutsideDomain,
                   "gaussian_kernel: form must have Re A >= 0");
  const Eigen::Index d = g.half_dim();
  const Matrix& a = g.form.mat();
  const Matrix bb = a.topLeftCorner(d, d);
  const Matrix dd = a.topRightCorner(d, d);
  const Matrix ff = a.bottomRightCorner(d, d);

  const DetResult det_f = det_schur(ff);
  if (!std::isfinite(det_f.log_abs) || std::exp(det_f.log_abs) < kTauSing)
    throw OscError(ErrorKind::DegenerateF, "gaussian_kernel: det F ~ 0");
  const Matrix f_inv = inverse(ff);
  const Matrix gg = bb - dd * f_inv * dd.transpose();
  const Matrix h = dd * f_inv;
  const Matrix h_sym = h + h.transpose();
  const Matrix h_skew = h.transpose() - h;

  KernelGaussian k;
  k.quad_xx = 0.25 * (gg + f_inv + kI * h_sym);
  k.quad_yy = 0.25 * (gg + f_inv - kI * h_sym);
  k.quad_xy = 0.25 * (gg - f_inv + kI * h_skew);
  // Re F > 0 on the Siegel half-plane, so the accretive branch applies.
  k.prefactor = g.scale * std::pow(2.0, -(double)d) *
                std::pow(M_PI, -0.5 * (double)d) / sqrt_det_accretive(ff);
  return k;
}

Complex trace(const GaussianOp& g) {
  require_pos_strict(g.form, "trace: form must have Re A > 0");
  const DetResult det_a = det_schur(g.form.mat());
  if (!std::isfinite(det_a.log_abs) || std::exp(det_a.log_abs) < kTauSing)
    throw OscError(ErrorKind::DegenerateForm, "trace: det A ~ 0");
  const Eigen::Index d = g.half_dim();
  return g.scale / (std::pow(2.0, (double)d) *
                    sqrt_det_accretive(g.form.mat()));
}

Complex vacuum_expectation(const GaussianOp& g) {
  const KernelGaussian k = gaussian_kernel(g);
  const Eigen::Index d = g.half_dim();
  const Matrix q = k.full() + 0.5 * Matrix::Identity(2 * d, 2 * d);
  return k.prefactor * std::pow(M_PI, 0.5 * (double)d) /
         sqrt_det_accretive(q);
}

Complex vacuum_expectation_pair(const GaussianOp& g1, const GaussianOp& g2) {
  const KernelGaussian k1 = gaussian_kernel(g1);
  const KernelGaussian k2 = gaussian_kernel(g2);
  const Eigen::Index d = g1.half_dim();
  // Quadratic form over (x, u, y) of phi_0(x) K1(x,u) K2(u,y) phi_0(y).
  Matrix q = Matrix::Zero(3 * d, 3 * d);
  q.block(0, 0, d, d) = k1.quad_xx + 0.5 * Matrix::Identity(d, d);
  q.block(d, d, d, d) = k1.quad_yy + k2.quad_xx;
  q.block(2 * d, 2 * d, d, d) = k2.quad_yy + 0.5 * Matrix::Identity(d, d);
  q.block(0, d, d, d) = k1.quad_xy;
  q.block(d, 0, d, d) = k1.quad_xy.transpose();
  q.block(d, 2 * d, d, d) = k2.quad_xy;
  q.block(2 * d, d, d, d) = k2.quad_xy.transpose();
  return k1.prefactor * k2.prefactor * std::pow(M_PI, (double)d) /
         sqrt_det_accretive(q);
}

// Under the kernel convention used here, the operator product G1 G2 carries
// the exponent B<>A (the quadrature oracle pins the orientation); the scale
// prefactor det(1 + A theta B theta) is insensitive to the order.
GaussianOp compose_principal(const GaussianOp& g1, const GaussianOp& g2) {
  const SymMatrix ab = diamond(g2.form, g1.form);
  const Matrix th = theta(g1.half_dim());
  const Matrix m = Matrix::Identity(g1.form.dim(), g1.form.dim()) +
                   g1.form.mat() * th * g2.form.mat() * th;
  const Complex sq = principal_sqrt_det(det_schur(m));
  return GaussianOp(g1.scale * g2.scale / sq, ab);
}

ComposeResult compose(const GaussianOp& g1, const GaussianOp& g2) {
  if (!diamond_defined(g1.form, g2.form).defined)
    throw OscError(ErrorKind::NotComposable, "compose: A<>B undefined");

  const Matrix th = theta(g1.half_dim());
  const Matrix m = Matrix::Identity(g1.form.dim(), g1.form.dim()) +
                   g1.form.mat() * th * g2.form.mat() * th;
  const DetResult det = det_schur(m);

  ComposeResult out;
  out.op = GaussianOp(g1.scale * g2.scale / principal_sqrt_det(det),
                      diamond(g2.form, g1.form));
  out.sign_certain = !det.sign_uncertain();
  if (out.sign_certain) return out;

  // Near the branch cut the principal square root can land on the wrong
  // sheet; compare the two candidate products against the closed-form
  // vacuum expectation of the operator product.
  const ClassificationReport r1 = classify_sym(g1.form);
  const ClassificationReport r2 = classify_sym(g2.form);
  const ClassificationReport rp = classify_sym(out.op.form);
  if (!r1.flag("pos_strict") || !r2.flag("pos_strict") ||
      !rp.flag("pos_strict"))
    return out;  // no kernel route available; sign stays uncertain

  const Complex target = vacuum_expectation_pair(g1, g2);
  const Complex cand = vacuum_expectation(out.op);
  if (std::abs(target + cand) < std::abs(target - cand))
    out.op.scale = -out.op.scale;
  out.sign_certain =
      std::abs(target) > 1e-8 * std::max(1.0, std::abs(cand));
  return out;
}

SymMatrix abs_form(const SymMatrix& a) {
  const ClassificationReport rep = classify_sym(a);
  if (!rep.flag("pos_strict") || !rep.flag("qnd"))
    throw OscError(ErrorKind::QuantumDegenerate,
                   "abs_form: form must be accretive and quantum non-degenerate");
  const Matrix th = theta(a.half_dim());
  // |G|^2 = G* G carries the exponent A <> conj(A), i.e. the Cayley product
  // c(A theta) c(conj(A) theta) under the operator-order convention above.
  const Matrix r = cayley(a.mat() * th) * cayley(a.conjugate().mat() * th);
  const Matrix s = principal_sqrt(r);
  return SymMatrix(realify(cayley(s) * th));
}

GaussianOp abs_op(const GaussianOp& g) {
  const SymMatrix b = abs_form(g.form);
  const Matrix th = theta(g.half_dim());
  const Eigen::Index n = g.form.dim();
  const Matrix bt = b.mat() * th;
  const DetResult d1 = det_schur(Matrix::Identity(n, n) + bt * bt);
  const DetResult d2 = det_schur(Matrix::Identity(n, n) +
                                 g.form.conjugate().mat() * th *
                                     g.form.mat() * th);
  // Both determinants are positive real for qnd accretive input.
  const double prefactor = std::exp(0.25 * (d1.log_abs - d2.log_abs));
  return GaussianOp(std::abs(g.scale) * prefactor, b);
}

PolarResult polar(const GaussianOp& g) {
  const SymMatrix b = abs_form(g.form);  // checks qnd + accretive
  PolarResult out;
  out.positive = abs_op(g);
  if (!diamond_defined(-b, g.form).defined)
    throw OscError(ErrorKind::PolarUndefined,
                   "polar: (-B)<>A undefined; the unitary factor has no "
                   "Gaussian symbol");
  // U = G |G|^{-1}: with G1 G2 <-> B<>A, the unitary exponent solves
  // B <> X = A, so X = (-B) <> A.
  const SymMatrix ic = diamond(-b, g.form);  // = i C with C real

  // Fix U's scale by requiring U * |G| = G under the same deterministic
  // composition that the caller will use; this absorbs the projective +-.
  const GaussianOp probe = compose_principal(GaussianOp(1.0, ic), out.positive);
  out.unitary = GaussianOp(g.scale / probe.scale, ic);
  return out;
}

WilliamsonSpectrum williamson_spectrum(const SymMatrix& a) {
  const ClassificationReport rep = classify_sym(a);
  if (!rep.flag("real") || !rep.flag("pos_strict"))
    throw OscError(ErrorKind::OutsideDomain,
                   "williamson_spectrum: need a real positive definite form");
  const Vector ev = eigenvalues(a.mat() * theta(a.half_dim()));
  std::vector<double> pos;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i).real() > 0.0) pos.push_back(ev(i).real());
  std::sort(pos.begin(), pos.end());
  WilliamsonSpectrum w;
  w.lambdas = Eigen::Map<RealVector>(pos.data(), (Eigen::Index)pos.size());
  return w;
}

double trace_norm(const GaussianOp& g) {
  const ClassificationReport rep = classify_sym(g.form);
  if (!rep.flag("pos_strict"))
    throw OscError(ErrorKind::OutsideDomain,
                   "trace_norm: form must have Re A > 0");
  if (!rep.flag("qnd"))
    throw OscError(ErrorKind::QuantumDegenerate,
                   "trace_norm: det(1 + A theta) ~ 0, the formula is singular");
  if (rep.flag("real")) {
    const WilliamsonSpectrum w = williamson_spectrum(g.form);
    double val = std::abs(g.scale);
    for (Eigen::Index i = 0; i < w.lambdas.size(); ++i) {
      const double l = w.lambdas(i);
      val *= l <= 1.0 ? 1.0 / (2.0 * l) : 0.5;
    }
    return val;
  }
  const GaussianOp a = abs_op(g);
  const DetResult det_b = det_schur(a.form.mat());
  const Eigen::Index d = g.half_dim();
  return std::abs(a.scale) /
         (std::pow(2.0, (double)d) * std::exp(0.5 * det_b.log_abs));
}

double trace_norm_alt(const GaussianOp& g) {
  const Matrix th = theta(g.half_dim());
  const Eigen::Index n = g.form.dim();
  const Matrix at = g.form.mat() * th;
  const Matrix r = cayley(g.form.conjugate().mat() * th) * cayley(at);
  const Matrix s = principal_sqrt(r);
  const Matrix prod = (Matrix::Identity(n, n) + at) *
                      (Matrix::Identity(n, n) - s);
  const DetResult det = det_schur(prod);
  const Eigen::Index d = g.half_dim();
  return std::abs(g.scale) * std::sqrt(2.0) /
         (std::pow(2.0, (double)d) * std::exp(0.5 * det.log_abs));
}

double op_norm(const GaussianOp& g) {
  const ClassificationReport rep = classify_sym(g.form);
  if (!rep.flag("pos_strict"))
    throw OscError(ErrorKind::OutsideDomain,
                   "op_norm: form must have Re A > 0");
  SymMatrix b = g.form;
  double mag = std::abs(g.scale);
  if (!rep.flag("real")) {
    if (!rep.flag("qnd"))
      throw OscError(ErrorKind::QuantumDegenerate,
                     "op_norm: complex quantum degenerate form");
    const GaussianOp a = abs_op(g);
    b = a.form;
    mag = a.scale.real();
  }
  const WilliamsonSpectrum w = williamson_spectrum(b);
  for (Eigen::Index i = 0; i < w.lambdas.size(); ++i)
    mag /= 1.0 + w.lambdas(i);
  return mag;
}

NormalizeResult normalize(const GaussianOp& g) {
  const ClassificationReport rep = classify_sym(g.form);
  if (!rep.flag("qnd") || !rep.flag("pos_strict"))
    throw OscError(ErrorKind::QuantumDegenerate,
                   "normalize: form not in the normalized semigroup domain");
  const Matrix m = Matrix::Identity(g.form.dim(), g.form.dim()) +
                   g.form.mat() * theta(g.half_dim());
  const Complex pref = principal_sqrt_det(det_schur(m));
  NormalizeResult out;
  out.normalized.form = g.form;
  Complex r = g.scale / pref;
  // eps flips r into the right half-plane (argument in (-pi/2, pi/2]).
  if (r.real() < 0.0 || (r.real() == 0.0 && r.imag() < 0.0)) {
    out.normalized.sign = -1;
    r = -r;
  }
  out.residual = r;
  return out;
}

GaussianOp degenerate_1dof(Complex a_coef, Complex b_coef, Complex scale) {
  if (a_coef.real() <= 0.0 || b_coef.real() <= 0.0)
    throw OscError(ErrorKind::OutsideDomain,
                   "degenerate_1dof: need Re a > 0 and Re b > 0");
  const Complex s = a_coef + b_coef;
  Matrix a(2, 2);
  a << 4.0 * a_coef * b_coef / s, kI * (b_coef - a_coef) / s,
      kI * (b_coef - a_coef) / s, 1.0 / s;
  return GaussianOp(scale * 2.0 * std::sqrt(M_PI) / std::sqrt(s),
                    SymMatrix(a));
}

}  // namespace osc
