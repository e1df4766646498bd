#include "oscsemi/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "oscsemi/diamond.hpp"
#include "oscsemi/matcore.hpp"

namespace osc {

namespace {

// Decay rate of the integrand's Gaussian envelope along the slowest axis;
// the basis functions contribute e^{-x^2/2} on top of the kernel.
double kernel_decay(const Matrix& quad_full) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(
      0.5 * (quad_full + quad_full.adjoint()), Eigen::EigenvaluesOnly);
  return std::max(es.eigenvalues()(0), 0.0);
}

int default_nodes(int trunc, Eigen::Index d) {
  const int n = 2 * trunc + (d == 1 ? 16 : 8);
  return std::max(n, 24);
}

struct PreparedQuad {
  RealVector x;        // scaled nodes s * t_i
  RealVector w;        // s * w_i * e^{t_i^2}  (plain-quadrature weights)
  RealMatrix phi;      // basis functions at the scaled nodes
};

PreparedQuad prepare(int n_nodes, double s, int trunc) {
  const GaussHermite gh = gauss_hermite(n_nodes);
  PreparedQuad p;
  p.x = s * gh.nodes;
  p.w = s * gh.plain_weights;
  p.phi = hermite_functions(p.x, trunc);
  return p;
}

double tail_of(const Matrix& m, int trunc, Eigen::Index d) {
  double tail = 0.0;
  const Eigen::Index side = m.rows();
  auto touches_last = [&](Eigen::Index flat) {
    if (d == 1) return flat == trunc - 1;
    return flat % trunc == trunc - 1 || flat / trunc == trunc - 1;
  };
  for (Eigen::Index i = 0; i < side; ++i)
    for (Eigen::Index j = 0; j < side; ++j)
      if (touches_last(i) || touches_last(j))
        tail = std::max(tail, std::abs(m(i, j)));
  return tail;
}

HermiteMatrix hermite_matrix_1d(const GaussianOp& g, int trunc,
                                QuadratureSpec quad) {
  const KernelGaussian k = gaussian_kernel(g);
  const int n = quad.nodes > 0 ? quad.nodes : default_nodes(trunc, 1);
  const double s = quad.scaling > 0
                       ? quad.scaling
                       : 1.0 / std::sqrt(kernel_decay(k.full()) + 0.5);
  const PreparedQuad p = prepare(n, s, trunc);

  Matrix kern(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      kern(i, j) = std::exp(-(k.quad_xx(0, 0) * p.x(i) * p.x(i) +
                              2.0 * k.quad_xy(0, 0) * p.x(i) * p.x(j) +
                              k.quad_yy(0, 0) * p.x(j) * p.x(j)));
  const Matrix wphi =
      (p.w.asDiagonal() * p.phi).cast<Complex>();
  HermiteMatrix out;
  out.trunc = trunc;
  out.entries = k.prefactor * (wphi.transpose() * kern * wphi);
  out.tail_witness = tail_of(out.entries, trunc, 1);
  return out;
}

HermiteMatrix hermite_matrix_2d(const GaussianOp& g, int trunc,
                                QuadratureSpec quad) {
  const KernelGaussian k = gaussian_kernel(g);
  const int n = quad.nodes > 0 ? quad.nodes : default_nodes(trunc, 2);
  const double s = quad.scaling > 0
                       ? quad.scaling
                       : 1.0 / std::sqrt(kernel_decay(k.full()) + 0.5);
  const PreparedQuad p = prepare(n, s, trunc);

  // Exponent over u = (x1, x2, y1, y2); the kernel on the tensor grid is the
  // elementwise product of pairwise factors, which keeps the assembly at
  // O(n^4) scalar multiplies instead of O(n^4) exp evaluations of 4x4 forms.
  Matrix q(4, 4);
  q.topLeftCorner(2, 2) = k.quad_xx;
  q.topRightCorner(2, 2) = k.quad_xy;
  q.bottomLeftCorner(2, 2) = k.quad_xy.transpose();
  q.bottomRightCorner(2, 2) = k.quad_yy;

  Matrix pair_fac[4][4];
  for (int a = 0; a < 4; ++a)
    for (int b = a; b < 4; ++b) {
      pair_fac[a][b].resize(n, n);
      const Complex coef = a == b ? q(a, a) : 2.0 * q(a, b);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          pair_fac[a][b](i, j) = std::exp(-coef * p.x(i) * p.x(j));
    }

  const Eigen::Index nn = (Eigen::Index)n * n;
  Matrix kern(nn, nn);
#pragma omp parallel for collapse(2) schedule(static)
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2) {
      const Complex base = pair_fac[0][0](i1, i1) * pair_fac[0][1](i1, i2) *
                           pair_fac[1][1](i2, i2);
      for (int j1 = 0; j1 < n; ++j1) {
        const Complex row = base * pair_fac[0][2](i1, j1) *
                            pair_fac[1][2](i2, j1) * pair_fac[2][2](j1, j1);
        for (int j2 = 0; j2 < n; ++j2)
          kern((Eigen::Index)i1 * n + i2, (Eigen::Index)j1 * n + j2) =
              row * pair_fac[0][3](i1, j2) * pair_fac[1][3](i2, j2) *
              pair_fac[2][3](j1, j2) * pair_fac[3][3](j2, j2);
      }
    }

  // G[(i1,i2),(m1,m2)] = w(i1) w(i2) phi_{m1}(x_{i1}) phi_{m2}(x_{i2})
  const RealMatrix wphi = p.w.asDiagonal() * p.phi;
  RealMatrix big(nn, (Eigen::Index)trunc * trunc);
  for (int i1 = 0; i1 < n; ++i1)
    for (int m1 = 0; m1 < trunc; ++m1)
      big.block((Eigen::Index)i1 * n, (Eigen::Index)m1 * trunc, n, trunc) =
          wphi(i1, m1) * wphi;

  const Matrix bigc = big.cast<Complex>();
  HermiteMatrix out;
  out.trunc = trunc;
  out.entries = k.prefactor * (bigc.transpose() * (kern * bigc));
  out.tail_witness = tail_of(out.entries, trunc, 2);
  return out;
}

}  // namespace

GaussHermite gauss_hermite(int n) {
  if (n < 2) throw std::invalid_argument("gauss_hermite: need n >= 2");
  RealMatrix jac = RealMatrix::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    const double b = std::sqrt(0.5 * i);
    jac(i, i - 1) = b;
    jac(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(jac);
  GaussHermite gh;
  gh.nodes = es.eigenvalues();
  gh.weights.resize(n);
  const double total = std::sqrt(M_PI);
  for (int i = 0; i < n; ++i) {
    const double v0 = es.eigenvectors()(0, i);
    gh.weights(i) = total * v0 * v0;
  }
  const RealMatrix phi = hermite_functions(gh.nodes, n);
  gh.plain_weights = phi.cwiseAbs2().rowwise().sum().cwiseInverse();
  return gh;
}

RealMatrix hermite_functions(const RealVector& x, int count) {
  const Eigen::Index n = x.size();
  RealMatrix phi(n, count);
  const double c0 = std::pow(M_PI, -0.25);
  for (Eigen::Index i = 0; i < n; ++i)
    phi(i, 0) = c0 * std::exp(-0.5 * x(i) * x(i));
  if (count > 1) phi.col(1) = std::sqrt(2.0) * x.cwiseProduct(phi.col(0));
  for (int m = 1; m + 1 < count; ++m)
    phi.col(m + 1) = std::sqrt(2.0 / (m + 1)) * x.cwiseProduct(phi.col(m)) -
                     std::sqrt((double)m / (m + 1)) * phi.col(m - 1);
  return phi;
}

HermiteMatrix hermite_matrix(const GaussianOp& g, int trunc,
                             QuadratureSpec quad) {
  if (trunc < 1) throw std::invalid_argument("hermite_matrix: need trunc >= 1");
  switch (g.half_dim()) {
    case 1:
      return hermite_matrix_1d(g, trunc, quad);
    case 2:
      return hermite_matrix_2d(g, trunc, quad);
    default:
      throw OscError(ErrorKind::OutsideDomain,
                     "hermite_matrix: oracle supports d = 1 and d = 2 only");
  }
}

NumericFunctionals numeric_functionals(const HermiteMatrix& m) {
  NumericFunctionals f;
  f.trace = m.entries.trace();
  Eigen::BDCSVD<Matrix> svd(m.entries);
  f.singular_values = svd.singularValues();
  f.trace_norm = f.singular_values.sum();
  f.op_norm = f.singular_values.size() > 0 ? f.singular_values(0) : 0.0;
  Eigen::ComplexEigenSolver<Matrix> es(m.entries,
                                       /*computeEigenvectors=*/false);
  f.eigenvalues = es.eigenvalues();
  return f;
}

HermiteMatrix compose_numeric(const GaussianOp& g1, const GaussianOp& g2,
                              int trunc, QuadratureSpec quad) {
  const HermiteMatrix m1 = hermite_matrix(g1, trunc, quad);
  const HermiteMatrix m2 = hermite_matrix(g2, trunc, quad);
  HermiteMatrix out;
  out.trunc = trunc;
  out.entries = m1.entries * m2.entries;
  out.tail_witness = std::max(m1.tail_witness, m2.tail_witness);
  return out;
}

double symbol_roundtrip(const GaussianOp& g,
                        const std::vector<RealVector>& points,
                        QuadratureSpec quad) {
  const KernelGaussian k = gaussian_kernel(g);
  const Eigen::Index d = g.half_dim();
  if (d != 1)
    throw OscError(ErrorKind::OutsideDomain,
                   "symbol_roundtrip: implemented for d = 1");

  // z-dependence of C(x + z/2, x - z/2) is quadratic with this coefficient.
  const Complex kz = 0.25 * (k.quad_xx(0, 0) + k.quad_yy(0, 0)) -
                     0.5 * k.quad_xy(0, 0);
  const int n = quad.nodes > 0 ? quad.nodes : 96;
  const double s =
      quad.scaling > 0 ? quad.scaling
                       : 1.0 / std::sqrt(std::max(kz.real(), 1e-3));
  const GaussHermite gh = gauss_hermite(n);

  double worst = 0.0;
  RealVector xz(1), yz(1);
  for (const RealVector& pt : points) {
    const double x = pt(0), p = pt(1);
    Complex acc{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
      const double z = s * gh.nodes(i);
      xz(0) = x + 0.5 * z;
      yz(0) = x - 0.5 * z;
      acc += s * gh.plain_weights(i) * k.eval(xz, yz) *
             std::exp(Complex(0.0, -z * p));
    }
    Vector y(2);
    y << x, p;
    const Complex expected =
        g.scale * std::exp(-(y.transpose() * g.form.mat() * y).value());
    worst = std::max(worst, std::abs(acc - expected));
  }
  return worst;
}

double star_integral_check(const SymMatrix& a, const SymMatrix& b,
                           const std::vector<RealVector>& y_points) {
  const Eigen::Index n2 = a.dim();
  const Eigen::Index d = a.half_dim();
  const Matrix th = theta(d);

  // Degenerate endpoints: convolving against a unit symbol returns the other
  // factor, but the 4d-dimensional matrix below is no longer accretive.
  if (a.mat().norm() == 0.0 || b.mat().norm() == 0.0) {
    const Matrix& other = a.mat().norm() == 0.0 ? b.mat() : a.mat();
    const ComposeResult cr = compose(GaussianOp(1.0, a), GaussianOp(1.0, b));
    double worst0 = 0.0;
    for (const RealVector& yp : y_points) {
      const Vector y = yp.cast<Complex>();
      const Complex lhs = std::exp(-(y.transpose() * other * y).value());
      const Complex rhs =
          cr.op.scale *
          std::exp(-(y.transpose() * cr.op.form.mat() * y).value());
      worst0 = std::max(worst0, std::abs(lhs - rhs));
    }
    return worst0;
  }

  // The twisted-convolution symbol of Op(e^{-A}) Op(e^{-B}) in closed form:
  // one 4d-dimensional Gaussian integral with matrix [[B, -theta],
  // [theta, A]] and a linear shift (the twist orientation pairs the second
  // factor with the top-left block under this kernel convention).
  Matrix m(2 * n2, 2 * n2);
  m.topLeftCorner(n2, n2) = b.mat();
  m.topRightCorner(n2, n2) = -th;
  m.bottomLeftCorner(n2, n2) = th;
  m.bottomRightCorner(n2, n2) = a.mat();
  const Complex det_root = sqrt_det_accretive(m);
  const Matrix m_inv = inverse(m);

  const ComposeResult composed =
      compose(GaussianOp(1.0, a), GaussianOp(1.0, b));

  double worst = 0.0;
  for (const RealVector& yp : y_points) {
    const Vector y = yp.cast<Complex>();
    Vector shift(2 * n2);
    shift.head(n2) = -th * y;
    shift.tail(n2) = th * y;
    const Complex lhs =
        std::exp((shift.transpose() * m_inv * shift).value()) / det_root;
    const Complex rhs =
        composed.op.scale *
        std::exp(-(y.transpose() * composed.op.form.mat() * y).value());
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

}  // namespace osc
