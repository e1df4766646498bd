#include "oscsemi/matcore.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <cmath>
#include <map>
#include <mutex>

namespace osc {

namespace {

std::map<Eigen::Index, SympStructure> g_symp_cache;
std::mutex g_symp_mutex;

SympStructure make_symp(Eigen::Index d) {
  SympStructure s;
  s.half_dim = d;
  s.omega = RealMatrix::Zero(2 * d, 2 * d);
  s.omega.topRightCorner(d, d) = RealMatrix::Identity(d, d);
  s.omega.bottomLeftCorner(d, d) = -RealMatrix::Identity(d, d);
  s.theta = -kI * s.omega.cast<Complex>();
  return s;
}

// Apply f to a matrix: eigendecomposition fast path when the eigenvector
// basis is well conditioned, complex Schur with the Parlett recurrence
// otherwise. Branch correctness near defective matrices comes from the
// Schur path.
template <typename F>
Matrix matrix_function(const Matrix& m, F f) {
  const Eigen::Index n = m.rows();
  if (n == 1) return (Matrix(1, 1) << f(m(0, 0))).finished();

  Eigen::ComplexEigenSolver<Matrix> es(m, /*computeEigenvectors=*/true);
  if (es.info() == Eigen::Success) {
    const Matrix& v = es.eigenvectors();
    Eigen::JacobiSVD<Matrix> svd(v);
    const double smin = svd.singularValues()(n - 1);
    if (smin > 0 && svd.singularValues()(0) / smin < 1e6) {
      Vector fe(n);
      for (Eigen::Index i = 0; i < n; ++i) fe(i) = f(es.eigenvalues()(i));
      return v * fe.asDiagonal() * v.inverse();
    }
  }

  Eigen::ComplexSchur<Matrix> schur(m);
  const Matrix& t = schur.matrixT();
  const Matrix& u = schur.matrixU();
  Matrix ft = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) ft(i, i) = f(t(i, i));
  // Parlett recurrence along superdiagonals.
  for (Eigen::Index off = 1; off < n; ++off) {
    for (Eigen::Index i = 0; i + off < n; ++i) {
      const Eigen::Index j = i + off;
      Complex num = t(i, j) * (ft(i, i) - ft(j, j));
      for (Eigen::Index k = i + 1; k < j; ++k)
        num += ft(i, k) * t(k, j) - t(i, k) * ft(k, j);
      const Complex den = t(i, i) - t(j, j);
      if (std::abs(den) < 1e-14 * (std::abs(t(i, i)) + std::abs(t(j, j)) + 1.0))
        throw OscError(ErrorKind::BranchCut,
                       "matrix function: confluent eigenvalues in the Parlett recurrence");
      ft(i, j) = num / den;
    }
  }
  return u * ft * u.adjoint();
}

void check_spectrum_off_ray(const Matrix& m, double tau_branch,
                            const char* what) {
  const Vector ev = eigenvalues(m);
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const Complex z = ev(i);
    // distance to the closed ray (-inf, 0]
    const double dist = z.real() <= 0.0 ? std::abs(z.imag())
                                        : std::abs(z);
    if (z.real() <= 0.0 && dist <= tau_branch)
      throw OscError(ErrorKind::BranchCut, what);
    if (z.real() > 0.0 && std::abs(z) <= tau_branch)
      throw OscError(ErrorKind::BranchCut, what);
  }
}

}  // namespace

const SympStructure& symp(Eigen::Index half_dim) {
  std::lock_guard<std::mutex> lock(g_symp_mutex);
  auto it = g_symp_cache.find(half_dim);
  if (it == g_symp_cache.end())
    it = g_symp_cache.emplace(half_dim, make_symp(half_dim)).first;
  return it->second;
}

Matrix theta(Eigen::Index half_dim) { return symp(half_dim).theta; }
RealMatrix omega(Eigen::Index half_dim) { return symp(half_dim).omega; }

Matrix cayley(const Matrix& m, double tau_sing) {
  const Eigen::Index n = m.rows();
  const Vector ev = eigenvalues(m);
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (std::abs(ev(i) + 1.0) <= tau_sing)
      throw OscError(ErrorKind::SingularShift, "cayley: eigenvalue at -1");
  const Matrix shift = Matrix::Identity(n, n) + m;
  Eigen::PartialPivLU<Matrix> lu(shift);
  // (1-M) and (1+M)^{-1} commute, so the one-sided solve is exact.
  return lu.solve(Matrix::Identity(n, n) - m);
}

Matrix principal_sqrt(const Matrix& m, double tau_branch) {
  check_spectrum_off_ray(m, tau_branch, "principal_sqrt: eigenvalue on (-inf,0]");
  const Eigen::Index n = m.rows();
  // Bjorck-Hammarling recurrence on the Schur factor; exact even for
  // repeated eigenvalues, unlike the generic Parlett path.
  Eigen::ComplexSchur<Matrix> schur(m);
  const Matrix& t = schur.matrixT();
  const Matrix& u = schur.matrixU();
  Matrix s = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) s(i, i) = std::sqrt(t(i, i));
  for (Eigen::Index off = 1; off < n; ++off) {
    for (Eigen::Index i = 0; i + off < n; ++i) {
      const Eigen::Index j = i + off;
      Complex acc = t(i, j);
      for (Eigen::Index k = i + 1; k < j; ++k) acc -= s(i, k) * s(k, j);
      s(i, j) = acc / (s(i, i) + s(j, j));
    }
  }
  return u * s * u.adjoint();
}

Matrix matrix_power(const Matrix& r, double t, double tau_branch) {
  const Vector ev = eigenvalues(r);
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const Complex z = ev(i);
    if (z.real() <= tau_branch || std::abs(z.imag()) > 1e-8 * (1.0 + std::abs(z)))
      throw OscError(ErrorKind::BranchCut,
                     "matrix_power: spectrum not inside (0, inf)");
  }
  if (t == 0.0) return Matrix::Identity(r.rows(), r.cols());
  if (t == 1.0) return r;
  return matrix_function(r, [t](Complex z) { return std::pow(z, t); });
}

Matrix matrix_exp(const Matrix& m) {
  // Scaling and squaring with the (13,13) Pade approximant.
  const Eigen::Index n = m.rows();
  const double nrm = m.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (nrm > 5.4) squarings = std::max(0, (int)std::ceil(std::log2(nrm / 5.4)));
  const Matrix a = m / std::pow(2.0, squarings);

  static const double b[] = {64764752532480000., 32382376266240000., 7771770303897600.,
                             1187353796428800.,  129060195264000.,   10559470521600.,
                             670442572800.,      33522128640.,       1323241920.,
                             40840800.,          960960.,            16380.,
                             182.,               1.};
  const Matrix ident = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const Matrix u_part =
      a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
           b[3] * a2 + b[1] * ident);
  const Matrix v_part = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 +
                        b[4] * a4 + b[2] * a2 + b[0] * ident;
  Matrix f = (v_part - u_part).partialPivLu().solve(v_part + u_part);
  for (int i = 0; i < squarings; ++i) f = f * f;
  return f;
}

Complex DetResult::sqrt() const {
  return std::exp(Complex(0.5 * log_abs, 0.5 * arg_sum));
}

bool DetResult::sign_uncertain(double band) const {
  const double folded = std::arg(value);
  return std::abs(std::abs(folded) - M_PI) < band;
}

DetResult det_schur(const Matrix& m) {
  Eigen::ComplexSchur<Matrix> schur(m, /*computeU=*/false);
  const Matrix& t = schur.matrixT();
  DetResult r;
  Complex prod{1.0, 0.0};
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    const Complex d = t(i, i);
    if (d == Complex(0.0, 0.0)) {
      r.value = 0.0;
      r.log_abs = -std::numeric_limits<double>::infinity();
      return r;
    }
    r.log_abs += std::log(std::abs(d));
    r.arg_sum += std::arg(d);
    prod *= d;
  }
  r.value = prod;
  return r;
}

Complex sqrt_det_accretive(const Matrix& m) {
  const Vector ev = eigenvalues(m);
  Complex prod{1.0, 0.0};
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i).real() <= 0.0 && std::abs(ev(i).imag()) < 1e-14)
      throw OscError(ErrorKind::BranchCut,
                     "sqrt_det_accretive: eigenvalue on (-inf, 0]");
    prod *= std::sqrt(ev(i));
  }
  return prod;
}

Matrix inverse(const Matrix& m, double kappa_max) {
  if (condition_estimate(m) > kappa_max)
    throw OscError(ErrorKind::Singular, "inverse: condition estimate exceeded");
  return m.partialPivLu().inverse();
}

Vector eigenvalues(const Matrix& m) {
  Eigen::ComplexEigenSolver<Matrix> es(m, /*computeEigenvectors=*/false);
  return es.eigenvalues();
}

double condition_estimate(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const double smin = svd.singularValues()(m.rows() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return svd.singularValues()(0) / smin;
}

Block2Inverse block2_inverse(const Matrix& p, const Matrix& q, const Matrix& r,
                             const Matrix& s, double kappa_max) {
  const Eigen::Index n = p.rows();
  Matrix big(2 * n, 2 * n);
  big << p, q, r, s;
  if (condition_estimate(big) > kappa_max)
    throw OscError(ErrorKind::Singular, "block2_inverse: condition estimate exceeded");
  const Matrix inv = big.partialPivLu().inverse();
  Block2Inverse out;
  out.top_left = inv.topLeftCorner(n, n);
  out.top_right = inv.topRightCorner(n, n);
  out.bottom_left = inv.bottomLeftCorner(n, n);
  out.bottom_right = inv.bottomRightCorner(n, n);
  return out;
}

}  // namespace osc
