#include "oscsemi/sampling.hpp"

#include "oscsemi/matcore.hpp"
#include "oscsemi/symclass.hpp"

namespace osc {

namespace {

RealMatrix gaussian_matrix(Rng& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  RealMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = g(rng);
  return m;
}

}  // namespace

RealMatrix random_real_symmetric(Rng& rng, Eigen::Index n, double scale) {
  const RealMatrix m = gaussian_matrix(rng, n);
  return scale / std::sqrt((double)n) * 0.5 * (m + m.transpose());
}

RealMatrix random_spd(Rng& rng, Eigen::Index n) {
  const RealMatrix m = gaussian_matrix(rng, n) / std::sqrt((double)n);
  return m * m.transpose() + 0.2 * RealMatrix::Identity(n, n);
}

Matrix random_complex_symmetric(Rng& rng, Eigen::Index n, double scale) {
  return random_real_symmetric(rng, n, scale).cast<Complex>() +
         kI * random_real_symmetric(rng, n, scale).cast<Complex>();
}

RealMatrix random_symplectic(Rng& rng, Eigen::Index d, double spread) {
  const RealMatrix gen =
      -omega(d) * random_real_symmetric(rng, 2 * d, spread);
  return matrix_exp(gen.cast<Complex>()).real();
}

SymMatrix sample_sym_pp(Rng& rng, Eigen::Index d) {
  const Eigen::Index n = 2 * d;
  const Matrix m = random_spd(rng, n).cast<Complex>() +
                   kI * random_real_symmetric(rng, n).cast<Complex>();
  return SymMatrix(m);
}

SymMatrix sample_sym_pp_qnd(Rng& rng, Eigen::Index d) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    SymMatrix a = sample_sym_pp(rng, d);
    if (qnd_witness(a) > 1e-3) return a;
  }
  throw OscError(ErrorKind::QuantumDegenerate,
                 "sample_sym_pp_qnd: no nondegenerate draw");
}

SymMatrix sample_real_form(Rng& rng, Eigen::Index d,
                           const RealVector& lambdas) {
  if (lambdas.size() != d)
    throw std::invalid_argument("sample_real_form: need d eigenvalues");
  const RealMatrix s = random_symplectic(rng, d);
  RealVector diag(2 * d);
  diag << lambdas, lambdas;
  const RealMatrix a = s.transpose() * diag.asDiagonal() * s;
  return SymMatrix(a.cast<Complex>());
}

SymMatrix sample_sym_p_qnd(Rng& rng, Eigen::Index d) {
  std::uniform_real_distribution<double> u(0.05, 0.9);
  RealVector lambdas(d);
  for (Eigen::Index i = 0; i < d; ++i) lambdas[i] = u(rng);
  return sample_real_form(rng, d, lambdas);
}

Matrix sample_sp_alg(Rng& rng, Eigen::Index d) {
  // D = omega^{-1} S for complex symmetric S satisfies D^T omega + omega D = 0.
  return -omega(d).cast<Complex>() * random_complex_symmetric(rng, 2 * d);
}

Matrix sample_sp_alg_pp(Rng& rng, Eigen::Index d) {
  // Herm(D* theta + theta D) = 2 Im S, so draw Im S positive definite.
  const Eigen::Index n = 2 * d;
  const Matrix s = random_real_symmetric(rng, n).cast<Complex>() +
                   kI * random_spd(rng, n).cast<Complex>();
  return -omega(d).cast<Complex>() * s;
}

Matrix sample_sp_alg_h(Rng& rng, Eigen::Index d) {
  // Purely imaginary multiples of real Hamiltonian generators.
  return kI *
         (-omega(d) * random_real_symmetric(rng, 2 * d)).cast<Complex>();
}

Matrix sample_sp_alg_p(Rng& rng, Eigen::Index d) {
  // D = theta H with H real SPD: theta D = H > 0 and D is skew-real.
  return theta(d) * random_spd(rng, 2 * d).cast<Complex>();
}

}  // namespace osc
