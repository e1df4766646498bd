#pragma once

#include "oscsemi/types.hpp"

namespace osc {

// The standard symplectic form omega = [[0, I],[-I, 0]] and the Hermitian
// involution theta = -i*omega, with theta^2 = 1, theta* = theta, det theta = 1.
struct SympStructure {
  Eigen::Index half_dim = 0;
  RealMatrix omega;
  Matrix theta;
};

const SympStructure& symp(Eigen::Index half_dim);
Matrix theta(Eigen::Index half_dim);
RealMatrix omega(Eigen::Index half_dim);

// Cayley transform c(R) = (1-R)(1+R)^{-1}; involutive on its domain.
Matrix cayley(const Matrix& m, double tau_sing = kTauSing);

// Principal matrix square root. Requires the spectrum away from (-inf, 0].
Matrix principal_sqrt(const Matrix& m, double tau_branch = kTauBranch);

// R^t for real t; requires sigma(R) in (0, inf).
Matrix matrix_power(const Matrix& r, double t, double tau_branch = kTauBranch);

// exp(M) via scaling-and-squaring with Pade(13).
Matrix matrix_exp(const Matrix& m);

// Determinant from the Schur diagonal, with the argument accumulated factor
// by factor so downstream sqrt-det branch decisions see the full phase.
struct DetResult {
  Complex value{0.0, 0.0};
  double log_abs = 0.0;
  double arg_sum = 0.0;  // sum of per-factor principal arguments (not folded)
  Complex sqrt() const;  // exp(log_abs/2 + i*arg_sum/2)
  // true when the folded principal argument is close enough to +-pi that the
  // sign of sqrt() is numerically uncertain
  bool sign_uncertain(double band = 0.1) const;
};

DetResult det_schur(const Matrix& m);

// sqrt(det M) for M whose eigenvalues all lie in the open right half-plane:
// the product of per-eigenvalue principal roots (the analytic branch for
// Gaussian integrals with accretive forms).
Complex sqrt_det_accretive(const Matrix& m);

Matrix inverse(const Matrix& m, double kappa_max = kKappaMax);
Vector eigenvalues(const Matrix& m);
double condition_estimate(const Matrix& m);

struct Block2Inverse {
  Matrix top_left, top_right, bottom_left, bottom_right;
};

// Inverse of [[P, Q],[R, S]] returned by quadrant.
Block2Inverse block2_inverse(const Matrix& p, const Matrix& q, const Matrix& r,
                             const Matrix& s, double kappa_max = kKappaMax);

}  // namespace osc
