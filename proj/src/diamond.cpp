#include "oscsemi/diamond.hpp"

#include <algorithm>
#include <cmath>

#include "oscsemi/matcore.hpp"

namespace osc {

namespace {

SymMatrix symmetrized(const Matrix& m) { return SymMatrix(m); }

// Evaluate one of the equivalent forms. Each route inverts a different
// boundary factor, so their conditioning differs near degenerate inputs.
Matrix eval_route(const Matrix& at, const Matrix& bt, const Matrix& th,
                  int route) {
  const Eigen::Index n = at.rows();
  const Matrix ident = Matrix::Identity(n, n);
  const Matrix sum = at + bt;
  switch (route) {
    case 1: {
      const Matrix fa = ident + at;
      return inverse(fa) * sum * inverse(ident + at * bt) * fa * th;
    }
    case 2: {
      const Matrix fb = ident + bt;
      return fb * inverse(ident + at * bt) * sum * inverse(fb) * th;
    }
    case 3: {
      const Matrix fa = ident - at;
      return fa * inverse(ident + bt * at) * sum * inverse(fa) * th;
    }
    case 4: {
      const Matrix fb = ident - bt;
      return inverse(fb) * sum * inverse(ident + bt * at) * fb * th;
    }
    default: {
      // Quadrant sum of the bordered inverse, collapsed: only needs
      // (1 + A theta B theta)^{-1} and (1 + B theta A theta)^{-1}, so it
      // stays usable when 1 +- A theta or 1 +- B theta is singular.
      const Matrix m1_inv = inverse(ident + at * bt);
      const Matrix m2_inv = inverse(ident + bt * at);
      return (ident + bt) * m1_inv * th + (at - ident) * m2_inv * th;
    }
  }
}

}  // namespace

DiamondWitness diamond_defined(const SymMatrix& a, const SymMatrix& b,
                               double tol) {
  const Matrix th = theta(a.half_dim());
  const Matrix m = Matrix::Identity(a.dim(), a.dim()) +
                   a.mat() * th * b.mat() * th;
  const double n = (double)a.dim();
  const double scale = std::max(1.0, std::pow(m.norm() / std::sqrt(n), n));
  DiamondWitness w;
  w.witness = std::exp(det_schur(m).log_abs) / scale;
  w.defined = w.witness > tol;
  return w;
}

SymMatrix diamond(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("diamond: dimension mismatch");
  const DiamondWitness w = diamond_defined(a, b);
  if (!w.defined)
    throw OscError(ErrorKind::NotComposable,
                   "diamond: 1 + A theta B theta is singular");

  const Matrix th = theta(a.half_dim());
  const Matrix at = a.mat() * th;
  const Matrix bt = b.mat() * th;
  const Eigen::Index n = at.rows();
  const Matrix ident = Matrix::Identity(n, n);

  // Pick the route whose boundary factor is best conditioned.
  const double conds[4] = {
      condition_estimate(ident + at), condition_estimate(ident + bt),
      condition_estimate(ident - at), condition_estimate(ident - bt)};
  int best = 0;
  for (int i = 1; i < 4; ++i)
    if (conds[i] < conds[best]) best = i;
  const int route = conds[best] < kKappaMax ? best + 1 : 0;
  return symmetrized(eval_route(at, bt, th, route));
}

SymMatrix diamond_route(const SymMatrix& a, const SymMatrix& b, int route) {
  const Matrix th = theta(a.half_dim());
  return symmetrized(eval_route(a.mat() * th, b.mat() * th, th, route));
}

SymMatrix diamond_bordered(const SymMatrix& a, const SymMatrix& b) {
  const Matrix th = theta(a.half_dim());
  const Matrix tat = th * a.mat() * th;
  const Matrix tbt = th * b.mat() * th;
  const Block2Inverse inv = block2_inverse(tat, -th, th, tbt);
  return symmetrized(inv.top_left - inv.top_right - inv.bottom_left +
                     inv.bottom_right);
}

}  // namespace osc
