#pragma once

#include "oscsemi/types.hpp"

namespace osc {

struct DiamondWitness {
  bool defined = false;
  double witness = 0.0;  // |det(1 + A theta B theta)|, scale-normalized
};

// A diamond B exists iff 1 + A theta B theta is invertible.
DiamondWitness diamond_defined(const SymMatrix& a, const SymMatrix& b,
                               double tol = kClassifyTol);

// The diamond product: the composition law on Gaussian exponents,
// c((A<>B) theta) = c(A theta) c(B theta). Throws NotComposable when
// 1 + A theta B theta is singular.
SymMatrix diamond(const SymMatrix& a, const SymMatrix& b);

// One fixed evaluation route (1..4, the four equivalent conjugated forms;
// 0 = the two-term sum that only inverts 1 + A theta B theta and its
// transpose-partner). Used by the agreement tests; diamond() itself picks
// the best-conditioned route.
SymMatrix diamond_route(const SymMatrix& a, const SymMatrix& b, int route);

// Cross-check mode: assemble the bordered 4d x 4d matrix
// [[theta A theta, -theta],[theta, theta B theta]], invert it densely, and
// combine the quadrants.
SymMatrix diamond_bordered(const SymMatrix& a, const SymMatrix& b);

}  // namespace osc
