#pragma once

#include "oscsemi/gaussops.hpp"
#include "oscsemi/types.hpp"

namespace osc {

// A -> c(A theta): Sym^qnd -> Sp^reg. Carries accretive forms into Sp_++,
// real forms into Sp_h, and Sym_p forms into Sp_p.
Matrix to_symplectic(const SymMatrix& a);

// R -> c(R) theta, the inverse bijection on Sp^reg.
SymMatrix from_symplectic(const Matrix& r);

// The 2-1 epimorphism: both signs of a normalized Gaussian map to c(A theta).
Matrix normalized_to_sp(const NormalizedGaussian& ng);

struct SpPolar {
  Matrix real_factor;      // T, real symplectic
  Matrix positive_factor;  // S in Sp_p
};

// R = T S for R in Sp_++: S = sqrt(conj(R)^{-1} R), T = conj(R) S.
SpPolar sp_polar(const Matrix& r);

}  // namespace osc
