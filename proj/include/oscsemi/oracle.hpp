#pragma once

#include <vector>

#include "oscsemi/gaussops.hpp"
#include "oscsemi/types.hpp"

namespace osc {

// Brute-force verification layer: discretize the integral kernel of a
// Gaussian operator in the truncated harmonic-oscillator basis by tensor
// Gauss-Hermite quadrature and measure everything numerically.

struct QuadratureSpec {
  int nodes = 0;       // per axis; 0 = choose from the truncation
  double scaling = 0;  // node dilation; 0 = choose from the kernel decay
};

struct HermiteMatrix {
  int trunc = 0;           // N; matrix side is N^d
  Matrix entries;
  double tail_witness = 0;  // max |entry| touching the last basis index
};

struct GaussHermite {
  RealVector nodes;
  RealVector weights;        // for \int e^{-t^2} f(t) dt
  RealVector plain_weights;  // w_i e^{t_i^2}, for \int f(t) dt
};

// Nodes and weights for \int e^{-t^2} f(t) dt (Golub-Welsch). The plain
// weights are computed as 1 / sum_{k<n} phi_k(t_i)^2, which stays accurate
// at the extreme nodes where w_i e^{t_i^2} loses everything to rounding.
GaussHermite gauss_hermite(int n);

// phi_0..phi_{count-1} evaluated at x, one column per function. Stable
// three-term recurrence on the L^2-normalized Hermite functions.
RealMatrix hermite_functions(const RealVector& x, int count);

// M_{mn} = <phi_m, G phi_n>. Supports d = 1 and d = 2 (lexicographic
// multi-index order). Requires Re A > 0.
HermiteMatrix hermite_matrix(const GaussianOp& g, int trunc,
                             QuadratureSpec quad = {});

struct NumericFunctionals {
  Complex trace{0.0, 0.0};
  double trace_norm = 0;
  double op_norm = 0;
  Vector eigenvalues;       // unordered
  RealVector singular_values;  // descending
};

NumericFunctionals numeric_functionals(const HermiteMatrix& m);

// Hermite(G1) * Hermite(G2); the tail witness is the worse of the two.
HermiteMatrix compose_numeric(const GaussianOp& g1, const GaussianOp& g2,
                              int trunc, QuadratureSpec quad = {});

// Max deviation of the kernel-to-symbol inversion
// a(x,p) = int K(x + z/2, x - z/2) e^{-izp} dz from scale * e^{-A(y)} over
// the given phase-space points y = (x, p).
double symbol_roundtrip(const GaussianOp& g,
                        const std::vector<RealVector>& points,
                        QuadratureSpec quad = {});

// Max deviation of the closed-form Gaussian integral for the symbol of
// Op(e^{-A}) Op(e^{-B}) at y from the composed value scale * e^{-(B<>A)(y)}.
double star_integral_check(const SymMatrix& a, const SymMatrix& b,
                           const std::vector<RealVector>& y_points);

}  // namespace osc
