#pragma once

#include "oscsemi/types.hpp"

namespace osc {

struct CordesParams {
  int d = 1;
  double s = 1.0;  // needs s > d/2
};

// psi_s(xi) = (pi^{d/2} 2^d Gamma(s))^{-1} int_0^inf t^{s-d/2-1}
//             e^{-t - |xi|^2/(4t)} dt, the kernel of (1 - Delta)^{-s}.
double psi_s(const RealVector& xi, const CordesParams& params);

// (Gamma(s)^2 + Gamma(s - d/2)^2) / ((2 pi)^d Gamma(s)^2).
double closed_bound(const CordesParams& params);

// The sharper two-region bound (split at uv = 4) it comes from.
double tight_bound(const CordesParams& params);

struct NumericConstant {
  double value = 0;
  double delta_quad = 0;   // change under doubling the mixture nodes
  double delta_trunc = 0;  // change under enlarging the basis truncation
};

// Tr|Op(P_s)| measured numerically at d = 1: discretize the (u, v) mixture,
// sum the Gaussian kernels on one quadrature grid, project once onto the
// oscillator basis, and sum singular values.
NumericConstant numeric_constant(const CordesParams& params,
                                 int mixture_nodes = 64, int trunc = 140);

struct CvCheck {
  double lhs = 0;
  double rhs = 0;
  bool holds = false;
};

// The boundedness inequality demonstrated on a = e^{-lambda(x^2+p^2)} at
// d = 1, s = 1: ||Op(a)|| <= (2 pi)^d c_{1,1} * sup|(1-Dxx)(1-Dpp) a| with
// c_{1,1} = Tr|Op(P_1)| (`constant`; <= 0 means compute it once and cache).
CvCheck cv_check_gaussian(double lambda, double constant = 0);

}  // namespace osc
