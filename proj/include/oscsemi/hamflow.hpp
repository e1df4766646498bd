#pragma once

#include <vector>

#include "oscsemi/gaussops.hpp"
#include "oscsemi/types.hpp"

namespace osc {

enum class RegionLabel { Interior, Closure, Outside };

inline const char* region_label_name(RegionLabel l) {
  switch (l) {
    case RegionLabel::Interior: return "interior";
    case RegionLabel::Closure: return "closure";
    case RegionLabel::Outside: return "outside";
  }
  return "outside";
}

// A quadratic Hamiltonian H with its symplectic generator D = 2 H omega^{-1}.
// The orientation sigma is fixed at construction so that the propagator
// exponent satisfies A_z ~ z H to first order (the two textual sign
// conventions disagree; we calibrate instead of picking one blindly).
class QuadHamiltonian {
 public:
  explicit QuadHamiltonian(SymMatrix h);

  const SymMatrix& form() const { return h_; }
  const Matrix& generator() const { return d_; }
  int orientation() const { return sigma_; }
  Eigen::Index half_dim() const { return h_.half_dim(); }

  // e^{sigma * i z D}, the symplectic flow at complex time z.
  Matrix flow(Complex z) const;

 private:
  SymMatrix h_;
  Matrix d_;
  int sigma_ = -1;
};

// e^{-z Op(H)} = sqrt(det(1 + A_z theta)) Op(e^{-A_z}), A_z = c(flow(z)) theta.
GaussianOp propagator(const QuadHamiltonian& h, Complex z);

// Membership of z in the holomorphic domain: interior when the flow lands in
// Sp_++, closure on the Sp_+ boundary band, outside otherwise.
RegionLabel domain_member(const QuadHamiltonian& h, Complex z,
                          double tol = kClassifyTol);

// Closed-form Davies test: Re z > 0 and |arg tanh z| + |psi| < pi/2.
RegionLabel davies_member(double psi, Complex z, double tol = kClassifyTol);

struct DomainSample {
  std::vector<Complex> grid;
  std::vector<RegionLabel> labels;
};

// Rectangle [re0, re1] x [im0, im1] sampled on a res x res grid.
DomainSample sample_region_davies(double psi, double re0, double re1,
                                  double im0, double im1, int res,
                                  double tol = kClassifyTol);
DomainSample sample_region(const QuadHamiltonian& h, double re0, double re1,
                           double im0, double im1, int res,
                           double tol = kClassifyTol);

// e^{i t Op(H)} for real H: form i C_t with C_t = c(e^{t D}) omega^{-1} real.
GaussianOp metaplectic_form(const QuadHamiltonian& h, double t);

}  // namespace osc
