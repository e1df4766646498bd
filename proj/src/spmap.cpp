#include "oscsemi/spmap.hpp"

#include "oscsemi/matcore.hpp"
#include "oscsemi/symclass.hpp"

namespace osc {

Matrix to_symplectic(const SymMatrix& a) {
  if (!classify_sym(a).flag("qnd"))
    throw OscError(ErrorKind::QuantumDegenerate,
                   "to_symplectic: det(1 + A theta) ~ 0");
  return cayley(a.mat() * theta(a.half_dim()));
}

SymMatrix from_symplectic(const Matrix& r) {
  // cayley throws SingularShift when 1 + R is singular (R not regular).
  return SymMatrix(cayley(r) * theta(r.rows() / 2));
}

Matrix normalized_to_sp(const NormalizedGaussian& ng) {
  return to_symplectic(ng.form);
}

SpPolar sp_polar(const Matrix& r) {
  if (!classify_sp(r).flag("sp_pp"))
    throw OscError(ErrorKind::NotInSpPlusPlus, "sp_polar: R not in Sp_++");
  const Matrix rbar = r.conjugate();
  const Matrix core = inverse(rbar) * r;  // in Sp_p, so sqrt stays there
  SpPolar out;
  out.positive_factor = principal_sqrt(core);
  out.real_factor = rbar * out.positive_factor;
  return out;
}

}  // namespace osc
