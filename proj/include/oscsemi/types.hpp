#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace osc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

// Default numerical tolerances (see Tolerances for per-call overrides).
inline constexpr double kTauId = 1e-10;      // relative Frobenius, identities
inline constexpr double kTauSing = 1e-12;    // eigenvalue distance to a singular shift
inline constexpr double kTauBranch = 1e-12;  // eigenvalue distance to the branch cut
inline constexpr double kKappaMax = 1e12;    // condition-estimate ceiling for inverses
inline constexpr double kClassifyTol = 1e-9; // set-membership margin

enum class ErrorKind {
  // domain errors (CLI exit code 2)
  NotComposable,
  QuantumDegenerate,
  OutsideDomain,
  NoGaussianSymbol,
  PolarUndefined,
  NotInSpPlusPlus,
  DegenerateF,
  DegenerateForm,
  // numerical failures (CLI exit code 3)
  SingularShift,
  BranchCut,
  Singular,
  NoConvergence,
  QuadratureFailure,
};

inline bool is_domain_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotComposable:
    case ErrorKind::QuantumDegenerate:
    case ErrorKind::OutsideDomain:
    case ErrorKind::NoGaussianSymbol:
    case ErrorKind::PolarUndefined:
    case ErrorKind::NotInSpPlusPlus:
    case ErrorKind::DegenerateF:
    case ErrorKind::DegenerateForm:
      return true;
    default:
      return false;
  }
}

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotComposable: return "NotComposable";
    case ErrorKind::QuantumDegenerate: return "QuantumDegenerate";
    case ErrorKind::OutsideDomain: return "OutsideDomain";
    case ErrorKind::NoGaussianSymbol: return "NoGaussianSymbol";
    case ErrorKind::PolarUndefined: return "PolarUndefined";
    case ErrorKind::NotInSpPlusPlus: return "NotInSpPlusPlus";
    case ErrorKind::DegenerateF: return "DegenerateF";
    case ErrorKind::DegenerateForm: return "DegenerateForm";
    case ErrorKind::SingularShift: return "SingularShift";
    case ErrorKind::BranchCut: return "BranchCut";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
  }
  return "Unknown";
}

class OscError : public std::runtime_error {
 public:
  OscError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what),
        kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// A complex symmetric 2d x 2d matrix. Construction symmetrizes, which
// absorbs roundoff from upstream products.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0)
      throw std::invalid_argument("SymMatrix: need a square 2d x 2d matrix");
    if (!m.allFinite())
      throw std::invalid_argument("SymMatrix: entries must be finite");
    mat_ = 0.5 * (m + m.transpose());
  }

  const Matrix& mat() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }
  Eigen::Index half_dim() const { return mat_.rows() / 2; }

  SymMatrix conjugate() const { return SymMatrix(mat_.conjugate()); }
  SymMatrix operator-() const { return SymMatrix(-mat_); }
  bool is_real(double tol = kClassifyTol) const {
    return mat_.imag().cwiseAbs().maxCoeff() <= tol;
  }

 private:
  Matrix mat_;
};

}  // namespace osc
