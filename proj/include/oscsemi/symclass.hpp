#pragma once

#include <map>
#include <string>

#include "oscsemi/types.hpp"

namespace osc {

// Tolerance-aware membership report. Strict inequalities require a margin
// above tol, weak ones allow a margin down to -tol, so the paper's
// open/closed set distinctions stay decidable in floating point.
struct ClassificationReport {
  std::map<std::string, bool> flags;
  std::map<std::string, double> witnesses;
  double tol = kClassifyTol;

  bool flag(const std::string& name) const {
    auto it = flags.find(name);
    return it != flags.end() && it->second;
  }
  double witness(const std::string& name) const {
    auto it = witnesses.find(name);
    return it == witnesses.end() ? 0.0 : it->second;
  }
};

// Families of symmetric forms: real / pos_weak / pos_strict / qnd /
// sym_p / sym_p_weak / sym_p_qnd.
ClassificationReport classify_sym(const SymMatrix& a, double tol = kClassifyTol);

// Complex symplectic group families: sp / reg / sp_plus / sp_pp / sp_h / sp_p.
ClassificationReport classify_sp(const Matrix& r, double tol = kClassifyTol);

// Lie algebra families: sp / sp_plus / sp_pp / sp_h / sp_p.
ClassificationReport classify_sp_alg(const Matrix& d, double tol = kClassifyTol);

// |det(1+A theta)| scaled to be dimension-stable; shared by the qnd tests.
double qnd_witness(const SymMatrix& a);

}  // namespace osc
