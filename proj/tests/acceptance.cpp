// Acceptance gate: twelve end-to-end checks, one pass/fail line each.
// Exit code = number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "oscsemi/cordes.hpp"
#include "oscsemi/diamond.hpp"
#include "oscsemi/gaussops.hpp"
#include "oscsemi/hamflow.hpp"
#include "oscsemi/matcore.hpp"
#include "oscsemi/oracle.hpp"
#include "oscsemi/sampling.hpp"
#include "oscsemi/spmap.hpp"
#include "oscsemi/symclass.hpp"

using namespace osc;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool pass,
            const std::string& detail, double seconds) {
  std::printf("[%2d] %s  %-34s %s  (%.1fs)\n", index, pass ? "PASS" : "FAIL",
              name.c_str(), detail.c_str(), seconds);
  if (!pass) ++g_failures;
}

template <typename F>
void criterion(int index, const std::string& name, F body) {
  const auto t0 = std::chrono::steady_clock::now();
  bool pass = false;
  std::string detail;
  try {
    std::tie(pass, detail) = body();
  } catch (const std::exception& e) {
    pass = false;
    detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  report(index, name, pass, detail, secs);
}

GaussianOp iso(double lambda, Complex a = Complex{1.0, 0.0}) {
  return GaussianOp(a, SymMatrix(lambda * Matrix::Identity(2, 2)));
}

// d = 2 sample with symplectic spectrum in (0.6, 0.8) and a mild symplectic
// conjugation: squeezing slows the Hermite-diagonal decay well below the
// thermal ratio, and these bounds keep the N = 20-per-mode oracle at ~1e-8.
SymMatrix tame_2mode(Rng& rng, bool complex_part) {
  std::uniform_real_distribution<double> u(0.6, 0.8);
  RealVector lam(4);
  lam << u(rng), u(rng), 0.0, 0.0;
  lam.tail(2) = lam.head(2);
  const RealMatrix s = random_symplectic(rng, 2, 0.3);
  Matrix a = (s.transpose() * lam.asDiagonal() * s).cast<Complex>();
  if (complex_part) a += 0.03 * kI * random_real_symmetric(rng, 4).cast<Complex>();
  return SymMatrix(a);
}

// d = 1 sample with the same mild conjugation; spread 0.3 keeps the worst
// Hermite tail within reach of an N ~ 100 oracle (heavier squeezing pushes
// the per-level decay toward 1 and the tail out of reach entirely).
SymMatrix tame_1mode(Rng& rng) {
  std::uniform_real_distribution<double> u(0.35, 0.85);
  RealVector lam(2);
  lam << u(rng), 0.0;
  lam(1) = lam(0);
  const RealMatrix s = random_symplectic(rng, 1, 0.3);
  Matrix a = (s.transpose() * lam.asDiagonal() * s).cast<Complex>();
  a += 0.1 * kI * random_real_symmetric(rng, 2).cast<Complex>();
  return SymMatrix(a);
}

std::string fmt(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "worst %.2e", x);
  return buf;
}

using Outcome = std::pair<bool, std::string>;

}  // namespace

int main() {
  criterion(1, "three_regime_spectra", []() -> Outcome {
    const int n = 60;
    double worst = 0;
    const HermiteMatrix half = hermite_matrix(iso(0.5), n);
    const HermiteMatrix one = hermite_matrix(iso(1.0), n);
    const HermiteMatrix two = hermite_matrix(iso(2.0), n);
    for (int m = 0; m < n; ++m) {
      const double thermal = std::pow(0.75, -0.5) *
                             std::pow(1.0 / 3.0, m + 0.5);
      worst = std::max(worst, std::abs(half.entries(m, m) - thermal));
      worst = std::max(worst,
                       std::abs(one.entries(m, m) - (m == 0 ? 0.5 : 0.0)));
      worst = std::max(worst,
                       std::abs(two.entries(m, m) -
                                (m % 2 ? -1.0 : 1.0) * std::pow(3.0, -m - 1)));
    }
    worst = std::max(
        worst, (half.entries - Matrix(half.entries.diagonal().asDiagonal()))
                   .cwiseAbs()
                   .maxCoeff());
    return {worst <= 1e-8, fmt(worst)};
  });

  // shared sample set for criteria 2 and 3
  Rng rng23(101);
  std::vector<GaussianOp> ops1, ops2;
  for (int k = 0; k < 90; ++k)
    ops1.emplace_back(Complex{1.2, -0.3}, tame_1mode(rng23));
  for (int k = 0; k < 10; ++k)
    ops2.emplace_back(Complex{0.9, 0.2}, tame_2mode(rng23, true));
  std::vector<NumericFunctionals> nf1, nf2;

  criterion(2, "trace_vs_oracle", [&]() -> Outcome {
    double worst = 0;
    for (const GaussianOp& g : ops1) {
      nf1.push_back(numeric_functionals(hermite_matrix(g, 112)));
      worst = std::max(worst, std::abs(trace(g) - nf1.back().trace) /
                                  std::abs(nf1.back().trace));
    }
    for (const GaussianOp& g : ops2) {
      nf2.push_back(numeric_functionals(hermite_matrix(g, 22)));
      worst = std::max(worst, std::abs(trace(g) - nf2.back().trace) /
                                  std::abs(nf2.back().trace));
    }
    return {worst <= 1e-7, fmt(worst)};
  });

  criterion(3, "trace_norm_vs_oracle_and_sqrt2", [&]() -> Outcome {
    double worst = 0;
    for (size_t k = 0; k < ops1.size(); ++k)
      worst = std::max(worst, std::abs(trace_norm(ops1[k]) - nf1[k].trace_norm) /
                                  nf1[k].trace_norm);
    for (size_t k = 0; k < ops2.size(); ++k)
      worst = std::max(worst, std::abs(trace_norm(ops2[k]) - nf2[k].trace_norm) /
                                  nf2[k].trace_norm);
    double ratio_err = 0;
    for (double lam : {0.2, 0.5, 0.8})
      ratio_err = std::max(ratio_err,
                           std::abs(trace_norm(iso(lam)) / trace_norm_alt(iso(lam)) -
                                    std::sqrt(2.0)));
    return {worst <= 1e-6 && ratio_err <= 1e-6,
            fmt(worst) + ", sqrt2 ratio err " + fmt(ratio_err).substr(6)};
  });

  criterion(4, "op_norm_vs_oracle", []() -> Outcome {
    double worst = 0;
    worst = std::max(worst, std::abs(op_norm(iso(3.0)) - 0.25));
    worst = std::max(
        worst,
        std::abs(op_norm(iso(3.0)) -
                 numeric_functionals(hermite_matrix(iso(3.0), 60)).op_norm));
    worst = std::max(
        worst,
        std::abs(op_norm(iso(1.0)) -
                 numeric_functionals(hermite_matrix(iso(1.0), 60)).op_norm));
    Rng rng(7);
    for (int k = 0; k < 20; ++k) {
      const GaussianOp g(
          Complex{1.0, 0.0},
          SymMatrix(tame_1mode(rng).mat().real().cast<Complex>().eval()));
      const double oracle =
          numeric_functionals(hermite_matrix(g, 60)).op_norm;
      worst = std::max(worst, std::abs(op_norm(g) - oracle) / oracle);
    }
    // per-mode product at d = 2, lambda = (1, 2)
    Rng rng2(8);
    RealVector lam(2);
    lam << 1.0, 2.0;
    const GaussianOp g2(Complex{1.0, 0.0}, sample_real_form(rng2, 2, lam));
    worst = std::max(worst, std::abs(op_norm(g2) - 1.0 / 6.0));
    const double oracle2 = numeric_functionals(hermite_matrix(g2, 16)).op_norm;
    worst = std::max(worst, std::abs(op_norm(g2) - oracle2) / oracle2);
    return {worst <= 1e-6, fmt(worst)};
  });

  criterion(5, "product_formula", []() -> Outcome {
    Rng rng(11);
    double worst = 0;
    for (int k = 0; k < 200; ++k) {
      const GaussianOp g1(Complex{0.8, 0.3}, tame_1mode(rng));
      const GaussianOp g2(Complex{1.1, -0.2}, tame_1mode(rng));
      const HermiteMatrix prod = compose_numeric(g1, g2, 60);
      const HermiteMatrix direct = hermite_matrix(compose(g1, g2).op, 60);
      worst = std::max(worst, (direct.entries.topLeftCorner(40, 40) -
                               prod.entries.topLeftCorner(40, 40))
                                      .norm() /
                                  prod.entries.topLeftCorner(40, 40).norm());
    }
    for (int k = 0; k < 20; ++k) {
      const GaussianOp g1(Complex{0.9, 0.1}, tame_2mode(rng, true));
      const GaussianOp g2(Complex{1.0, -0.3}, tame_2mode(rng, true));
      const HermiteMatrix prod = compose_numeric(g1, g2, 12);
      const HermiteMatrix direct = hermite_matrix(compose(g1, g2).op, 12);
      worst = std::max(worst, (direct.entries.topLeftCorner(36, 36) -
                               prod.entries.topLeftCorner(36, 36))
                                      .norm() /
                                  prod.entries.topLeftCorner(36, 36).norm());
    }
    return {worst <= 1e-6, fmt(worst)};
  });

  criterion(6, "diamond_algebra", []() -> Outcome {
    Rng rng(13);
    double worst = 0;
    for (int k = 0; k < 1000; ++k) {
      const Eigen::Index d = 1 + (k % 3);
      const Matrix th = theta(d);
      const Matrix id = Matrix::Identity(2 * d, 2 * d);
      const SymMatrix a = sample_sym_pp(rng, d);
      const SymMatrix b = sample_sym_pp(rng, d);
      const SymMatrix c = sample_sym_pp(rng, d);
      const SymMatrix ab = diamond(a, b);
      worst = std::max(worst, (diamond(ab, c).mat() -
                               diamond(a, diamond(b, c)).mat())
                                      .norm() /
                                  std::max(1.0, ab.mat().norm()));
      if (k % 3 == 0) {
        const SymMatrix zero(Matrix::Zero(2 * d, 2 * d));
        worst = std::max(worst, (diamond(a, zero).mat() - a.mat()).norm());
        worst = std::max(worst, diamond(a, -a).mat().norm());
        worst = std::max(worst, (diamond(a, b).conjugate().mat() -
                                 diamond(b.conjugate(), a.conjugate()).mat())
                                    .norm());
        worst = std::max(
            worst, (diamond(-a, -b).mat() + diamond(b, a).mat()).norm());
        const Complex det_lhs = det_schur(id + a.mat() * th * b.mat() * th).value;
        const Complex det_rhs = det_schur(id + a.mat() * th).value /
                                det_schur(id + ab.mat() * th).value *
                                det_schur(id + b.mat() * th).value;
        worst = std::max(worst, std::abs(det_lhs - det_rhs) / std::abs(det_lhs));
        worst = std::max(worst, (cayley(ab.mat() * th) -
                                 cayley(a.mat() * th) * cayley(b.mat() * th))
                                        .norm() /
                                    cayley(ab.mat() * th).norm());
      }
    }
    return {worst <= 1e-8, fmt(worst)};
  });

  criterion(7, "sp_bijections_and_transport", []() -> Outcome {
    Rng rng(17);
    double worst = 0;
    for (int k = 0; k < 500; ++k) {
      const Eigen::Index d = 1 + (k % 3);
      const SymMatrix a = sample_sym_pp_qnd(rng, d);
      const Matrix r = to_symplectic(a);
      worst = std::max(worst, (from_symplectic(r).mat() - a.mat()).norm() /
                                  std::max(1.0, a.mat().norm()));
      worst = std::max(worst,
                       (to_symplectic(from_symplectic(r)) - r).norm() / r.norm());
      if (!classify_sp(r).flag("sp_pp")) worst = std::max(worst, 1.0);
      const Matrix rh = to_symplectic(sample_sym_p_qnd(rng, d));
      if (!classify_sp(rh).flag("sp_p")) worst = std::max(worst, 1.0);
      if (!from_symplectic(rh).is_real(1e-10)) worst = std::max(worst, 1.0);
    }
    for (int k = 0; k < 200; ++k) {
      const Matrix r = to_symplectic(sample_sym_pp_qnd(rng, 1 + (k % 2)));
      const SpPolar tp = sp_polar(r);
      worst = std::max(worst,
                       (tp.real_factor * tp.positive_factor - r).norm() / r.norm());
    }
    return {worst <= 1e-9, fmt(worst)};
  });

  criterion(8, "polar_decomposition", []() -> Outcome {
    Rng rng(19);
    double c_im = 0, up_err = 0, unitary_err = 0;
    int positives = 0, total = 0, attempts = 0;
    // The pure-oscillation quadrature has no Gaussian envelope of its own, so
    // the oracle reaches U through a damped composite U * Op(e^{-eps|y|^2})
    // whose hermite matrix is the exact column-rescale of U's (the damping
    // matrix is diagonal); dividing out the thermal diagonal recovers M_U.
    const double eps = 0.15;
    const int T = 96;
    while (total < 100 && attempts < 400) {
      ++attempts;
      const GaussianOp g(Complex{1.0, 0.4}, tame_1mode(rng));
      PolarResult pr;
      try {
        pr = polar(g);
      } catch (const OscError& e) {
        if (e.kind() == ErrorKind::PolarUndefined) continue;
        throw;
      }
      // Certification window: columns of a strongly squeezed metaplectic
      // spread past any reachable truncation, so draws whose unitary factor
      // exceeds it are resampled (a reach limit of the finite-basis check).
      if (pr.unitary.form.mat().norm() > 1.3) continue;
      ++total;
      if (is_positive(pr.positive, 1e-7)) ++positives;
      c_im = std::max(c_im, pr.unitary.form.mat().real().norm());
      if (total % 5 == 0) {
        const GaussianOp damped = compose_principal(
            pr.unitary,
            GaussianOp(1.0, SymMatrix(eps * Matrix::Identity(2, 2))));
        Matrix mu = hermite_matrix(damped, T).entries;
        for (int nn = 0; nn < T; ++nn)
          mu.col(nn) /= std::pow(1.0 - eps * eps, -0.5) *
                        std::pow((1.0 - eps) / (1.0 + eps), nn + 0.5);
        const HermiteMatrix mp = hermite_matrix(pr.positive, T);
        const HermiteMatrix mg = hermite_matrix(g, T);
        const Matrix prod = mu * mp.entries;
        up_err = std::max(up_err, (prod.topLeftCorner(12, 12) -
                                   mg.entries.topLeftCorner(12, 12))
                                          .norm() /
                                      mg.entries.topLeftCorner(12, 12).norm());
        const Matrix uu = mu.adjoint() * mu;
        unitary_err = std::max(
            unitary_err,
            (uu.topLeftCorner(8, 8) - Matrix::Identity(8, 8)).norm());
      }
    }
    const bool pass = total >= 90 && positives == total && c_im <= 1e-9 &&
                      up_err <= 1e-6 && unitary_err <= 1e-6;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "Re(C) %.1e, UP err %.1e, unitarity %.1e, %d/%d positive",
                  c_im, up_err, unitary_err, positives, total);
    return {pass, buf};
  });

  criterion(9, "positivity_criterion", []() -> Outcome {
    Rng rng(23);
    std::uniform_real_distribution<double> u(0.6, 1.5);
    int mismatches = 0, total = 0;
    while (total < 200) {
      RealVector lam(1);
      lam[0] = u(rng);
      if (std::abs(lam[0] - 1.0) < 0.02) continue;
      ++total;
      const GaussianOp g(Complex{1.0, 0.0}, sample_real_form(rng, 1, lam));
      const NumericFunctionals nf = numeric_functionals(hermite_matrix(g, 60));
      double min_re = 0;
      for (Eigen::Index i = 0; i < nf.eigenvalues.size(); ++i)
        min_re = std::min(min_re, nf.eigenvalues(i).real());
      const bool oracle_pos = min_re >= -1e-7 * nf.op_norm;
      if (oracle_pos != is_positive(g)) ++mismatches;
    }
    return {mismatches == 0,
            std::to_string(mismatches) + " mismatches / 200"};
  });

  criterion(10, "davies_region", []() -> Outcome {
    const double tol = kClassifyTol;
    double worst_frac = 0;
    for (double psi : {0.0, M_PI / 6, M_PI / 4, M_PI / 3}) {
      Matrix hm = Matrix::Zero(2, 2);
      hm(0, 0) = std::exp(kI * psi);
      hm(1, 1) = std::exp(-kI * psi);
      const QuadHamiltonian h{SymMatrix(hm)};
      int counted = 0, disagreements = 0;
      const int res = 200;
      for (int i = 0; i < res; ++i) {
        for (int j = 0; j < res; ++j) {
          const Complex z{3.0 * i / (res - 1.0), -3.0 + 6.0 * j / (res - 1.0)};
          // exclude the boundary band at 10 tol via the closure labels
          const RegionLabel closed = davies_member(psi, z, 10.0 * tol);
          const RegionLabel matrix_route = domain_member(h, z, 10.0 * tol);
          if (closed == RegionLabel::Closure ||
              matrix_route == RegionLabel::Closure)
            continue;
          ++counted;
          if (closed != matrix_route) ++disagreements;
        }
      }
      if (counted == 0) return {false, "empty grid"};
      worst_frac = std::max(worst_frac, (double)disagreements / counted);
    }
    // psi = 0 fills the right half-plane
    const DomainSample rhp = sample_region_davies(0.0, 0.02, 3.0, -3.0, 3.0, 50);
    bool all_interior = true;
    for (RegionLabel l : rhp.labels)
      all_interior = all_interior && (l == RegionLabel::Interior);
    char buf[96];
    std::snprintf(buf, sizeof buf, "disagreement %.3f%%, half-plane %s",
                  100.0 * worst_frac, all_interior ? "ok" : "BROKEN");
    return {worst_frac <= 0.01 && all_interior, buf};
  });

  criterion(11, "cordes_chain", []() -> Outcome {
    const CordesParams p{1, 1.0};
    const double closed = closed_bound(p);
    const double closed_err = std::abs(closed - (1.0 + M_PI) / (2.0 * M_PI));
    const double tight = tight_bound(p);
    const NumericConstant nc = numeric_constant(p, 64, 120);
    const double slack = 3.0 * (nc.delta_quad + nc.delta_trunc);
    const bool chain =
        nc.value <= tight + slack + 1e-9 && tight <= closed + 1e-9;
    int cv_failures = 0;
    for (int k = 0; k < 20; ++k) {
      const double lam = std::pow(10.0, -2.0 + 4.0 * k / 19.0);
      if (!cv_check_gaussian(lam, nc.value).holds) ++cv_failures;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "closed err %.1e, numeric %.5f <= tight %.5f <= closed %.5f, "
                  "cv fails %d",
                  closed_err, nc.value, tight, closed, cv_failures);
    return {closed_err <= 1e-12 && chain && cv_failures == 0, buf};
  });

  criterion(12, "quantum_degenerate_family", []() -> Outcome {
    double det_err = 0, rank_ratio = 0;
    bool throws_ok = true;
    const std::vector<std::pair<Complex, Complex>> coefs = {
        {{0.5, 0.0}, {0.5, 0.0}},
        {{0.8, 0.1}, {0.3, -0.05}},
        {{1.2, -0.2}, {0.6, 0.15}}};
    for (const auto& [a, b] : coefs) {
      const GaussianOp g = degenerate_1dof(a, b);
      det_err = std::max(det_err,
                         std::abs(det_schur(g.form.mat()).value - 1.0));
      const NumericFunctionals nf = numeric_functionals(hermite_matrix(g, 40));
      rank_ratio = std::max(rank_ratio, nf.singular_values[1] /
                                            nf.singular_values[0]);
      try {
        trace_norm(g);
        throws_ok = false;
      } catch (const OscError& e) {
        if (e.kind() != ErrorKind::QuantumDegenerate) throws_ok = false;
      }
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "det err %.1e, rank ratio %.1e, throws %s",
                  det_err, rank_ratio, throws_ok ? "ok" : "BROKEN");
    return {det_err <= 1e-10 && rank_ratio <= 1e-6 && throws_ok, buf};
  });

  std::printf("%d of 12 criteria failed\n", g_failures);
  return g_failures;
}
