#include "oscsemi/verify.hpp"

#include <cmath>
#include <sstream>

#include "oscsemi/cordes.hpp"
#include "oscsemi/diamond.hpp"
#include "oscsemi/gaussops.hpp"
#include "oscsemi/hamflow.hpp"
#include "oscsemi/matcore.hpp"
#include "oscsemi/oracle.hpp"
#include "oscsemi/sampling.hpp"
#include "oscsemi/serialize.hpp"
#include "oscsemi/spmap.hpp"
#include "oscsemi/symclass.hpp"

namespace osc {

namespace {

double rel_err(const Matrix& got, const Matrix& want) {
  return (got - want).norm() / std::max(1.0, want.norm());
}

}  // namespace

VerifyReport run_verify(std::uint64_t seed, int scale) {
  VerifyReport report;
  Rng rng(seed);
  const auto add = [&](const std::string& name, double measured, double tol) {
    report.results.push_back({name, measured, tol, measured <= tol});
  };

  // cayley is an involution away from the -1 eigenvalue.
  {
    double worst = 0;
    for (int k = 0; k < 100 * scale; ++k) {
      const Eigen::Index d = 1 + (k % 3);
      const Matrix m = random_complex_symmetric(rng, 2 * d);
      try {
        worst = std::max(worst, (cayley(cayley(m)) - m).norm() / m.norm());
      } catch (const OscError&) {
        // spectrum grazed -1; skip the draw
      }
    }
    add("cayley_involution", worst, kTauId);
  }

  // composition law: associativity, four-route agreement, bordered route,
  // the determinant identity, and Cayley multiplicativity.
  {
    double assoc = 0, routes = 0, det_id = 0, cay = 0;
    for (int k = 0; k < 60 * scale; ++k) {
      const Eigen::Index d = 1 + (k % 2);
      const Matrix th = theta(d);
      const Matrix id = Matrix::Identity(2 * d, 2 * d);
      const SymMatrix a = sample_sym_pp(rng, d);
      const SymMatrix b = sample_sym_pp(rng, d);
      const SymMatrix c = sample_sym_pp(rng, d);
      const SymMatrix ab = diamond(a, b);
      assoc = std::max(assoc, rel_err(diamond(ab, c).mat(),
                                      diamond(a, diamond(b, c)).mat()));
      for (int route = 0; route <= 4; ++route)
        routes = std::max(
            routes, rel_err(diamond_route(a, b, route).mat(), ab.mat()));
      routes = std::max(routes, rel_err(diamond_bordered(a, b).mat(), ab.mat()));
      const Matrix lhs = id + a.mat() * th * b.mat() * th;
      const Matrix rhs = (id + a.mat() * th) *
                         inverse(id + ab.mat() * th) * (id + b.mat() * th);
      det_id = std::max(det_id, rel_err(lhs, rhs));
      cay = std::max(cay, rel_err(cayley(ab.mat() * th),
                                  cayley(a.mat() * th) * cayley(b.mat() * th)));
    }
    add("diamond_associativity", assoc, 1e-8);
    add("diamond_route_agreement", routes, 1e-9);
    add("diamond_determinant_identity", det_id, 1e-8);
    add("diamond_cayley_multiplicative", cay, 1e-8);
  }

  // conj(A) <> A is real positive with spectrum of its theta-product in (-1,1).
  {
    double im_part = 0, spec_excess = 0;
    for (int k = 0; k < 60 * scale; ++k) {
      const Eigen::Index d = 1 + (k % 2);
      const SymMatrix a = sample_sym_pp_qnd(rng, d);
      const SymMatrix sq = diamond(a.conjugate(), a);
      im_part = std::max(im_part, sq.mat().imag().norm() / sq.mat().norm());
      const Vector ev = eigenvalues(sq.mat() * theta(d));
      for (Eigen::Index i = 0; i < ev.size(); ++i)
        spec_excess = std::max(spec_excess, std::abs(ev(i)) - 1.0);
    }
    add("conjugate_diamond_real", im_part, 1e-8);
    add("conjugate_diamond_contractive", spec_excess, 0.0);
  }

  // closed-form trace and trace norm vs the quadrature oracle, d = 1.
  {
    double tr_err = 0, tn_err = 0;
    for (int k = 0; k < 8 * scale; ++k) {
      const SymMatrix a = sample_sym_pp_qnd(rng, 1);
      const GaussianOp g(Complex{1.3, -0.4}, a);
      const NumericFunctionals nf = numeric_functionals(hermite_matrix(g, 80));
      tr_err = std::max(tr_err,
                        std::abs(trace(g) - nf.trace) / std::abs(nf.trace));
      tn_err = std::max(tn_err, std::abs(trace_norm(g) - nf.trace_norm) /
                                    nf.trace_norm);
    }
    add("trace_vs_oracle", tr_err, 1e-7);
    add("trace_norm_vs_oracle", tn_err, 1e-6);
  }

  // product formula including sign, in the oscillator basis.
  {
    double worst = 0;
    const int n = 60, keep = 40;
    for (int k = 0; k < 8 * scale; ++k) {
      const GaussianOp g1(Complex{0.8, 0.3}, sample_sym_pp(rng, 1));
      const GaussianOp g2(Complex{1.1, -0.2}, sample_sym_pp(rng, 1));
      const HermiteMatrix prod = compose_numeric(g1, g2, n);
      const HermiteMatrix direct = hermite_matrix(compose(g1, g2).op, n);
      worst = std::max(
          worst, (direct.entries.topLeftCorner(keep, keep) -
                  prod.entries.topLeftCorner(keep, keep))
                         .norm() /
                     prod.entries.topLeftCorner(keep, keep).norm());
    }
    add("product_formula", worst, 1e-6);
  }

  // form <-> symplectic bijection round trips and the Sp_++ polar split.
  {
    double rt = 0, polar_resid = 0;
    for (int k = 0; k < 80 * scale; ++k) {
      const Eigen::Index d = 1 + (k % 3);
      const SymMatrix a = sample_sym_pp_qnd(rng, d);
      const Matrix r = to_symplectic(a);
      rt = std::max(rt, rel_err(from_symplectic(r).mat(), a.mat()));
      const SpPolar tp = sp_polar(r);
      polar_resid = std::max(
          polar_resid,
          rel_err(tp.real_factor * tp.positive_factor, r) +
              tp.real_factor.imag().norm() / tp.real_factor.norm());
    }
    add("bijection_round_trip", rt, 1e-9);
    add("sp_polar_residual", polar_resid, 1e-9);
  }

  // exponentials carry each algebra class into the matching group class.
  {
    int failures = 0;
    const int per_class = 30 * scale;
    for (int k = 0; k < per_class; ++k) {
      const Eigen::Index d = 1 + (k % 2);
      const auto land = [&](const Matrix& dd, const char* flag) {
        if (!classify_sp(matrix_exp(-0.3 * dd)).flag(flag)) ++failures;
      };
      land(sample_sp_alg(rng, d), "sp");
      land(sample_sp_alg_pp(rng, d), "sp_pp");
      land(sample_sp_alg_h(rng, d), "sp_h");
      land(sample_sp_alg_p(rng, d), "sp_p");
    }
    add("expm_class_transport", (double)failures, 0.0);
  }

  // polar decomposition: U purely oscillatory, P positive, U P = G.
  {
    double worst = 0;
    for (int k = 0; k < 20 * scale; ++k) {
      const GaussianOp g(Complex{1.0, 0.5}, sample_sym_pp_qnd(rng, 1));
      const PolarResult pr = polar(g);
      const GaussianOp back = compose_principal(pr.unitary, pr.positive);
      worst = std::max(worst, rel_err(back.form.mat(), g.form.mat()));
      worst = std::max(worst, std::abs(back.scale - g.scale) /
                                  std::abs(g.scale));
      worst = std::max(worst, pr.unitary.form.mat().real().norm() /
                                  pr.unitary.form.mat().norm());
      if (!is_positive(pr.positive, 1e-7)) worst = std::max(worst, 1.0);
    }
    add("polar_decomposition", worst, 1e-7);
  }

  // positivity criterion vs the oracle's minimal eigenvalue, straddling 1.
  {
    int mismatches = 0;
    std::uniform_real_distribution<double> u(0.5, 1.6);
    for (int k = 0; k < 30 * scale; ++k) {
      RealVector lam(1);
      lam[0] = u(rng);
      if (std::abs(lam[0] - 1.0) < 0.02) continue;  // singular wall
      const GaussianOp g(Complex{1.0, 0.0}, sample_real_form(rng, 1, lam));
      const NumericFunctionals nf = numeric_functionals(hermite_matrix(g, 70));
      double min_re = 0;
      for (Eigen::Index i = 0; i < nf.eigenvalues.size(); ++i)
        min_re = std::min(min_re, nf.eigenvalues(i).real());
      const bool oracle_pos = min_re >= -1e-7 * nf.op_norm;
      if (oracle_pos != is_positive(g)) ++mismatches;
    }
    add("positivity_criterion", (double)mismatches, 0.0);
  }

  // closed-form Davies region vs the matrix route on a coarse grid.
  {
    const double psi = M_PI / 6.0;
    Matrix h(2, 2);
    h << std::exp(kI * psi), 0.0, 0.0, std::exp(-kI * psi);
    const QuadHamiltonian qh{SymMatrix(h)};
    const int res = 40;
    int disagreements = 0, counted = 0;
    for (int i = 0; i < res; ++i) {
      for (int j = 0; j < res; ++j) {
        const Complex z{3.0 * i / (res - 1), -3.0 + 6.0 * j / (res - 1)};
        const RegionLabel closed = davies_member(psi, z);
        const RegionLabel matrix_route = domain_member(qh, z);
        if (closed == RegionLabel::Closure || matrix_route == RegionLabel::Closure) continue;
        ++counted;
        if (closed != matrix_route) ++disagreements;
      }
    }
    add("davies_region_agreement",
        counted ? (double)disagreements / counted : 1.0, 0.01);
  }

  // quadrature cross-checks on the star product and kernel inversion.
  {
    double star = 0, round_trip = 0;
    std::vector<RealVector> pts;
    for (double x : {-1.0, 0.0, 0.7})
      for (double p : {-0.6, 0.4}) {
        RealVector y(2);
        y << x, p;
        pts.push_back(y);
      }
    for (int k = 0; k < 6 * scale; ++k) {
      const SymMatrix a = sample_sym_pp(rng, 1);
      const SymMatrix b = sample_sym_pp(rng, 1);
      star = std::max(star, star_integral_check(a, b, pts));
      round_trip = std::max(
          round_trip,
          symbol_roundtrip(GaussianOp(Complex{1.0, 0.0}, a), pts));
    }
    add("star_integral", star, 1e-8);
    add("symbol_roundtrip", round_trip, 1e-7);
  }

  // kernel-function normalization and the bound chain at s = 1.
  {
    RealVector zero(1);
    zero[0] = 0.0;
    const CordesParams p{1, 1.0};
    add("psi_s_at_zero", std::abs(psi_s(zero, p) - 0.5), 1e-8);
    const double closed = closed_bound(p);
    const double tight = tight_bound(p);
    const NumericConstant nc = numeric_constant(p, 48, 100);
    const double slack = 3.0 * (nc.delta_quad + nc.delta_trunc) + 1e-9;
    add("cordes_chain_tight_le_closed", tight - closed, 1e-9);
    add("cordes_chain_numeric_le_tight", nc.value - tight, slack);
    double cv_fail = 0;
    for (double lam : {0.05, 0.3, 1.0, 4.0, 30.0})
      if (!cv_check_gaussian(lam, nc.value).holds) cv_fail += 1.0;
    add("cv_inequality", cv_fail, 0.0);
  }

  // serialization round trip is bit-exact.
  {
    double worst = 0;
    for (int k = 0; k < 20 * scale; ++k) {
      const GaussianOp g(Complex{0.123456789123456789, -2.5e-7},
                         sample_sym_pp(rng, 1 + (k % 2)));
      const Json j = Json::parse(gaussian_to_json(g).dump());
      const GaussianOp back = gaussian_from_json(j);
      if (back.scale != g.scale) worst = 1.0;
      if ((back.form.mat().array() != g.form.mat().array()).any()) worst = 1.0;
    }
    add("json_round_trip_bit_exact", worst, 0.0);
  }

  return report;
}

std::string format_report(const VerifyReport& report) {
  std::ostringstream out;
  out.precision(6);
  for (const auto& r : report.results)
    out << (r.pass ? "PASS" : "FAIL") << "  " << r.name
        << "  measured=" << r.measured << "  tol=" << r.tol << "\n";
  out << (report.all_pass() ? "all invariants pass" : "invariant FAILURES present")
      << "\n";
  return out.str();
}

}  // namespace osc
