#include <doctest.h>

#include "oscsemi/gaussops.hpp"
#include "oscsemi/hamflow.hpp"
#include "oscsemi/matcore.hpp"
#include "oscsemi/sampling.hpp"
#include "oscsemi/symclass.hpp"

using namespace osc;

namespace {

QuadHamiltonian isotropic() {
  return QuadHamiltonian{SymMatrix(Matrix::Identity(2, 2))};
}

QuadHamiltonian davies(double psi) {
  Matrix h = Matrix::Zero(2, 2);
  h(0, 0) = std::exp(kI * psi);
  h(1, 1) = std::exp(-kI * psi);
  return QuadHamiltonian{SymMatrix(h)};
}

}  // namespace

TEST_CASE("generator_closed_forms") {
  const QuadHamiltonian h = isotropic();
  Matrix want(2, 2);
  want << 0.0, -2.0, 2.0, 0.0;
  CHECK((h.generator() - want).norm() < 1e-15);
  CHECK(classify_sp_alg(h.generator()).flag("sp"));

  const QuadHamiltonian hp = davies(0.7);
  Matrix wantp = Matrix::Zero(2, 2);
  wantp(0, 1) = -2.0 * std::exp(kI * 0.7);
  wantp(1, 0) = 2.0 * std::exp(-kI * 0.7);
  CHECK((hp.generator() - wantp).norm() < 1e-14);

  const QuadHamiltonian h0{SymMatrix(Matrix::Zero(4, 4))};
  CHECK(h0.generator().norm() == 0.0);
}

TEST_CASE("propagator_isotropic_is_mehler") {
  const QuadHamiltonian h = isotropic();
  for (double t : {0.25, 0.7, 1.3}) {
    const GaussianOp g = propagator(h, {t, 0.0});
    CHECK((g.form.mat() - std::tanh(t) * Matrix::Identity(2, 2)).norm() <
          1e-11);
    // Tr e^{-t Op(H)} = 1 / (2 sinh t)
    CHECK(std::abs(trace(g) - 1.0 / (2.0 * std::sinh(t))) < 1e-11);
  }
}

TEST_CASE("propagator_first_order_calibration") {
  Rng rng(3);
  for (int k = 0; k < 20; ++k) {
    const SymMatrix hform = sample_sym_pp(rng, 1 + (k % 2));
    const QuadHamiltonian h{hform};
    const Complex z{1e-3, 0.0};
    const GaussianOp g = propagator(h, z);
    const double hn = hform.mat().norm();
    CHECK((g.form.mat() - z * hform.mat()).norm() <= 10.0 * 1e-6 * hn * hn);
  }
}

TEST_CASE("propagator_semigroup_law") {
  const QuadHamiltonian h = isotropic();
  const GaussianOp g1 = propagator(h, {0.3, 0.0});
  const GaussianOp g2 = propagator(h, {0.4, 0.0});
  const GaussianOp g12 = propagator(h, {0.7, 0.0});
  const ComposeResult prod = compose(g1, g2);
  CHECK((prod.op.form.mat() - g12.form.mat()).norm() < 1e-9);
  CHECK(std::abs(std::abs(prod.op.scale) - std::abs(g12.scale)) < 1e-9);

  // Davies at an angle, complex times
  const QuadHamiltonian hp = davies(0.5);
  const GaussianOp p1 = propagator(hp, {0.4, 0.2});
  const GaussianOp p2 = propagator(hp, {0.3, -0.1});
  const GaussianOp p12 = propagator(hp, {0.7, 0.1});
  const ComposeResult pp = compose(p1, p2);
  CHECK((pp.op.form.mat() - p12.form.mat()).norm() < 1e-8);
}

TEST_CASE("domain_member_right_half_plane_for_real_H") {
  Rng rng(5);
  const QuadHamiltonian h{sample_sym_p_qnd(rng, 1)};
  CHECK(domain_member(h, {0.5, 0.3}) == RegionLabel::Interior);
  CHECK(domain_member(h, {2.0, -1.0}) == RegionLabel::Interior);
  CHECK(domain_member(h, {0.0, 0.4}) == RegionLabel::Closure);
  CHECK(domain_member(h, {-0.3, 0.0}) == RegionLabel::Outside);
}

TEST_CASE("davies_member_closed_form") {
  CHECK(davies_member(0.0, {0.8, 2.0}) == RegionLabel::Interior);
  CHECK(davies_member(0.0, {25.0, -7.0}) == RegionLabel::Interior);
  CHECK(davies_member(M_PI / 4, {1.5, 0.0}) == RegionLabel::Interior);
  CHECK(davies_member(M_PI / 4, {-0.2, 0.1}) == RegionLabel::Outside);
  CHECK_THROWS_AS(davies_member(2.0, {1.0, 0.0}), OscError);
}

TEST_CASE("davies_vs_matrix_route") {
  for (double psi : {M_PI / 3, M_PI / 4}) {
    const QuadHamiltonian h = davies(psi);
    for (Complex z : {Complex{0.2, 2.5}, Complex{0.05, 1.4}, Complex{1.0, 0.3},
                      Complex{0.1, -2.2}, Complex{0.02, 0.9}}) {
      const RegionLabel closed = davies_member(psi, z);
      const RegionLabel matrix_route = domain_member(h, z);
      if (closed == RegionLabel::Closure || matrix_route == RegionLabel::Closure)
        continue;  // boundary band is allowed to differ
      CHECK(closed == matrix_route);
    }
  }
}

TEST_CASE("sample_region_refinement_and_half_plane") {
  const DomainSample coarse = sample_region_davies(0.3, 0.0, 3.0, -3.0, 3.0, 50);
  const DomainSample fine = sample_region_davies(0.3, 0.0, 3.0, -3.0, 3.0, 200);
  const auto frac = [](const DomainSample& s) {
    int n = 0;
    for (RegionLabel l : s.labels) n += (l == RegionLabel::Interior);
    return (double)n / s.labels.size();
  };
  CHECK(std::abs(frac(coarse) - frac(fine)) < 0.02);

  const DomainSample rhp = sample_region_davies(0.0, 0.01, 3.0, -3.0, 3.0, 40);
  for (RegionLabel l : rhp.labels) CHECK(l == RegionLabel::Interior);
}

TEST_CASE("interior_points_form_a_semigroup") {
  const double psi = 0.6;
  std::vector<Complex> interior;
  for (double re : {0.3, 0.8, 1.4})
    for (double im : {0.0, 0.2, -0.3})
      if (davies_member(psi, {re, im}) == RegionLabel::Interior)
        interior.push_back({re, im});
  for (Complex z1 : interior)
    for (Complex z2 : interior)
      CHECK(davies_member(psi, z1 + z2) == RegionLabel::Interior);
}

TEST_CASE("metaplectic_closed_forms") {
  const QuadHamiltonian h = isotropic();
  const GaussianOp id = metaplectic_form(h, 0.0);
  CHECK(id.form.mat().norm() < 1e-12);
  CHECK(std::abs(id.scale - 1.0) < 1e-12);

  for (double t : {0.2, 0.6, 1.0}) {
    const GaussianOp g = metaplectic_form(h, t);
    // C_t = tan(t) I, purely imaginary form i C_t
    CHECK((g.form.mat() - kI * std::tan(t) * Matrix::Identity(2, 2)).norm() <
          1e-10);
    CHECK(g.form.mat().real().norm() < 1e-9);
  }

  CHECK_THROWS_AS(metaplectic_form(h, M_PI / 2), OscError);
  CHECK_THROWS_AS(metaplectic_form(davies(0.4), 1.0), OscError);
}

TEST_CASE("form_blows_up_at_the_degenerate_slice") {
  // Approaching z = i pi / 2 from inside the domain (psi = 0): the propagator
  // form diverges like coth of the distance, while the operator norm itself
  // stays bounded -- the blow-up lives in the exponent, not the norm.
  const QuadHamiltonian h = isotropic();
  const Complex z{5e-4, M_PI / 2};
  CHECK(domain_member(h, z) == RegionLabel::Interior);
  const GaussianOp g = propagator(h, z);
  CHECK(g.form.mat().norm() >= 1e3);
  const double norm_bound = op_norm(GaussianOp(
      Complex{1.0, 0.0}, SymMatrix(g.form.mat().real().cast<Complex>())));
  CHECK(std::isfinite(norm_bound));
  // exactly at the slice the Gaussian symbol is gone
  CHECK_THROWS_AS(propagator(h, Complex{0.0, M_PI / 2}), OscError);
}
