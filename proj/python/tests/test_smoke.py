import math

import numpy as np
import pytest

import oscsemi as osc


def iso(lam, scale=1.0 + 0.0j):
    return osc.GaussianOp(scale=scale, form=osc.SymMatrix(lam * np.eye(2)))


def test_classify_flags():
    r = osc.classify_sym(osc.SymMatrix(0.5 * np.eye(2)))
    assert r.flags["sym_p_qnd"] and r.flags["real"] and r.flags["pos_strict"]


def test_trace_and_norms():
    g = iso(0.5)
    assert math.isclose(osc.trace(g).real, 1.0, abs_tol=1e-12)
    assert math.isclose(osc.trace_norm(g), 1.0, abs_tol=1e-12)
    assert math.isclose(osc.op_norm(iso(3.0)), 0.25, abs_tol=1e-12)
    with pytest.raises(osc.OscError):
        osc.trace_norm(iso(1.0))


def test_compose_matches_scalar_model():
    res = osc.compose(iso(0.5), iso(0.5))
    lam = 2 * 0.5 / (1 + 0.25)
    assert np.allclose(res.op.form.mat, lam * np.eye(2))
    assert math.isclose(abs(res.op.scale), 1 / (1 + 0.25), rel_tol=1e-12)
    assert res.sign_certain


def test_diamond_round_trip():
    a = osc.SymMatrix(0.3 * np.eye(2))
    z = osc.diamond(a, -a)
    assert np.linalg.norm(z.mat) < 1e-12


def test_symplectic_bijection():
    a = osc.SymMatrix(0.5 * np.eye(2) + 0.1j * np.array([[0.0, 1.0], [1.0, 0.0]]))
    r = osc.to_symplectic(a)
    back = osc.from_symplectic(r)
    assert np.allclose(back.mat, a.mat, atol=1e-12)


def test_propagator_and_regions():
    h = osc.QuadHamiltonian(osc.SymMatrix(np.eye(2)))
    g = osc.propagator(h, 0.5 + 0.0j)
    assert np.allclose(g.form.mat, math.tanh(0.5) * np.eye(2), atol=1e-12)
    assert osc.davies_member(0.0, 1.0 + 0.5j) == "interior"
    assert osc.domain_member(h, -1.0 + 0.0j) == "outside"


def test_oracle_agrees_with_closed_forms():
    nf = osc.numeric_functionals(osc.hermite_matrix(iso(0.5), 60))
    assert math.isclose(nf.trace.real, 1.0, abs_tol=1e-8)
    assert math.isclose(nf.op_norm, 2.0 / 3.0, rel_tol=1e-8)


def test_cordes_chain():
    p = osc.CordesParams()
    assert math.isclose(osc.closed_bound(p), (1 + math.pi) / (2 * math.pi),
                        rel_tol=1e-12)
    assert osc.tight_bound(p) <= osc.closed_bound(p) + 1e-9
    assert osc.cv_check_gaussian(0.7, 0.3).holds
