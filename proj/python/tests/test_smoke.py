import math

import pytest

import sinhmodel as sm


def test_params_validation():
    p = sm.ModelParams(1.0, 1.0, 1.0, 0.1)
    assert p.s == 2.0
    assert p.u1 == pytest.approx(1.0 / (4.0 * math.pi))
    with pytest.raises(ValueError):
        sm.ModelParams(alpha=2.0)


def test_quadratic_endpoints_symmetric():
    p = sm.ModelParams()
    a, b = sm.endpoints_infinite(sm.Potential.quadratic(1.0, 0.0), p)
    assert a == pytest.approx(-b, abs=1e-10)
    assert b == pytest.approx(math.pi, rel=1e-8)


def test_free_energy_quadratic():
    p = sm.ModelParams()
    assert sm.free_energy_leading(sm.Potential.quadratic(1.0, 0.0), p) == pytest.approx(math.pi ** 2 / 3, rel=1e-8)


def test_gaussian_residual_decreases():
    p = sm.ModelParams(alpha=0.1)
    res = [abs(sm.gaussian_asymptotic_residual(1.0, 0.0, p, N)) for N in (1e2, 1e3, 1e4)]
    assert res[0] > res[1] > res[2]


def test_matched_gaussian_expansion_vanishes():
    p = sm.ModelParams()
    bf = sm.BoundaryFunctions(p)
    out = sm.main_expansion(sm.Potential.quadratic(1.0, 0.0), p, bf, 1000.0)
    assert out["matched"]
    assert out["total"] == 0.0


def test_custom_potential_matches_polynomial():
    p = sm.ModelParams()
    poly = sm.Potential.polynomial([0.0, 0.0, 1.0])
    cust = sm.Potential.custom(2, lambda k, x: [x * x, 2 * x, 2.0][k])
    assert sm.free_energy_leading(cust, p) == pytest.approx(sm.free_energy_leading(poly, p), rel=1e-10)


def test_quadrature_oracle_small_N():
    p = sm.ModelParams()
    V = sm.Potential.quadratic(1.0, 0.0)
    logZ, err = sm.logZ_quadrature(V, p, 2)
    assert logZ == pytest.approx(sm.gaussian_logZ_exact(1.0, 0.0, p, 2.0), rel=1e-8)
    assert err >= 0.0


def test_run_criterion_line():
    r = sm.run_criterion(3)
    assert r["id"] == 3
    assert r["pass"]
    assert r["line"].startswith("[PASS]")


def test_mc_with_python_potential_runs_threaded():
    p = sm.ModelParams()
    V1 = sm.Potential.custom(2, lambda k, x: [x * x + 0.1 * x, 2 * x + 0.1, 2.0][k])
    V0 = sm.Potential.quadratic(1.0, 0.0)
    est, err = sm.logZ_ratio_mc(V1, V0, p, 3, samples=500, chains=2, t_nodes=4)
    assert math.isfinite(est) and err > 0.0
