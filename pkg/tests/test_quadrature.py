import numpy as np
import pytest

from wishart_cf import quadrature
from wishart_cf.exceptions import QuadratureError


def test_weights_sum_to_interval_length():
    assert quadrature.KRONROD_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-15)
    assert quadrature.GAUSS_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-15)


def test_gauss_nodes_match_legendre():
    x, w = np.polynomial.legendre.leggauss(7)
    mask = quadrature.GAUSS_WEIGHTS != 0
    assert np.allclose(quadrature.NODES[mask], x, atol=1e-15)
    assert np.allclose(quadrature.GAUSS_WEIGHTS[mask], w, atol=1e-15)


@pytest.mark.parametrize("deg", range(0, 23))
def test_kronrod_exact_to_degree_22(deg):
    est, diff = quadrature.gk15(lambda t: t ** deg, 0.0, 1.0)
    assert est == pytest.approx(1 / (deg + 1), abs=1e-14)
    if deg <= 13:
        assert abs(diff) < 1e-14


def test_adaptive_complex_oscillatory():
    val, err = quadrature.integrate(lambda t: np.exp(40j * t), 0.0, 1.0, tol=1e-12)
    exact = (np.exp(40j) - 1) / 40j
    assert err <= 1e-12
    assert abs(val - exact) <= 1e-12


def test_adaptive_near_pole():
    # 1 / (t - 0.5 - 0.01 i): analytic but sharply peaked
    f = lambda t: 1 / (t - 0.5 - 0.01j)
    val, err = quadrature.integrate(f, 0.0, 1.0, tol=1e-11)
    exact = np.log(0.5 - 0.01j) - np.log(-0.5 - 0.01j)
    assert abs(val - exact) <= 1e-10


def test_budget_exhausted():
    with pytest.raises(QuadratureError):
        quadrature.integrate(lambda t: np.abs(t - 1 / 3) ** -0.9, 0.0, 1.0, tol=1e-13, max_intervals=20)
