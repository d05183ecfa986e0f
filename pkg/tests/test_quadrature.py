import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate as sp_integrate
from scipy import stats

from xtropy.errors import DivergenceError, QuadratureError
from xtropy.quadrature import (BetaOrderKernel, beta_expectation, beta_kernel_pdf, integrate)

FINITE = [
    (lambda x: np.exp(-x**2), -1.0, 2.0),
    (lambda x: np.sin(10 * x) ** 2, 0.0, math.pi),
    (lambda x: x**-0.5, 0.0, 1.0),
    (lambda x: -(1 - x) * np.log1p(-x), 0.0, 1.0),
    (lambda x: np.log(x), 0.0, 1.0),
    (lambda x: np.abs(x - 0.3), 0.0, 1.0),
]
INFINITE = [
    (lambda x: np.exp(-x), 0.0, math.inf),
    (lambda x: np.exp(-x**2), -math.inf, math.inf),
    (lambda x: x**-1.5, 1.0, math.inf),
    (lambda x: np.exp(x), -math.inf, -5.0),
    (lambda x: 1 / (1 + x**2), -math.inf, math.inf),
]


class TestAgainstQuadpack:
    @pytest.mark.parametrize("k", range(len(FINITE)))
    def test_finite(self, k):
        f, a, b = FINITE[k]
        ref = sp_integrate.quad(f, a, b, epsabs=1e-14, epsrel=1e-13, limit=500)[0]
        res = integrate(f, a, b, 1e-11)
        assert res.value == pytest.approx(ref, abs=1e-10)
        assert res.abs_error_estimate <= 1e-11

    @pytest.mark.parametrize("k", range(len(INFINITE)))
    def test_infinite(self, k):
        f, a, b = INFINITE[k]
        ref = sp_integrate.quad(f, a, b, epsabs=1e-14, epsrel=1e-13, limit=500)[0]
        assert integrate(f, a, b, 1e-11).value == pytest.approx(ref, abs=1e-10)


class TestBehaviour:
    def test_reversed_limits(self):
        f = lambda x: x**2
        assert integrate(f, 1.0, 0.0).value == pytest.approx(-1 / 3, abs=1e-13)

    def test_empty_range(self):
        assert integrate(lambda x: x, 2.0, 2.0).value == 0.0

    @pytest.mark.parametrize("f,a,b", [(lambda x: 1 / x, 0.0, 1.0),
                                       (lambda x: 1 / x, 1.0, math.inf),
                                       (lambda x: 1 / (1 - x), 0.0, 1.0),
                                       (lambda x: np.ones_like(x), 0.0, math.inf)])
    def test_divergence_detected(self, f, a, b):
        with pytest.raises(DivergenceError):
            integrate(f, a, b)

    def test_panel_limit(self):
        with pytest.raises(QuadratureError):
            integrate(lambda x: np.sin(1 / x), 1e-4, 1.0, 1e-14, limit=4)

    def test_bad_tol(self):
        with pytest.raises(ValueError):
            integrate(lambda x: x, 0, 1, tol=0.0)


class TestBetaKernel:
    @pytest.mark.parametrize("i,n", [(1, 1), (1, 3), (2, 3), (3, 3), (4, 7)])
    def test_matches_scipy_beta(self, i, n):
        k = BetaOrderKernel.for_rss(i, n)
        u = np.linspace(0.01, 0.99, 41)
        np.testing.assert_allclose(beta_kernel_pdf(k, u), stats.beta(2 * i - 1, 2 * n - 2 * i + 1).pdf(u),
                                   rtol=1e-12)

    def test_endpoint_limits(self):
        assert BetaOrderKernel(1, 3).pdf(0.0) == pytest.approx(3.0)
        assert BetaOrderKernel(3, 1).pdf(1.0) == pytest.approx(3.0)

    def test_expectation_of_identity_is_mean(self):
        k = BetaOrderKernel(3, 5)
        assert beta_expectation(lambda u: u, k).value == pytest.approx(k.mean, abs=1e-12)

    def test_rejects_non_integer(self):
        with pytest.raises(ValueError):
            BetaOrderKernel(1.5, 2)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-5, 5), min_size=1, max_size=8), st.floats(-3, 0), st.floats(0.1, 3))
def test_polynomials_integrate_exactly(coeffs, a, width):
    b = a + width
    poly = np.polynomial.Polynomial(coeffs)
    exact = poly.integ()(b) - poly.integ()(a)
    assert integrate(poly, a, b).value == pytest.approx(exact, abs=1e-9 * (1 + abs(exact)))
