import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles as orc
from xtropy.distributions import (Beta, Exponential, LinearFalling, LinearRising, NegSqrtExp,
                                  Pareto, Power, Triangular, Uniform)
from xtropy.errors import DivergenceError, DomainError
from xtropy.extropy import (ExtropyValue, LambdaProfile, extropy, general_weighted_extropy,
                            lambda_eval, order_statistic_extropy, weighted_extropy)
from xtropy.weights import UNIT, exp_weight, power

LAWS = [
    (Uniform(0.0, 2.0), ("uniform", 0.0, 2.0)),
    (Power(2.0), ("power", 2.0)),
    (Exponential(1.5), ("exp", 1.5)),
    (Pareto(3.0), ("pareto", 3.0)),
    (Beta(2.0, 3.0), ("beta", 2.0, 3.0)),
    (Triangular(0.0, 0.5, 1.0), ("triangular", 0.0, 0.5, 1.0)),
]
WEIGHTS = [(UNIT, orc.unit_weight), (power(1), orc.pow_weight(1)), (power(2), orc.pow_weight(2)),
           (power(0.5), orc.pow_weight(0.5))]


class TestLinearPair:
    """Densities 2x and 2(1-x) on (0, 1)."""

    def test_plain_extropy_equal(self):
        assert extropy(LinearRising()).value == pytest.approx(-2 / 3, abs=1e-10)
        assert extropy(LinearFalling()).value == pytest.approx(-2 / 3, abs=1e-10)

    def test_weighted_extropy_differs(self):
        assert weighted_extropy(LinearRising()).value == pytest.approx(-0.5, abs=1e-10)
        assert weighted_extropy(LinearFalling()).value == pytest.approx(-1 / 6, abs=1e-10)


class TestAgainstOriginalScale:
    @pytest.mark.parametrize("dist,ref", LAWS, ids=[l[0].spec for l in LAWS])
    @pytest.mark.parametrize("k", range(len(WEIGHTS)), ids=[w[0].spec for w in WEIGHTS])
    def test_general_weighted(self, dist, ref, k):
        w, wref = WEIGHTS[k]
        breaks = (0.5,) if ref[0] == "triangular" else ()
        expected = orc.weighted_extropy_x(orc.scipy_law(*ref), wref, breaks)
        assert general_weighted_extropy(dist, w).value == pytest.approx(expected, abs=1e-9)

    def test_exp_weight_on_uniform(self):
        # -1/2 * integral_0^2 e^x / 4 dx
        assert general_weighted_extropy(Uniform(0, 2), exp_weight()).value == pytest.approx(
            -(math.e**2 - 1) / 8, abs=1e-10)


class TestOrderStatistics:
    @pytest.mark.parametrize("i,n", [(1, 1), (1, 2), (2, 2), (1, 3), (2, 3), (3, 3)])
    @pytest.mark.parametrize("dist,ref", LAWS[:3] + LAWS[4:5], ids=[l[0].spec for l in LAWS[:3] + LAWS[4:5]])
    def test_against_squared_density(self, dist, ref, i, n):
        expected = orc.order_stat_extropy_x(orc.scipy_law(*ref), orc.pow_weight(1), i, n)
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            got = order_statistic_extropy(dist, power(1), i, n)
        assert got.value == pytest.approx(expected, abs=1e-9)
        assert got.notes == ()

    def test_uniform_values(self):
        vals = [order_statistic_extropy(Uniform(0, 1), UNIT, i, 3).value for i in (1, 2, 3)]
        # f_{1:3} = 3(1-x)^2 and f_{2:3} = 6x(1-x): -9/10 and -36 B(3,3)/2
        np.testing.assert_allclose(vals, [-0.9, -0.6, -0.9], atol=1e-10)

    def test_index_range(self):
        with pytest.raises(DomainError):
            order_statistic_extropy(Uniform(0, 1), UNIT, 0, 2)
        with pytest.raises(DomainError):
            order_statistic_extropy(Uniform(0, 1), UNIT, 3, 2)

    def test_divergent_top_order_statistic(self):
        # the density of NegSqrtExp blows up like 1/(2|x|^{1/2}) at 0
        with pytest.raises(DivergenceError):
            order_statistic_extropy(NegSqrtExp(), exp_weight(), 2, 2)


class TestProfile:
    def test_lambda_of_exponential(self):
        prof = LambdaProfile(Exponential(2.0), UNIT)
        u = np.array([0.1, 0.5, 0.9])
        np.testing.assert_allclose(prof(u), 2 * (1 - u), rtol=1e-14)
        assert lambda_eval(prof, 0.5) == pytest.approx(1.0)

    def test_pareto_divergence(self):
        with pytest.raises(DivergenceError):
            general_weighted_extropy(Pareto(1.0), power(3))

    def test_method_tag_validated(self):
        with pytest.raises(ValueError):
            ExtropyValue(0.0, 0.0, "guess")


@settings(max_examples=25, deadline=None)
@given(rate=st.floats(0.2, 5.0), m=st.floats(0.2, 3.0))
def test_exponential_power_weight_closed_integral(rate, m):
    # -1/2 integral x^m rate^2 e^{-2 rate x} dx = -rate^{1-m} Gamma(m+1) / 2^{m+2}
    expected = -rate ** (1 - m) * math.gamma(m + 1) / 2 ** (m + 2)
    got = general_weighted_extropy(Exponential(rate), power(m)).value
    assert got == pytest.approx(expected, rel=1e-8, abs=1e-11)
