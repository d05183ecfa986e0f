import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import scipy_law
from xtropy.distributions import (QUANTILE_CLAMP, Beta, Custom, Exponential, LinearFalling,
                                  LinearRising, NegSqrtExp, Pareto, Power, Scaled, Triangular,
                                  Uniform, parse_distribution)
from xtropy.errors import DomainError

CASES = [
    (Uniform(-1.0, 2.0), ("uniform", -1.0, 2.0)),
    (Power(2.5), ("power", 2.5)),
    (Exponential(1.7), ("exp", 1.7)),
    (Pareto(2.2), ("pareto", 2.2)),
    (Beta(2.0, 3.5), ("beta", 2.0, 3.5)),
    (Triangular(0.0, 0.3, 2.0), ("triangular", 0.0, 0.3, 2.0)),
    (LinearRising(), ("linear-rising",)),
    (LinearFalling(), ("linear-falling",)),
]
IDS = [c[0].spec for c in CASES]
U = np.linspace(0.001, 0.999, 257)


class TestAgainstScipy:
    @pytest.mark.parametrize("dist,ref", CASES, ids=IDS)
    def test_quantile(self, dist, ref):
        np.testing.assert_allclose(dist.quantile(U), scipy_law(*ref).ppf(U), rtol=1e-10, atol=1e-12)

    @pytest.mark.parametrize("dist,ref", CASES, ids=IDS)
    def test_pdf_and_cdf(self, dist, ref):
        law = scipy_law(*ref)
        x = law.ppf(U)
        np.testing.assert_allclose(dist.pdf(x), law.pdf(x), rtol=1e-10, atol=1e-12)
        np.testing.assert_allclose(dist.cdf(x), law.cdf(x), rtol=1e-10, atol=1e-12)
        np.testing.assert_allclose(dist.sf(x), law.sf(x), rtol=1e-9, atol=1e-12)

    @pytest.mark.parametrize("dist,ref", CASES, ids=IDS)
    def test_density_quantile(self, dist, ref):
        law = scipy_law(*ref)
        np.testing.assert_allclose(dist.density_quantile(U), law.pdf(law.ppf(U)), rtol=1e-9)

    @pytest.mark.parametrize("dist,ref", CASES, ids=IDS)
    def test_zero_outside_support(self, dist, ref):
        lo, hi = dist.support
        outside = [v for v in (lo - 1.0, hi + 1.0) if math.isfinite(v)]
        assert np.all(dist.pdf(np.array(outside)) == 0.0)


class TestNegSqrtExp:
    def test_cdf_closed_form(self):
        x = np.array([-9.0, -4.0, -1.0, -0.25])
        np.testing.assert_allclose(NegSqrtExp().cdf(x), np.exp(-np.sqrt(-x)), rtol=1e-14)

    def test_quantile(self):
        u = np.array([0.1, 0.5, 0.9])
        np.testing.assert_allclose(NegSqrtExp().quantile(u), -np.log(u) ** 2, rtol=1e-14)

    def test_pdf_integrates_to_one(self):
        from scipy import integrate
        d = NegSqrtExp()
        total = integrate.quad(lambda x: float(d.pdf(x)), -np.inf, -1)[0] + \
            integrate.quad(lambda x: float(d.pdf(x)), -1, 0)[0]
        assert total == pytest.approx(1.0, abs=1e-8)


class TestInterface:
    def test_quantile_rejects_endpoints(self):
        for u in (0.0, 1.0, -0.1, 1.5):
            with pytest.raises(DomainError):
                Exponential(1.0).quantile(u)

    def test_clamp_only_on_unbounded_side(self):
        top = Exponential(1.0).quantile(np.nextafter(1.0, 0.0))
        assert top == pytest.approx(-math.log(QUANTILE_CLAMP), rel=1e-6)
        assert Uniform(0.0, 1.0).quantile(np.nextafter(1.0, 0.0)) == pytest.approx(1.0)

    def test_reverse_hazard(self):
        x = np.array([0.5, 1.0, 2.0])
        np.testing.assert_allclose(Exponential(1.0).reverse_hazard(x),
                                   np.exp(-x) / (1 - np.exp(-x)), rtol=1e-12)
        with pytest.raises(DomainError):
            Exponential(1.0).reverse_hazard(-1.0)

    @pytest.mark.parametrize("bad", [lambda: Exponential(0.0), lambda: Uniform(1.0, 1.0),
                                     lambda: Pareto(-1.0), lambda: Triangular(0, 3, 2),
                                     lambda: Power(float("nan"))])
    def test_invalid_parameters(self, bad):
        with pytest.raises(DomainError):
            bad()


class TestScaledAndCustom:
    def test_scaled_is_exact_scaling(self):
        base = Exponential(1.0)
        z = Scaled(base, 2.0)
        np.testing.assert_array_equal(z.quantile(U), 2.0 * base.quantile(U))
        np.testing.assert_allclose(z.density_quantile(U), 0.5 * base.density_quantile(U))
        np.testing.assert_allclose(z.cdf(np.array([1.0, 3.0])), 1 - np.exp(-np.array([0.5, 1.5])))

    def test_custom_matches_uniform(self):
        d = Custom((0.0, 0.5, 1.0), (0.0, 1.0, 2.0))
        np.testing.assert_allclose(d.quantile(U), 2 * U, atol=1e-12)
        np.testing.assert_allclose(d.pdf(np.array([0.3, 1.7])), 0.5, rtol=1e-9)
        np.testing.assert_allclose(d.cdf(np.array([0.3, 1.7])), [0.15, 0.85], atol=1e-12)

    def test_custom_rejects_non_monotone(self):
        with pytest.raises(DomainError):
            Custom((0.0, 0.5, 1.0), (0.0, 2.0, 1.0))


class TestParsing:
    @pytest.mark.parametrize("text,canonical", [
        ("exp:1.0", "exp:1"), ("power:2", "power:2"), ("pareto:2.5", "pareto:2.5"),
        ("uniform:0,1", "uniform:0,1"), ("linear-rising", "linear-rising"),
        ("triangular:-1,0,1", "triangular:-1,0,1"), ("negsqrtexp", "negsqrtexp"),
        ("scaled:exp:1.0,c=2", "scaled:exp:1,c=2"), ("beta:2,3", "beta:2,3"),
    ])
    def test_canonical_round_trip(self, text, canonical):
        d = parse_distribution(text)
        assert d.spec == canonical
        assert parse_distribution(d.spec) == d

    @pytest.mark.parametrize("text,token", [("bogus:1", "bogus"), ("exp:abc", "abc"),
                                            ("uniform:0", "uniform"), ("scaled:exp:1", "c=")])
    def test_errors_name_the_token(self, text, token):
        with pytest.raises(DomainError, match=token):
            parse_distribution(text)


@settings(max_examples=60, deadline=None)
@given(u=st.floats(1e-6, 1 - 1e-6), rate=st.floats(0.1, 10), theta=st.floats(0.3, 5),
       alpha=st.floats(0.5, 6))
def test_cdf_inverts_quantile(u, rate, theta, alpha):
    for d in (Exponential(rate), Power(theta), Pareto(alpha), Triangular(-1, 0.2, 3),
              NegSqrtExp(), Beta(theta, alpha)):
        assert float(d.cdf(d.quantile(u))) == pytest.approx(u, rel=1e-7, abs=1e-12)
