import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from xtropy.errors import DomainError
from xtropy.weights import (UNIT, custom, default_grid, dominates, exp_weight, parse_weight,
                            power, weight_eval)


class TestPowerWeight:
    @pytest.mark.parametrize("m,odd", [(1, True), (3, True), (2, False), (0.5, False), (1.5, False)])
    def test_oddness_flag(self, m, odd):
        assert power(m).is_odd is odd

    def test_non_integer_exponent_negative_x(self):
        with pytest.raises(DomainError):
            weight_eval(power(0.5), np.array([-1.0, 1.0]))

    def test_integer_exponent_negative_x(self):
        np.testing.assert_array_equal(weight_eval(power(3), np.array([-2.0, 2.0])), [-8.0, 8.0])

    def test_rejects_nonpositive_exponent(self):
        with pytest.raises(DomainError):
            power(0)


class TestFlags:
    def test_unit_is_both_monotone(self):
        assert UNIT.is_increasing and UNIT.is_decreasing
        UNIT.validate(np.linspace(-5, 5, 11))

    def test_validate_catches_false_declaration(self):
        w = custom(lambda x: -x, "neg", increasing=True, nonnegative=False)
        with pytest.raises(ValueError, match="increasing"):
            w.validate(np.linspace(0, 1, 9))

    def test_validate_nonnegative(self):
        with pytest.raises(ValueError, match="nonnegative"):
            power(1).validate(np.linspace(-1, 1, 9))

    def test_exp_weight(self):
        exp_weight().validate(np.linspace(-3, 3, 50))
        assert exp_weight()(0.0) == 1.0


class TestHelpers:
    def test_dominates(self):
        grid = default_grid(1.0, 5.0)
        assert dominates(power(2), power(1), grid)
        assert not dominates(power(2), power(1), default_grid(0.0, 1.0))

    def test_default_grid_cuts_infinite_ends(self):
        g = default_grid(0.0, np.inf, 100)
        assert g.min() > 0 and g.max() < 50 and g.size == 100
        g = default_grid(-np.inf, 0.0, 10)
        assert g.min() > -50 and g.max() < 0

    @pytest.mark.parametrize("text,spec", [("unit", "unit"), ("exp", "exp"), ("pow:1", "pow:1"),
                                           ("pow:2.5", "pow:2.5"), ("POW:2.0", "pow:2")])
    def test_parse(self, text, spec):
        assert parse_weight(text).spec == spec

    @pytest.mark.parametrize("bad", ["pow:", "pow:x", "square", "pow:-1"])
    def test_parse_errors(self, bad):
        with pytest.raises(DomainError):
            parse_weight(bad)


@given(st.floats(0.1, 4), st.lists(st.floats(0, 100), min_size=2, max_size=30))
def test_power_weight_is_increasing_on_half_line(m, xs):
    x = np.sort(np.array(xs))
    assert np.all(np.diff(weight_eval(power(m), x)) >= 0)
