import math

import pytest

from trical.asymptotics import (COS_PI_10, TailBoundError, asymptotic_check_331, asymptotic_rhs,
                                double_sum)
from trical.pairs import outer_sum


def test_cos_pi_over_ten():
    assert math.isclose(COS_PI_10, 0.9510565, rel_tol=1e-7)


def test_rhs_formula():
    t = 0.5
    expected = math.sqrt(2 / (5 * math.pi * t)) * COS_PI_10 * math.exp(9 * math.pi ** 2 / (20 * t))
    assert asymptotic_rhs(t) == expected


def test_double_sum_matches_exact_series():
    t, order = 0.8, 400
    exact = outer_sum("rr", order).eval_float(t)
    total, tail = double_sum(t, 8000)
    assert math.isclose(total, exact, rel_tol=1e-9)
    assert tail < 1e-9 * total


def test_golden_value_at_point_eight():
    r = asymptotic_check_331(0.8)
    assert math.isclose(r.lhs_value, 57.59236044453634, rel_tol=1e-10)
    assert math.isclose(r.ratio, 0.5891100770554314, rel_tol=1e-10)
    assert r.tail_bound <= 1e-9 * r.lhs_value


def test_tail_bound_failure_is_reported():
    with pytest.raises(TailBoundError):
        asymptotic_check_331(0.05, order=40)
    with pytest.raises(ValueError):
        double_sum(0.0, 100)
