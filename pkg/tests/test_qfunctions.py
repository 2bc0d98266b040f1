import pytest

import recurrences
from trical.qfunctions import (INFINITE, MINUS_ONE, MINUS_Q, Q, PochhammerBase, big_T,
                               classical_trinomial, limit_series, multinomial, pochhammer_finite,
                               pochhammer_infinite, q_binomial, reciprocal_pochhammer,
                               reciprocal_pochhammer_infinite, trinomial_round)
from trical.series import QSeries, equal_to_order, mul

q = QSeries.from_q


def test_pochhammer_finite_examples():
    assert pochhammer_finite(MINUS_ONE, 3) == q({0: 2, 1: 2, 2: 2, 3: 2})
    for b in (Q, MINUS_ONE, PochhammerBase(-1, 1)):
        assert pochhammer_finite(b, 0) == QSeries.one()
    assert pochhammer_finite(PochhammerBase(-1, -2), 2) == q({0: 2, -1: 2})
    assert pochhammer_finite(Q, -2) is INFINITE


def test_reciprocal_pochhammer_examples():
    assert reciprocal_pochhammer(Q, -1, 12).is_zero()
    assert reciprocal_pochhammer(Q, 1, 12) == q({0: 1, 1: 1, 2: 1, 3: 1}, 3)
    assert reciprocal_pochhammer(Q, 0, 12) == QSeries.one()


def test_pochhammer_infinite_examples():
    # Euler's pentagonal numbers
    assert pochhammer_infinite(Q, 28) == q({0: 1, 1: -1, 2: -1, 5: 1, 7: 1}, 7)
    minus_one = pochhammer_infinite(MINUS_ONE, 40)
    assert minus_one == 2 * pochhammer_infinite(MINUS_Q, 40)
    # distinct parts
    assert pochhammer_infinite(MINUS_Q, 12) == q({0: 1, 1: 1, 2: 1, 3: 2}, 3)
    with pytest.raises(ValueError):
        pochhammer_infinite(PochhammerBase(1, -2), 12)


def _partitions_into_distinct(n):
    counts = [1] + [0] * n
    for part in range(1, n + 1):
        for k in range(n, part - 1, -1):
            counts[k] += counts[k - part]
    return counts


def test_distinct_parts_oracle():
    counts = _partitions_into_distinct(30)
    s = pochhammer_infinite(MINUS_Q, 120)
    assert [s[4 * k] for k in range(31)] == counts


def test_reciprocal_infinite_is_partition_function():
    s = reciprocal_pochhammer_infinite(Q, 80)
    assert [s[4 * k] for k in range(21)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135,
                                             176, 231, 297, 385, 490, 627]


def test_q_binomial_examples():
    assert q_binomial(4, 2) == q({0: 1, 1: 1, 2: 2, 3: 1, 4: 1})
    assert q_binomial(3, 5).is_zero()
    for n in range(8):
        assert q_binomial(n, 0) == QSeries.one()


def test_binomial_inversion():
    for A in range(13):
        for B in range(A + 1):
            p = q_binomial(A, B)
            assert p.substitute_q_inverse().shift(4 * B * (A - B)) == p


def test_binomial_limit():
    for B in range(6):
        target = reciprocal_pochhammer(Q, B, 80)
        for A in range(B, 21):
            depth = 4 * (A - B)
            assert equal_to_order(q_binomial(A, B), target, depth) is True


def test_multinomial_symmetric_and_vanishing():
    assert multinomial(5, 1, 2) == multinomial(5, 2, 1)
    assert multinomial(3, 2, 2).is_zero()
    assert multinomial(4, -1, 0).is_zero()


def test_trinomial_round_examples():
    assert trinomial_round(2, 0, 0) == q({0: 1, 1: 1, 2: 1})
    assert trinomial_round(3, 2, 1).value_at_one() == 6
    assert trinomial_round(2, 0, 3).is_zero()


def test_classical_trinomial_examples():
    assert classical_trinomial(0, 0) == 1
    assert classical_trinomial(2, 0) == 3
    assert classical_trinomial(3, 1) == 6
    assert classical_trinomial(3, -4) == 0


def test_pascal_triangle_matches_closed_form():
    row = [1]
    for L in range(1, 31):
        padded = [0, 0] + row + [0, 0]
        row = [padded[i] + padded[i + 1] + padded[i + 2] for i in range(len(row) + 2)]
        assert row == [classical_trinomial(L, A) for A in range(-L, L + 1)]


def test_big_T_examples():
    assert big_T(0, 1, 0) == QSeries.monomial(2)
    for n in recurrences.NS:
        for L in range(8):
            assert big_T(n, L, L) == QSeries.one()
            assert big_T(n, L, -L) == QSeries.one()


def test_q_equals_one_collapse():
    for n in recurrences.NS:
        for L in range(16):
            for A in range(-L, L + 1):
                assert big_T(n, L, A).value_at_one() == classical_trinomial(L, A)


def test_all_recurrences_hold_exactly():
    bad = recurrences.failures(20)
    assert {k: v for k, v in bad.items() if v} == {}


def test_printed_bracket_does_not_hold():
    # with T_1 in place of T_-1 in the first bracket term the relation breaks
    assert not all(recurrences.combined_printed(L, A) for L in range(2, 6) for A in range(L + 1))


def test_limit_series_examples():
    assert limit_series("T1_limit", 12) == q({0: 1, 1: 2, 2: 4, 3: 8}, 3)
    assert limit_series("T0_pair_limit", 12)[0] == 1
    with pytest.raises(ValueError):
        limit_series("nope", 8)


def test_overpartition_oracle():
    # overpartitions: prod (1+q^k)/(1-q^k)
    counts = [1, 2, 4, 8, 14, 24, 40, 64, 100, 154, 232]
    s = limit_series("T1_limit", 40)
    assert [s[4 * k] for k in range(11)] == counts


def test_pair_limit_product_oracle():
    top = pochhammer_infinite(PochhammerBase(-1, 1), 60)
    assert equal_to_order(mul(limit_series("T0_pair_limit", 60), pochhammer_infinite(Q, 60), 60), top, 60) is True


def test_trinomial_limits_in_window():
    depth = 40  # q^10
    t1 = limit_series("T1_limit", depth)
    pair = limit_series("T0_pair_limit", depth)
    for L in range(20, 27):
        assert equal_to_order(big_T(1, L, 0), t1, depth) is True
        assert equal_to_order(big_T(0, L, 0) + big_T(0, L, 1), pair, depth) is True
