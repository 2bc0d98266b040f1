from trical.bailey import verify_pair_relation
from trical.characters import VIRASORO_34, CharacterLabel, chi_virasoro
from trical.identities import (half_base_transform, rr_binomial_lhs, rr_binomial_rhs, rr_bosonic,
                               rr_product_sum, rr_trinomial_rhs, saalschutz_admissible,
                               saalschutz_sides, theorem2_bilateral)
from trical.pairs import gg_pair, gg_theta, ising_pair, ising_theta, outer_sum, rr_pair
from trical.qfunctions import PochhammerBase, pochhammer_finite
from trical.series import QSeries, divide, equal_to_order

ORDER = 80


def test_closed_form_pairs_satisfy_relation():
    for pair in (gg_pair(2), gg_pair(3), ising_pair(), rr_pair()):
        for L in range(9):
            assert verify_pair_relation(pair, L).passed, (pair.label, L)


def test_rogers_ramanujan_three_ways():
    for a in (0, 1):
        fermionic = rr_product_sum(a, ORDER)
        assert equal_to_order(fermionic, rr_bosonic(a, ORDER), ORDER) is True
        chi = chi_virasoro(CharacterLabel(VIRASORO_34, 2, 5, 2, 2 * (2 - a)), ORDER)
        assert equal_to_order(fermionic, chi, ORDER) is True


def test_rogers_ramanujan_first_terms():
    # partitions into parts = 1, 4 mod 5
    s = rr_product_sum(0, 40)
    assert [s[4 * k] for k in range(11)] == [1, 1, 1, 1, 2, 2, 3, 3, 4, 5, 6]


def test_binomial_polynomial_analogue():
    for a in (0, 1):
        for L in range(9):
            assert rr_binomial_lhs(a, L) == rr_binomial_rhs(a, L)
    assert rr_binomial_lhs(0, 6) != rr_binomial_rhs(0, 6, drop_extreme=True)


def test_trinomial_side_matches_binomial_side():
    for L in range(9):
        assert rr_trinomial_rhs(L) == rr_binomial_lhs(0, L)


def test_half_base_transform():
    # 1 + q -> (1 + q^(-1/2)) q^2
    assert half_base_transform(QSeries.from_q({0: 1, 1: 1}), 2) == QSeries({8: 1, 6: 1})
    assert half_base_transform(QSeries.one(), 0) == QSeries.one()


def test_theorem2_bilateral_equals_double_sums():
    assert equal_to_order(theorem2_bilateral(ising_theta(), ORDER), outer_sum("ising", ORDER), ORDER) is True
    assert equal_to_order(theorem2_bilateral(gg_theta(2), ORDER), outer_sum("gg", ORDER, 2), ORDER) is True


def test_saalschutz_box():
    count = 0
    for n in range(5):
        for A in range(1, 4):
            for B in range(1, 4):
                for C in range(1, 4):
                    if not saalschutz_admissible(n, A, B, C):
                        continue
                    count += 1
                    lhs, rhs = saalschutz_sides(n, A, B, C, 40)
                    assert equal_to_order(lhs, rhs, 40) is True
    assert count > 50


def test_saalschutz_n1_by_hand():
    # n = 1: 1 + q (1 - q^-1)(1 - q^(C-A))(1 - q^(C-B)) / ((1 - q)(1 - q^C)(1 - q^(C-A-B)))
    A, B, C, order = 1, 2, 4, 40
    b = lambda k: pochhammer_finite(PochhammerBase(1, 2 * k), 1)
    term = divide(QSeries.monomial(4) * b(-1) * b(C - A) * b(C - B), b(1) * b(C) * b(C - A - B), order)
    lhs, rhs = saalschutz_sides(1, A, B, C, order)
    assert equal_to_order(lhs, QSeries.one() + term, order) is True
    assert equal_to_order(rhs, divide(b(A) * b(B), b(C) * b(A + B - C), order), order) is True


def test_saalschutz_inadmissible():
    assert not saalschutz_admissible(3, 1, 1, 2)
    assert saalschutz_admissible(0, 1, 1, 2)
