import random

import pytest

from randpairs import random_alpha, random_pairs
from trical.bailey import (FAIL, PASS, SKIP, alpha_from_list, beta_from_alpha_trinomial,
                           classical_beta_from_alpha, family43_prefactor, pair_from_alpha, phi,
                           theorem2_prefactor, theorem2_rhs, unit_alpha, verify_classical_transform_17,
                           verify_conjugate_222, verify_conjugate_233, verify_eq43, verify_pair_relation,
                           verify_theorem1_12, verify_theorem1_13, verify_theorem2)
from trical.pairs import ising_pair, outer_sum, pair_by_name, rr_pair
from trical.qfunctions import Q, PochhammerBase, reciprocal_pochhammer
from trical.series import NonInvertibleError, QSeries, divide, equal_to_order, mul

q = QSeries.from_q


def test_phi_examples():
    assert equal_to_order(phi(0, 20), QSeries.one(), 20) is True
    assert equal_to_order(phi(1, 12), QSeries({2: 2, 6: 2, 10: 2}), 12) is True
    assert phi(1, 12).trunc == 12


def test_phi_recurrence():
    order = 32
    for L in range(11):
        step = divide(QSeries([(2, 1), (2 + 4 * L, 1)]), QSeries({0: 1, 4 * L + 4: -1}), order)
        assert equal_to_order(phi(L + 1, order), mul(step, phi(L, order), order), order) is True


def test_beta_of_unit_alpha():
    beta = beta_from_alpha_trinomial(unit_alpha(0), 1, 20)
    assert beta == mul(QSeries.monomial(2), reciprocal_pochhammer(Q, 1, 20), 20)


def test_closed_form_pairs_match_alpha():
    for name, L in (("ising", 8), ("gg", 6)):
        assert verify_pair_relation(pair_by_name(name), L).passed


def test_theorem1_a0_examples():
    assert verify_theorem1_12(pair_from_alpha(unit_alpha(0)), 3, 32).status == PASS
    assert verify_theorem1_12(ising_pair(), 6, 40).status == PASS


def test_theorem1_a0_negative_control():
    pair = ising_pair()
    bad = pair.with_alpha(pair.alpha.corrupted(1, q({1: 1})))
    report = verify_theorem1_12(bad, 6, 40)
    assert report.status == FAIL and report.mismatch is not None


def test_theorem1_a1_examples():
    assert verify_theorem1_13(pair_from_alpha(unit_alpha(1)), 3, 32).passed
    rng = random.Random(3)
    assert verify_theorem1_13(pair_from_alpha(random_alpha(rng, 1, 4)), 6, 40).passed


def test_theorem1_a1_negative_control():
    pair = pair_from_alpha(unit_alpha(1))
    bad = pair.with_beta(lambda L: pair.beta_numerator(L) + (QSeries.monomial(8) if L == 2 else QSeries.zero()))
    assert verify_theorem1_13(bad, 4, 40).status == FAIL


def test_pair_with_wrong_a_is_rejected():
    with pytest.raises(ValueError):
        verify_theorem1_12(pair_from_alpha(unit_alpha(1)), 2, 20)


def test_theorem2_reproduces_double_sums():
    order = 48
    assert verify_theorem2(ising_pair(), "eq236", order).passed
    assert equal_to_order(theorem2_rhs(ising_pair().alpha, "eq236", order), outer_sum("ising", order), order) is True
    gg = pair_by_name("gg")
    assert verify_theorem2(gg, "eq236", order).passed
    assert equal_to_order(theorem2_rhs(gg.alpha, "eq236", order), outer_sum("gg", order, 2), order) is True


def test_theorem2_unit_alpha_a1():
    order = 40
    assert verify_theorem2(pair_from_alpha(unit_alpha(1)), "eq237", order).passed
    P = theorem2_prefactor(order)
    # the r = 0 term is P (1/(1+q) - 1/(1+q^-1))
    expected = divide(P, q({0: 1, 1: 1}), order) - divide(P, QSeries({0: 1, -4: 1}), order)
    assert equal_to_order(theorem2_rhs(unit_alpha(1), "eq237", order), expected, order) is True


@pytest.mark.parametrize("a", [0, 1])
def test_theorem_universality_on_random_pairs(a):
    for pair in random_pairs(10, a, seed=11):
        for M in (2, 5):
            report = verify_theorem1_12(pair, M, 40) if a == 0 else verify_theorem1_13(pair, M, 40)
            assert report.passed
        assert verify_theorem2(pair, "eq236" if a == 0 else "eq237", 40).passed


def test_conjugate_identities_small():
    for M in range(8):
        for A in range(M + 1):
            assert verify_conjugate_222(A, M).passed
            assert verify_conjugate_233(A, M).passed


def test_conjugate_smallest_and_vacuous():
    assert verify_conjugate_222(0, 0).status == PASS
    assert verify_conjugate_233(0, 1).status == PASS
    assert verify_conjugate_222(3, 2).status == SKIP


def test_conjugate_sign_flip_fails():
    assert any(verify_conjugate_233(A, 4, middle_sign=1).status == FAIL for A in range(5))


def test_classical_beta_examples():
    a = Q
    assert equal_to_order(classical_beta_from_alpha(unit_alpha(), a, 0, 20), QSeries.one(), 20) is True
    expected = mul(reciprocal_pochhammer(Q, 1, 16), reciprocal_pochhammer(PochhammerBase(1, 4), 1, 16), 16)
    assert classical_beta_from_alpha(unit_alpha(), a, 1, 16) == expected


def test_classical_beta_support_two_by_brute_force():
    alpha = alpha_from_list([QSeries.one(), q({1: -1}), q({0: 2, 2: 1})])
    order = 40
    got = classical_beta_from_alpha(alpha, Q, 2, order)
    brute = QSeries.zero(order)
    for r in range(3):
        brute = brute + mul(mul(alpha(r), reciprocal_pochhammer(Q, 2 - r, order), order),
                            reciprocal_pochhammer(PochhammerBase(1, 4), 2 + r, order), order)
    assert equal_to_order(got, brute, order) is True


def test_classical_transform():
    assert verify_classical_transform_17(unit_alpha(), Q, PochhammerBase(-1, 1), Q, 3, 32).passed
    rng = random.Random(17)
    for _ in range(20):
        alpha = random_alpha(rng, 0, 3)
        rho1 = PochhammerBase(rng.choice([1, -1]), rng.randint(-1, 2))
        rho2 = PochhammerBase(rng.choice([1, -1]), rng.randint(-1, 2))
        assert verify_classical_transform_17(alpha, Q, rho1, rho2, rng.randint(0, 5), 32).passed


def test_classical_transform_degenerate_rho_raises():
    with pytest.raises(NonInvertibleError):
        verify_classical_transform_17(unit_alpha(), Q, PochhammerBase(-1, 4), Q, 3, 32)
    with pytest.raises(ZeroDivisionError):
        verify_classical_transform_17(unit_alpha(), Q, PochhammerBase(1, 4), Q, 3, 32)


def test_family_at_zero_matches_theorem2_prefactor():
    order = 80
    assert equal_to_order(2 * family43_prefactor(0)(order), theorem2_prefactor(order), order) is True
    assert verify_eq43(ising_pair(), 0, 48).passed


def test_family_examples():
    assert verify_eq43(rr_pair(), 1, 40).passed
    assert verify_eq43(pair_from_alpha(unit_alpha(0)), 2, 40).passed
