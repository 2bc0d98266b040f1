import pytest

from trical.bailey import prefactored_sum
from trical.characters import (N1_35, N2_GENERAL_38, N2_LEVEL1_37, SECTOR_A, SECTOR_P, VIRASORO_34,
                               CharacterLabel, InvalidLabel, YSpec, bilateral_parts, chi_n1_super,
                               chi_n2_general, chi_n2_level1, chi_virasoro, is_certified,
                               n1_epsilon_half_exponent)
from trical.pairs import gg_limit, outer_sum
from trical.qfunctions import Q, reciprocal_pochhammer, reciprocal_pochhammer_infinite
from trical.series import QSeries, equal_to_order, mul, series_sum

ORDER = 80  # q^20


def vir(p, pp, r, s):
    return CharacterLabel(VIRASORO_34, p, pp, 2 * r, 2 * s)


def n2(p, r2, s2, sector=SECTOR_A):
    return CharacterLabel(N2_LEVEL1_37, p, 1, r2, s2, sector)


def ising_fermionic(order):
    """sum_j q^(j^2/2) / (q)_j, written out directly."""
    terms = []
    j = 0
    while 2 * j * j <= order:
        terms.append(mul(QSeries.monomial(2 * j * j), reciprocal_pochhammer(Q, j, order), order))
        j += 1
    return series_sum(terms, order)


def test_virasoro_low_coefficients():
    chi = chi_virasoro(vir(3, 4, 1, 1), 40)
    assert chi[0] == 1
    assert chi[4] == 0


def test_ising_fermi_bose():
    chars = chi_virasoro(vir(3, 4, 1, 1), ORDER) + chi_virasoro(vir(3, 4, 2, 1), ORDER).shift(2)
    assert equal_to_order(chars, ising_fermionic(ORDER), ORDER) is True


def test_n1_matches_goellnitz_gordon():
    for nu in (2, 3):
        chi = chi_n1_super(CharacterLabel(N1_35, 2, 4 * nu, 2, 2 * (2 * nu - 1)), ORDER)
        assert equal_to_order(chi, gg_limit(nu, ORDER), ORDER) is True


def test_n1_constant_term():
    for p, pp in ((2, 8), (3, 5), (2, 12)):
        for r in range(1, p):
            for s in range(1, pp):
                assert chi_n1_super(CharacterLabel(N1_35, p, pp, 2 * r, 2 * s), 20)[0] == 1


def test_n1_epsilon_parity():
    assert n1_epsilon_half_exponent(2, 6) == 1   # r - s even: eps = 1/2
    assert n1_epsilon_half_exponent(2, 4) == 2   # r - s odd: eps = 1


def test_n2_characters_match_goellnitz_gordon_double_sum():
    nu = 2
    first = chi_n2_level1(n2(4 * nu, 1, 4 * nu + 1), YSpec(1, 2), ORDER)
    second = chi_n2_level1(n2(4 * nu, 3, 4 * nu - 1), YSpec(1, 2), ORDER)
    assert equal_to_order(first + second.shift(2), outer_sum("gg", ORDER, nu), ORDER) is True


def test_n2_characters_match_ising_double_sum():
    first = chi_n2_level1(n2(6, 1, 3), YSpec(1, 2), ORDER)
    second = chi_n2_level1(n2(6, 1, 3), YSpec(1, 6), ORDER)
    assert equal_to_order(first + second.shift(2), outer_sum("ising", ORDER), ORDER) is True


def test_n2_constant_term():
    assert chi_n2_level1(n2(6, 1, 3), YSpec(1, 2), 20)[0] == 1
    assert chi_n2_level1(n2(8, 1, 9), YSpec(1, 2), 20)[0] == 1


def test_n2_general_vacuum():
    label = CharacterLabel(N2_GENERAL_38, 5, 2, 1, 1)
    assert is_certified(label)
    chi = chi_n2_general(label, YSpec(1, 2), 40)
    assert chi[0] == 1
    # r = s makes the series invariant under y -> 1/y
    assert chi == chi_n2_general(label, YSpec(1, -2), 40)
    assert not is_certified(CharacterLabel(N2_GENERAL_38, 5, 2, 3, 3))


def test_singular_specialization_rejected():
    # y = -q^(1/2) sends 1 + q^(r)/y to zero at j = 0
    with pytest.raises(ZeroDivisionError):
        chi_n2_level1(n2(6, 1, 3), YSpec(-1, 2), 20)


@pytest.mark.parametrize("label", [
    vir(3, 3, 1, 1), vir(2, 4, 1, 1), vir(3, 4, 3, 1),
    CharacterLabel(N1_35, 2, 8, 1, 2),
    n2(6, 2, 2, SECTOR_A), n2(6, 2, 2, SECTOR_P), n2(6, 1, 3, None),
    CharacterLabel(N2_GENERAL_38, 4, 2, 1, 1),
    CharacterLabel("other", 3, 4, 2, 2),
])
def test_invalid_labels(label):
    with pytest.raises(InvalidLabel):
        label.validate()


def _parts_sum(part, order, margin):
    return prefactored_sum(lambda T: reciprocal_pochhammer_infinite(Q, T),
                           bilateral_parts(part, order, margin=margin), order)


def test_bilateral_truncation_is_sound():
    def theta(a, b, c):
        def part(j):
            return QSeries.monomial(a * j * j + b * j) - QSeries.monomial(a * j * j + c * j + a), QSeries.one()
        return part

    def n2_like(p):
        def part(j):
            num = QSeries.monomial(4 * p * j * j + 4 * j) - QSeries.monomial(4 * p * j * j + 4 * j + 8 * p * j + 8)
            return num, mul(QSeries({0: 1, 4 * p * j + 2: 1}), QSeries({0: 1, 4 * p * j + 6: 1}))
        return part

    parts = [theta(a, b, c) for a, b, c in ((24, 4, 20), (48, 8, 40), (8, 2, 6), (80, 8, 72), (40, 4, 36),
                                            (12, 2, 10), (60, 6, 50))]
    parts += [n2_like(p) for p in (3, 4, 6)]
    for part in parts:
        base = _parts_sum(part, 60, 1)
        assert base == _parts_sum(part, 60, 8)
