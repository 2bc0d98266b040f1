"""Exact checks of the T_n recurrences, shared by the unit and acceptance tests.

Each checker returns the list of (L, A, n) points where the identity fails.
"""

from trical.qfunctions import big_T
from trical.series import QSeries, divide_exact

NS = (-1, 0, 1, 2)
M = QSeries.monomial


def qpow(half: int) -> QSeries:
    """q^(half/2)."""
    return M(2 * half)


def q_minus_one(L: int) -> QSeries:
    return M(4 * L) - M(0)


def pascal(n, L, A):
    # needs L >= 2
    rhs = (big_T(n, L - 1, A - 1) + big_T(n, L - 1, A + 1)
           + qpow(2 * L - 1 - n) * big_T(n, L - 1, A)
           + q_minus_one(L - 1) * big_T(n, L - 2, A))
    return big_T(n, L, A) == rhs


def shift_two(n, L, A):
    return big_T(n, L, A) == big_T(n + 2, L, A) + q_minus_one(L) * qpow(-1 - n) * big_T(n, L - 1, A)


def raise_one(n, L, A):
    return qpow(L - A) * big_T(n + 1, L, A) == big_T(n, L, A) + q_minus_one(L) * big_T(n, L - 1, A + 1)


def difference(L, A):
    return (big_T(1, L, A) - big_T(1, L - 1, A)
            == qpow(L + A) * big_T(0, L - 1, A + 1) + qpow(L - A) * big_T(0, L - 1, A - 1))


def total(L, A):
    return (big_T(1, L, A) + big_T(1, L - 1, A)
            == big_T(-1, L - 1, A + 1) + big_T(-1, L - 1, A - 1) + 2 * big_T(-1, L - 1, A))


def combined(L, A, sign):
    """q^((L - sign A)/2) T_0 - T_1 = (q^L - 1){T_-1(L-1, A + sign) + T_-1(L-1, A)}."""
    lhs = qpow(L - sign * A) * big_T(0, L, A) - big_T(1, L, A)
    return lhs == q_minus_one(L) * (big_T(-1, L - 1, A + sign) + big_T(-1, L - 1, A))


def combined_printed(L, A):
    """The same relation with T_1 in the first bracket term."""
    lhs = qpow(L - A) * big_T(0, L, A) - big_T(1, L, A)
    return lhs == q_minus_one(L) * (big_T(1, L - 1, A + 1) + big_T(-1, L - 1, A))


def summed(L, A):
    lhs = qpow(L) * (qpow(A) + qpow(-A)) * big_T(0, L, A) - 2 * big_T(1, L, A)
    return lhs == q_minus_one(L) * (big_T(1, L, A) + big_T(1, L - 1, A))


def solved_for_t0(L, A):
    num = (M(0) + M(4 * L)) * big_T(1, L, A) - (M(0) - M(4 * L)) * big_T(1, L - 1, A)
    return big_T(0, L, A) == divide_exact(num, qpow(L) * (qpow(A) + qpow(-A)))


def failures(lmax: int = 20) -> dict[str, list]:
    """Every recurrence over 0 <= A <= L <= lmax (L >= 1 where L - 1 appears, L >= 2 for Pascal)."""
    bad: dict[str, list] = {k: [] for k in ("symmetry", "support", "pascal", "shift_two", "raise_one",
                                            "difference", "total", "combined_minus", "combined_plus",
                                            "summed", "solved_for_t0")}
    for L in range(lmax + 1):
        for A in range(L + 1):
            for n in NS:
                if big_T(n, L, A) != big_T(n, L, -A):
                    bad["symmetry"].append((L, A, n))
                for outside in (L + 1, L + 2, -L - 1):
                    if not big_T(n, L, outside).is_zero():
                        bad["support"].append((L, outside, n))
                if L >= 2 and not pascal(n, L, A):
                    bad["pascal"].append((L, A, n))
                if L >= 1 and not shift_two(n, L, A):
                    bad["shift_two"].append((L, A, n))
                if L >= 1 and not raise_one(n, L, A):
                    bad["raise_one"].append((L, A, n))
            if L < 1:
                continue
            for name, ok in (("difference", difference(L, A)), ("total", total(L, A)),
                             ("combined_minus", combined(L, A, 1)), ("combined_plus", combined(L, A, -1)),
                             ("summed", summed(L, A)), ("solved_for_t0", solved_for_t0(L, A))):
                if not ok:
                    bad[name].append((L, A))
    return bad
