"""Pochhammer symbols, q-binomials and q-trinomial coefficients.

Half-integer parameters are passed as twice their value. Every polynomial
returned here is an exact :class:`QSeries` in quarter-grain exponents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .series import EXACT, QSeries, invert_unit, mul, series_sum


class _Infinite:
    """Value of (a)_n for n < 0; callers want reciprocal_pochhammer instead."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITE"


INFINITE = _Infinite()


@dataclass(frozen=True)
class PochhammerBase:
    """The base a = sign * q^(half_exponent / 2)."""

    sign: int
    half_exponent: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def factor_quarters(self, i: int) -> int:
        """Exponent (quarters) of a*q^i."""
        return 2 * self.half_exponent + 4 * i

    def times_q(self, k: int = 1) -> "PochhammerBase":
        return PochhammerBase(self.sign, self.half_exponent + 2 * k)


def base(sign: int, half_exponent: int) -> PochhammerBase:
    return PochhammerBase(sign, half_exponent)


Q = PochhammerBase(1, 2)          # (q)_n
MINUS_ONE = PochhammerBase(-1, 0)  # (-1)_n
MINUS_Q = PochhammerBase(-1, 2)    # (-q)_n


def _factor(b: PochhammerBase, i: int) -> QSeries:
    e = b.factor_quarters(i)
    if e == 0:
        return QSeries.monomial(0, 1 - b.sign)
    return QSeries._raw({0: 1, e: -b.sign}, EXACT)


def _times_binomial(c: dict[int, int], coeff: int, e: int) -> dict[int, int]:
    """c * (1 + coeff * x^e) on raw coefficient maps."""
    out = dict(c)
    for k, v in c.items():
        out[k + e] = out.get(k + e, 0) + coeff * v
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def pochhammer_finite(b: PochhammerBase, n: int):
    """(a)_n = prod_{i<n} (1 - a q^i); INFINITE for n < 0."""
    if n < 0:
        return INFINITE
    if n == 0:
        return QSeries.one()
    prev = pochhammer_finite(b, n - 1)
    e = b.factor_quarters(n - 1)
    if e == 0:
        return prev * (1 - b.sign)
    return QSeries._raw(_times_binomial(prev._c, -b.sign, e), EXACT)


def reciprocal_pochhammer(b: PochhammerBase, n: int, order: int) -> QSeries:
    """1/(a)_n through ``order`` quarters, with 1/(a)_n = 0 for n < 0."""
    if n < 0:
        return QSeries.zero()
    if n == 0:
        return QSeries.one()
    return _reciprocal_cached(b, n, order)


@lru_cache(maxsize=4096)
def _reciprocal_cached(b: PochhammerBase, n: int, order: int) -> QSeries:
    p = pochhammer_finite(b, n)
    if p.is_zero():
        raise ZeroDivisionError(f"({b}) has a vanishing factor")
    return invert_unit(p, order)


def _infinite_factors(b: PochhammerBase, order: int) -> list[int]:
    """Indices i whose factors can touch coefficients <= order."""
    i = 0
    val = 0
    while b.factor_quarters(i) < 0:
        val += b.factor_quarters(i)
        i += 1
    limit = order - val
    idx = []
    i = 0
    while b.factor_quarters(i) <= limit:
        idx.append(i)
        i += 1
    return idx


@lru_cache(maxsize=1024)
def pochhammer_infinite(b: PochhammerBase, order: int) -> QSeries:
    """(a)_infinity truncated at ``order`` quarters."""
    if b.sign == 1 and b.half_exponent <= 0 and b.half_exponent % 2 == 0:
        raise ValueError(f"(a)_inf for a = q^({b.half_exponent}/2) contains the factor (1 - 1)")
    acc = QSeries.one()
    for i in _infinite_factors(b, order):
        acc = mul(acc, _factor(b, i), order)
    return acc.truncate(order)


def reciprocal_pochhammer_infinite(b: PochhammerBase, order: int) -> QSeries:
    return invert_unit(pochhammer_infinite(b, order), order)


# -- binomials --------------------------------------------------------------

@lru_cache(maxsize=None)
def _binomial_dense(a: int, b: int) -> tuple[int, ...]:
    """Coefficient list (in powers of q) of the Gaussian binomial [a, b]."""
    b = min(b, a - b)
    if b == 0:
        return (1,)
    prev = list(_binomial_dense(a - 1, b - 1))
    # [a, b] = [a-1, b-1] * (1 - q^a) / (1 - q^b)
    num = prev + [0] * a
    for k in range(len(prev) - 1, -1, -1):
        num[k + a] -= prev[k]
    deg = b * (a - b)
    out = [0] * (deg + 1)
    for k in range(deg + 1):
        out[k] = num[k] + (out[k - b] if k >= b else 0)
    return tuple(out)


@lru_cache(maxsize=None)
def q_binomial(A: int, B: int) -> QSeries:
    """Gaussian polynomial (q)_A / ((q)_B (q)_{A-B}); zero outside 0 <= B <= A."""
    if B < 0 or B > A:
        return QSeries.zero()
    return QSeries._raw({4 * k: v for k, v in enumerate(_binomial_dense(A, B)) if v}, EXACT)


def q_binomial_in(A: int, B: int, base_quarters: int) -> QSeries:
    """The Gaussian polynomial with q replaced by q^(base_quarters/4)."""
    p = q_binomial(A, B)
    return p if base_quarters == 4 else p.substitute_power(base_quarters, 4)


@lru_cache(maxsize=None)
def multinomial(L: int, j: int, k: int) -> QSeries:
    """(q)_L / ((q)_j (q)_k (q)_{L-j-k}), zero when any index is negative."""
    if j < 0 or k < 0 or L - j - k < 0:
        return QSeries.zero()
    if j > k:
        j, k = k, j
    return mul(q_binomial(L, j), q_binomial(L - j, k))


# -- trinomials -------------------------------------------------------------

def classical_trinomial(L: int, A: int) -> int:
    """Coefficient of x^A in (x + 1 + 1/x)^L."""
    A = abs(A)
    if A > L:
        return 0
    f = math.factorial
    return sum(f(L) // (f(j) * f(j + A) * f(L - 2 * j - A)) for j in range((L - A) // 2 + 1))


def trinomial_round(L: int, twice_B: int, A: int, base_quarters: int = 4) -> QSeries:
    """Round-bracket q-trinomial (L; B; z choose A)_2 with z = q^(base_quarters/4).

    sum_j z^{j(j+B)} (z)_L / ((z)_j (z)_{j+A} (z)_{L-2j-A}), using
    1/(z)_n = 0 for n < 0. B is passed doubled.
    """
    if L < 0:
        raise ValueError("L must be nonnegative")
    terms = []
    for j in range(max(0, -A), (L - A) // 2 + 1):
        poly = multinomial(L, j, j + A)
        if poly.is_zero():
            continue
        num = base_quarters * (2 * j * j + j * twice_B)
        if num % 2:
            raise ValueError("exponent leaves the quarter grain")
        if base_quarters != 4:
            poly = poly.substitute_power(base_quarters, 4)
        terms.append(poly.shift(num // 2))
    return series_sum(terms)


@lru_cache(maxsize=None)
def big_T(n: int, L: int, A: int) -> QSeries:
    """T_n(L, A) = q^{(L(L-n) - A(A-n))/2} (L; A-n; 1/q choose A)_2.

    Negative A goes through the symmetry T_n(L, A) = T_n(L, -A).
    """
    if L < 0:
        raise ValueError("L must be nonnegative")
    A = abs(A)
    if A > L:
        return QSeries.zero()
    prefactor = 2 * (L - A) * (L + A - n)
    return trinomial_round(L, 2 * (A - n), A, base_quarters=-4).shift(prefactor)


def limit_series(kind: str, order: int) -> QSeries:
    """(-q)_inf/(q)_inf for 'T1_limit', (-q^(1/2))_inf/(q)_inf for 'T0_pair_limit'."""
    if kind == "T1_limit":
        top = pochhammer_infinite(MINUS_Q, order)
    elif kind == "T0_pair_limit":
        top = pochhammer_infinite(PochhammerBase(-1, 1), order)
    else:
        raise ValueError(f"unknown limit series {kind!r}")
    return mul(top, reciprocal_pochhammer_infinite(Q, order), order)

