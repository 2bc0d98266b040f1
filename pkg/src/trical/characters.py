"""Bosonic character formulas as truncated q-series.

Half-integer labels are stored doubled. The variable y is specialized to
sign * q^(quarters/4) before anything is expanded.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Callable

from .bailey import prefactored_sum
from .qfunctions import (Q, PochhammerBase, pochhammer_infinite,
                         reciprocal_pochhammer_infinite)
from .series import QSeries, mul, series_sum

VIRASORO_34 = "VIRASORO_34"
N1_35 = "N1_35"
N2_LEVEL1_37 = "N2_LEVEL1_37"
N2_GENERAL_38 = "N2_GENERAL_38"

SECTOR_A = "A"
SECTOR_P = "P"


class InvalidLabel(ValueError):
    pass


@dataclass(frozen=True)
class YSpec:
    """y = sign * q^(twice_h / 4), i.e. sign * q^(h/2)."""

    sign: int
    twice_h: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")


@dataclass(frozen=True)
class CharacterLabel:
    family: str
    p: int
    p_prime: int
    twice_r: int
    twice_s: int
    sector: str | None = None

    def validate(self) -> None:
        f, p, pp, r2, s2 = self.family, self.p, self.p_prime, self.twice_r, self.twice_s
        if f in (VIRASORO_34, N1_35):
            if r2 % 2 or s2 % 2:
                raise InvalidLabel("r and s must be integers")
            r, s = r2 // 2, s2 // 2
            if not (pp > p >= 2 and 1 <= r <= p - 1 and 1 <= s <= pp - 1):
                raise InvalidLabel(f"bad labels for {f}: {self}")
            if f == VIRASORO_34 and gcd(p, pp) != 1:
                raise InvalidLabel("p and p' must be coprime")
        elif f == N2_LEVEL1_37:
            if p < 2:
                raise InvalidLabel("p must be at least 2")
            if self.sector == SECTOR_A:
                ok = r2 % 2 == 1 and s2 % 2 == 1 and r2 > 0 and s2 > 0 and r2 + s2 <= 2 * (p - 1)
            elif self.sector == SECTOR_P:
                ok = r2 % 2 == 0 and s2 % 2 == 0 and r2 > 2 and s2 > 0 and r2 + s2 <= 2 * (p - 1)
            else:
                raise InvalidLabel("sector must be A or P")
            if not ok:
                raise InvalidLabel(f"labels outside the {self.sector} sector: {self}")
        elif f == N2_GENERAL_38:
            if not (p > pp >= 2 and gcd(p, pp) == 1):
                raise InvalidLabel("need p > p' >= 2 coprime")
            if r2 % 2 == 0 or s2 % 2 == 0 or r2 <= 0 or s2 <= 0:
                raise InvalidLabel("r and s must be positive half-integers")
        else:
            raise InvalidLabel(f"unknown family {f!r}")


def is_certified(label: CharacterLabel) -> bool:
    """Only the vacuum labels r = s = 1/2 of the general N=2 formula are established."""
    if label.family != N2_GENERAL_38:
        return True
    return label.twice_r == 1 and label.twice_s == 1


def bilateral_parts(part: Callable[[int], tuple[QSeries, QSeries]], order: int,
                    margin: int = 1) -> list[tuple[QSeries, QSeries]]:
    """Collect part(j) for every j in Z whose quotient can reach ``order``.

    Scans j = 0, 1, 2, ... and j = -1, -2, ... until the valuation of
    num/den exceeds order and is increasing, then takes ``margin`` more.
    """
    out = []

    def val(nd):
        n, d = nd
        if n.is_zero():
            return None
        return n.min_exp - d.min_exp

    for step in (1, -1):
        j = 0 if step == 1 else -1
        prev = None
        extra = margin
        while True:
            nd = part(j)
            v = val(nd)
            if v is not None and v <= order:
                out.append(nd)
            elif v is not None and prev is not None and v > prev:
                if extra == 0:
                    break
                out.append(nd)
                extra -= 1
            prev = v if v is not None else prev
            j += step
            if abs(j) > 10 * (order + 10):
                raise RuntimeError("bilateral sum does not decay")
    return out


def _mono(quarters: int, coeff: int = 1) -> QSeries:
    return QSeries.monomial(quarters, coeff)


def _theta_difference(e1: Callable[[int], int], e2: Callable[[int], int], order: int) -> QSeries:
    """sum_j q^(e1(j)/4) - q^(e2(j)/4), each exponent in quarters."""
    parts = bilateral_parts(lambda j: (_mono(e1(j)) - _mono(e2(j)), QSeries.one()), order)
    return series_sum((n.truncate(order) for n, _ in parts), order)


def chi_virasoro(label: CharacterLabel, order: int) -> QSeries:
    label.validate()
    if label.family != VIRASORO_34:
        raise InvalidLabel("expected a Virasoro label")
    p, pp, r, s = label.p, label.p_prime, label.twice_r // 2, label.twice_s // 2
    theta = _theta_difference(lambda j: 4 * j * (j * p * pp + r * pp - s * p),
                              lambda j: 4 * (j * p + r) * (j * pp + s), order)
    return mul(theta, reciprocal_pochhammer_infinite(Q, order), order)


def n1_epsilon_half_exponent(twice_r: int, twice_s: int) -> int:
    """2*eps for the product (-q^eps)_inf: eps = 1/2 for even r-s, 1 for odd."""
    return 1 if ((twice_r - twice_s) // 2) % 2 == 0 else 2


def chi_n1_super(label: CharacterLabel, order: int) -> QSeries:
    label.validate()
    if label.family != N1_35:
        raise InvalidLabel("expected an N=1 label")
    p, pp, r, s = label.p, label.p_prime, label.twice_r // 2, label.twice_s // 2
    theta = _theta_difference(lambda j: 2 * j * (j * p * pp + r * pp - s * p),
                              lambda j: 2 * (j * p + r) * (j * pp + s), order)
    eps = n1_epsilon_half_exponent(label.twice_r, label.twice_s)
    pre = mul(pochhammer_infinite(PochhammerBase(-1, eps), order),
              reciprocal_pochhammer_infinite(Q, order), order)
    return mul(theta, pre, order)


def _one_plus(sign: int, quarters: int) -> QSeries:
    if quarters == 0:
        if sign == -1:
            raise ZeroDivisionError("specialization makes a denominator vanish")
        return QSeries.monomial(0, 2)
    return QSeries({0: 1, quarters: sign})


def _n2_prefactor(twice_eps: int, y: YSpec) -> Callable[[int], QSeries]:
    """(-q^eps y)_inf (-q^eps / y)_inf / (q)_inf^2 with y specialized."""
    if y.twice_h % 2:
        raise ValueError("y must be a half-integer power of q for these products")
    h2 = y.twice_h // 2
    b1 = PochhammerBase(-y.sign, twice_eps + h2)
    b2 = PochhammerBase(-y.sign, twice_eps - h2)

    def build(order: int) -> QSeries:
        inv = reciprocal_pochhammer_infinite(Q, order)
        top = mul(pochhammer_infinite(b1, order), pochhammer_infinite(b2, order), order)
        return mul(mul(top, inv, order), inv, order)

    return build


def _n2_series(twice_eps: int, y: YSpec, exponent: Callable[[int], int], p: int,
               twice_r: int, twice_s: int, order: int) -> QSeries:
    """Prefactor times sum_j q^(exponent(j)/4) (1 - q^(2pj+r+s)) / ((1 + q^(pj+r)/y)(1 + y q^(pj+s)))."""

    def part(j: int):
        e = exponent(j)
        num = _mono(e) - _mono(e + 8 * p * j + 2 * (twice_r + twice_s))
        d1 = _one_plus(y.sign, 4 * p * j + 2 * twice_r - y.twice_h)
        d2 = _one_plus(y.sign, 4 * p * j + 2 * twice_s + y.twice_h)
        return num, mul(d1, d2)

    return prefactored_sum(_n2_prefactor(twice_eps, y), bilateral_parts(part, order), order)


def chi_n2_level1(label: CharacterLabel, y: YSpec, order: int) -> QSeries:
    label.validate()
    if label.family != N2_LEVEL1_37:
        raise InvalidLabel("expected an N=2 level-one label")
    p, r2, s2 = label.p, label.twice_r, label.twice_s
    twice_eps = 1 if label.sector == SECTOR_A else 2
    return _n2_series(twice_eps, y, lambda j: 4 * j * j * p + 2 * j * (r2 + s2),
                      p, r2, s2, order)


def chi_n2_general(label: CharacterLabel, y: YSpec, order: int) -> QSeries:
    """The vacuum-type formula; see ``is_certified`` for which labels it is established for."""
    label.validate()
    if label.family != N2_GENERAL_38:
        raise InvalidLabel("expected a general N=2 label")
    p, pp, r2, s2 = label.p, label.p_prime, label.twice_r, label.twice_s
    return _n2_series(1, y, lambda j: 4 * j * j * p * pp + 2 * j * (r2 + s2) * pp,
                      p, r2, s2, order)
