"""The concrete multisums, bosonic sums and trinomial Bailey pairs.

Three families are covered: the generalized Göllnitz-Gordon sums (index nu),
the Ising sums, and the half-base Rogers-Ramanujan sums. Each supplies its
fermionic side as a MultisumSpec, its alpha sequence as theta terms, and a
closed-form beta numerator.
"""

from __future__ import annotations

from functools import lru_cache
from math import isqrt

from .bailey import (CLOSED_FORM, AlphaSequence, ThetaTerm, TrinomialBaileyPair,
                     alpha_from_theta)
from .multisum import Affine, Binomial, MultisumSpec, fermionic_multisum
from .qfunctions import MINUS_ONE, Q, big_T, pochhammer_finite, reciprocal_pochhammer
from .series import QSeries, mul, series_sum


def _outer_prefactor(L: int, order: int) -> QSeries:
    """q^(L/2) (-1)_L / (q)_L through ``order``."""
    num = pochhammer_finite(MINUS_ONE, L).shift(2 * L)
    if 2 * L > order:
        return QSeries.zero(order)
    return mul(num, reciprocal_pochhammer(Q, L, order - 2 * L), order)


def _outer_valuation(L: int) -> int:
    return 2 * L


def series_box(order: int) -> int:
    """Box side that comfortably holds every term with a quadratic exponent <= order."""
    return isqrt(max(order, 0)) + 2


# -- generalized Göllnitz-Gordon ----------------------------------------------------

def _N(j: int, nu: int) -> Affine:
    return Affine.of(**{f"n{k}": 1 for k in range(j, nu + 1)})


def gg_spec(nu: int, kind: str = "poly") -> MultisumSpec:
    """Multisum of the nu-family.

    kind 'poly' has the L-dependent binomials (L a parameter), 'limit' has
    1/(q)_{n_i} in their place, 'outer' sums L with q^(L/2)(-1)_L/(q)_L.
    """
    if nu < 2:
        raise ValueError("nu must be at least 2")
    names = tuple(f"n{k}" for k in range(1, nu + 1))
    n1 = Affine.var("n1")
    quad = [(2, n1, n1), (-4, n1, _N(2, nu))]
    quad += [(4, _N(j, nu), _N(j, nu)) for j in range(2, nu + 1)]
    bins = [Binomial(_N(2, nu), n1)]
    recips = []
    for i in range(2, nu + 1):
        ni = Affine.var(f"n{i}")
        if kind == "limit":
            recips.append(ni)
            continue
        top = ni + Affine.of(L=1, n1=1)
        for j in range(2, i + 1):
            top = top + _N(j, nu).scaled(-2)
        bins.append(Binomial(top, ni))
    if kind == "limit":
        return MultisumSpec(names, tuple(quad), binomials=tuple(bins), reciprocals=tuple(recips))
    if kind == "poly":
        return MultisumSpec(names, tuple(quad), binomials=tuple(bins), parameters=("L",))
    return MultisumSpec(names, tuple(quad), binomials=tuple(bins), parameters=("L",),
                        outer="L", outer_prefactor=_outer_prefactor,
                        outer_valuation=_outer_valuation)


def gg_poly(nu: int, L: int, order: int | None = None) -> QSeries:
    """The nu-family multisum at fixed L, exact or through ``order``."""
    spec = gg_spec(nu, "poly")
    side = L if order is None else min(L, series_box(order))
    return fermionic_multisum(spec, {v: side for v in spec.variables}, order, {"L": L})


def gg_limit(nu: int, order: int) -> QSeries:
    spec = gg_spec(nu, "limit")
    return fermionic_multisum(spec, {v: series_box(order) for v in spec.variables}, order)


def gg_outer(nu: int, order: int) -> QSeries:
    spec = gg_spec(nu, "outer")
    bounds = {v: series_box(order) for v in spec.variables}
    bounds["L"] = order // 2 + 1
    return fermionic_multisum(spec, bounds, order)


def gg_theta(nu: int) -> tuple[ThetaTerm, ...]:
    """sum_j (-1)^j q^(nu j^2 + j/2) {T(L, 2 nu j) + T(L, 2 nu j + 1)}."""
    return (ThetaTerm(2 * nu, 0, 1, 4 * nu, 2, 0, True),
            ThetaTerm(2 * nu, 1, 1, 4 * nu, 2, 0, True))


# -- Ising ----------------------------------------------------------------------------

def ising_spec(kind: str = "poly") -> MultisumSpec:
    j = Affine.var("j")
    quad = ((2, j, j),)
    if kind == "poly":
        return MultisumSpec(("j",), quad, binomials=(Binomial(Affine.var("L"), j),), parameters=("L",))
    if kind == "limit":
        return MultisumSpec(("j",), quad, reciprocals=(j,))
    return MultisumSpec(("j",), quad, binomials=(Binomial(Affine.var("L"), j),), parameters=("L",),
                        outer="L", outer_prefactor=_outer_prefactor, outer_valuation=_outer_valuation)


def ising_poly(L: int, order: int | None = None) -> QSeries:
    side = L if order is None else min(L, series_box(2 * order))
    return fermionic_multisum(ising_spec("poly"), {"j": side}, order, {"L": L})


def ising_theta() -> tuple[ThetaTerm, ...]:
    """sum_j q^(6j^2+j) (T(6j) + T(6j+1)) - q^(6j^2+5j+1) (T(6j+2) + T(6j+3))."""
    return (ThetaTerm(6, 0, 1, 24, 4), ThetaTerm(6, 1, 1, 24, 4),
            ThetaTerm(6, 2, -1, 24, 20, 4), ThetaTerm(6, 3, -1, 24, 20, 4))


# -- half-base Rogers-Ramanujan ---------------------------------------------------------

def rr_spec(kind: str = "poly") -> MultisumSpec:
    j = Affine.var("j")
    quad = ((2, j, j),)
    b = (Binomial(Affine.of(L=1, j=1), j.scaled(2), base_quarters=2),)
    if kind == "poly":
        return MultisumSpec(("j",), quad, binomials=b, parameters=("L",))
    return MultisumSpec(("j",), quad, binomials=b, parameters=("L",), outer="L",
                        outer_prefactor=_outer_prefactor, outer_valuation=_outer_valuation)


def rr_poly(L: int, order: int | None = None) -> QSeries:
    side = L if order is None else min(L, series_box(2 * order))
    return fermionic_multisum(rr_spec("poly"), {"j": side}, order, {"L": L})


def rr_theta() -> tuple[ThetaTerm, ...]:
    """sum_j q^(20j^2+2j) (T(10j) + T(10j+1)) - q^(20j^2+18j+4) (T(10j+4) + T(10j+5))."""
    return (ThetaTerm(10, 0, 1, 80, 8), ThetaTerm(10, 1, 1, 80, 8),
            ThetaTerm(10, 4, -1, 80, 72, 16), ThetaTerm(10, 5, -1, 80, 72, 16))


def outer_sum(kind: str, order: int, nu: int = 2) -> QSeries:
    """sum_L q^(L/2) (-1)_L/(q)_L times the family's polynomial at L."""
    if kind == "gg":
        return gg_outer(nu, order)
    spec = ising_spec("outer") if kind == "ising" else rr_spec("outer")
    return fermionic_multisum(spec, {"j": series_box(2 * order), "L": order // 2 + 1}, order)


# -- theta sums of trinomials and the pairs -------------------------------------------------

def theta_trinomial_sum(terms: tuple[ThetaTerm, ...], L: int, n: int = 0,
                        drop_extreme: bool = False) -> QSeries:
    """sum_j c(j) T_n(L, period j + offset) over every j with a nonzero trinomial.

    ``drop_extreme`` leaves out the largest admissible j of the first term
    (an off-by-one in the j-range, used as a negative control).
    """
    out = []
    for k, t in enumerate(terms):
        js = [j for j in range(-(L + abs(t.offset)) // t.period - 1, (L + abs(t.offset)) // t.period + 2)
              if abs(t.period * j + t.offset) <= L]
        if drop_extreme and k == 0 and js:
            js = js[:-1]
        for j in js:
            out.append(big_T(n, L, t.period * j + t.offset).shift(t.exponent(j)) * t.coeff(j))
    return series_sum(out)


@lru_cache(maxsize=None)
def gg_pair(nu: int) -> TrinomialBaileyPair:
    alpha = alpha_from_theta(gg_theta(nu), 0, f"gg{nu}")
    return TrinomialBaileyPair(alpha, lru_cache(maxsize=None)(lambda L: gg_poly(nu, L)), 0,
                               CLOSED_FORM, 0, f"gg{nu}", lambda L, T: gg_poly(nu, L, T))


@lru_cache(maxsize=None)
def ising_pair() -> TrinomialBaileyPair:
    alpha = alpha_from_theta(ising_theta(), 0, "ising")
    return TrinomialBaileyPair(alpha, lru_cache(maxsize=None)(ising_poly), 0, CLOSED_FORM, 0,
                               "ising", ising_poly)


@lru_cache(maxsize=None)
def rr_pair() -> TrinomialBaileyPair:
    alpha = alpha_from_theta(rr_theta(), 0, "rr")
    return TrinomialBaileyPair(alpha, lru_cache(maxsize=None)(rr_poly), 0, CLOSED_FORM, 0,
                               "rr", rr_poly)


def pair_by_name(name: str) -> TrinomialBaileyPair:
    if name.startswith("gg"):
        return gg_pair(int(name[2:] or 2))
    if name == "ising":
        return ising_pair()
    if name == "rr":
        return rr_pair()
    raise KeyError(f"unknown pair {name!r}")


def alpha_of(name: str) -> AlphaSequence:
    return pair_by_name(name).alpha
