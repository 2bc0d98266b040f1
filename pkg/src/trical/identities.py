"""Side builders for the remaining named identities.

Covers the Rogers-Ramanujan material (bosonic products, binomial and
trinomial polynomial analogues), the M(p, p+1) multisum conjecture, the
q-Pfaff-Saalschütz sum, and the bilateral sums that the infinite trinomial
Bailey lemma produces from a theta-type alpha sequence.
"""

from __future__ import annotations

from .bailey import ThetaTerm, prefactored_sum, theorem2_prefactor
from .characters import bilateral_parts
from .multisum import Affine, Binomial, MultisumSpec, fermionic_multisum
from .pairs import _outer_prefactor, _outer_valuation, series_box
from .qfunctions import (MINUS_ONE, Q, PochhammerBase, pochhammer_finite,
                         pochhammer_infinite, q_binomial, reciprocal_pochhammer_infinite,
                         trinomial_round)
from .series import QSeries, divide, mul, series_sum


def _binom1(quarters: int, sign: int = 1) -> QSeries:
    if quarters == 0:
        return QSeries.monomial(0, 1 + sign)
    return QSeries({0: 1, quarters: sign})


def _theta_parts(t: ThetaTerm, part):
    """part(r, exponent, coeff) for r = period*j + offset, as a function of j."""
    return lambda j: part(t.period * j + t.offset, t.exponent(j), t.coeff(j))


def theorem2_bilateral(terms: tuple[ThetaTerm, ...], order: int) -> QSeries:
    """(-1)_inf(-q)_inf/(q)_inf^2 * sum_j c(j) q^(theta(j)) q^(r/2)/(1+q^r), r = period j + offset.

    This is the middle expression the infinite Bailey lemma produces from a theta-type alpha,
    summed over j in Z directly rather than over r >= 0.
    """
    parts = []
    for t in terms:
        def part(r, e, c):
            return QSeries.monomial(e + 2 * r, c), _binom1(4 * r)
        parts += bilateral_parts(_theta_parts(t, part), order)
    return prefactored_sum(theorem2_prefactor, parts, order)


def theta_limit(terms: tuple[ThetaTerm, ...], order: int) -> QSeries:
    """(-q^(1/2))_inf/(q)_inf * sum_j c(j) q^(theta(j)), one theta term per trinomial pair.

    ``terms`` come in pairs (offset, offset + 1) sharing a coefficient, and
    T_0(L,A) + T_0(L,A+1) tends to (-q^(1/2))_inf/(q)_inf.
    """
    parts = []
    for t in terms[::2]:
        parts += bilateral_parts(lambda j, t=t: (QSeries.monomial(t.exponent(j), t.coeff(j)),
                                                 QSeries.one()), order)

    def pre(T: int) -> QSeries:
        return mul(pochhammer_infinite(PochhammerBase(-1, 1), T), reciprocal_pochhammer_infinite(Q, T), T)

    return prefactored_sum(pre, parts, order)


# -- Rogers-Ramanujan ---------------------------------------------------------------------

def rr_product_sum(a: int, order: int) -> QSeries:
    """sum_j q^(j(j+a)) / (q)_j."""
    j = Affine.var("j")
    spec = MultisumSpec(("j",), ((4, j, j),), linear=Affine.of(j=4 * a), reciprocals=(j,))
    return fermionic_multisum(spec, {"j": series_box(order)}, order)


def rr_bosonic(a: int, order: int) -> QSeries:
    """(1/(q)_inf) sum_j q^(j(10j+1+2a)) - q^((2j+1)(5j+2-a))."""
    def part(j):
        return (QSeries.monomial(4 * j * (10 * j + 1 + 2 * a))
                - QSeries.monomial(4 * (2 * j + 1) * (5 * j + 2 - a)), QSeries.one())
    return prefactored_sum(lambda T: reciprocal_pochhammer_infinite(Q, T),
                           bilateral_parts(part, order), order)


def rr_binomial_lhs(a: int, L: int) -> QSeries:
    """sum_j q^(j(j+a)) [2L-j-a; j]."""
    return series_sum(q_binomial(2 * L - j - a, j).shift(4 * j * (j + a)) for j in range(L + 1))


def rr_binomial_rhs(a: int, L: int, drop_extreme: bool = False) -> QSeries:
    """sum_j q^(j(10j+1+2a)) [2L; L-5j-a] - q^((2j+1)(5j+2-a)) [2L; L-5j-2]."""
    def live(j):
        return 0 <= L - 5 * j - a <= 2 * L or 0 <= L - 5 * j - 2 <= 2 * L

    js = [j for j in range(-(L // 5) - 2, L // 5 + 2) if live(j)]
    if drop_extreme:
        js = js[:-1]
    out = []
    for j in js:
        out.append(q_binomial(2 * L, L - 5 * j - a).shift(4 * j * (10 * j + 1 + 2 * a)))
        out.append(-q_binomial(2 * L, L - 5 * j - 2).shift(4 * (2 * j + 1) * (5 * j + 2 - a)))
    return series_sum(out)


# (coefficient sign, quadratic, linear, constant in q-powers, A = 10j + offset)
_RR_TRINOMIAL_TERMS = ((1, 60, -4, 0, 0), (-1, 60, 44, 8, 4), (1, 60, 16, 1, 1), (-1, 60, 64, 17, 5))


def rr_trinomial_rhs(L: int, drop_extreme: bool = False) -> QSeries:
    """The q^2-based round-bracket trinomial side of the a = 0 polynomial identity.

    ``drop_extreme`` leaves out the largest admissible j of the first term.
    """
    out = []
    for k, (sign, qd, ln, c, off) in enumerate(_RR_TRINOMIAL_TERMS):
        js = [j for j in range(-(L + off) // 10 - 1, (L - off) // 10 + 2) if abs(10 * j + off) <= L]
        if drop_extreme and k == 0:
            js = js[:-1]
        for j in js:
            A = 10 * j + off
            out.append(trinomial_round(L, 2 * A, A, base_quarters=8).shift(4 * (qd * j * j + ln * j + c)) * sign)
    return series_sum(out)


def half_base_transform(p: QSeries, L: int) -> QSeries:
    """q -> 1/sqrt(q), then multiply by q^(L^2/2)."""
    return p.substitute_power(-1, 2).shift(2 * L * L)


# -- M(p, p+1) multisums ---------------------------------------------------------------------

def flow_spec(p: int) -> MultisumSpec:
    """The L, m_1..m_(p-2) multisum; q^(L/2)(-1)_L/(q)_L sits in the outer prefactor.

    Exponent in quarters: 2 m1^2 + m1 m2 + sum_{i>=2} m_i (2 m_i - m_(i-1) - m_(i+1)),
    m_(p-1) = 0. Binomials with a half-integer top are excluded by a parity
    constraint on m_(i-1) + m_(i+1).
    """
    if p < 3 or p % 2 == 0:
        raise ValueError("p must be odd and at least 3")
    names = tuple(f"m{i}" for i in range(1, p - 1))

    def m(i: int) -> Affine:
        return Affine.var(f"m{i}") if 1 <= i <= p - 2 else Affine()

    quad = [(2, m(1), m(1))]
    if p > 3:
        quad.append((1, m(1), m(2)))
    bins = [Binomial(Affine.var("L"), m(1))]
    parity = []
    for i in range(2, p - 1):
        quad.append((2, m(i), m(i)))
        quad.append((-1, m(i), m(i - 1)))
        if i + 1 <= p - 2:
            quad.append((-1, m(i), m(i + 1)))
        s = m(i - 1) + m(i + 1)
        parity.append(s)
        bins.append(Binomial(Affine(s.terms, s.const, 2), m(i)))
    return MultisumSpec(names, tuple(quad), binomials=tuple(bins), parity=tuple(parity),
                        parameters=("L",), outer="L", outer_prefactor=_outer_prefactor,
                        outer_valuation=_outer_valuation)


def flow_lhs(p: int, order: int) -> QSeries:
    spec = flow_spec(p)
    bounds = {v: 2 * series_box(order) for v in spec.variables}
    bounds["L"] = order // 2 + 1
    return fermionic_multisum(spec, bounds, order)


def flow_rhs(p: int, order: int, raw_prefactor: bool = False) -> QSeries:
    """q * P * sum_j q^(j^2 p(p-1) + j(p-1)) (1 - q^(4pj+2)) / ((1+q^(2pj))(1+q^(2pj+2))).

    P is (-1)_inf(-q)_inf/(q)_inf^2; ``raw_prefactor`` uses (-1)_inf(q)_inf/(q)_inf^2
    instead, i.e. the product with (q)_inf in the numerator taken literally.
    """
    def part(j):
        e = 4 * (j * j * p * (p - 1) + j * (p - 1)) + 4
        num = QSeries.monomial(e) - QSeries.monomial(e + 4 * (4 * p * j + 2))
        return num, mul(_binom1(8 * p * j), _binom1(8 * p * j + 8))

    def raw(T: int) -> QSeries:
        return mul(pochhammer_infinite(MINUS_ONE, T), reciprocal_pochhammer_infinite(Q, T), T)

    return prefactored_sum(raw if raw_prefactor else theorem2_prefactor, bilateral_parts(part, order), order)


# -- q-Pfaff-Saalschütz ---------------------------------------------------------------------

def saalschutz_admissible(n: int, A: int, B: int, C: int) -> bool:
    """No factor of (c q^(1-n)/ab)_j or (ab/c)_n vanishes for a, b, c = q^A, q^B, q^C."""
    return n == 0 or not (A + B <= C <= A + B + n - 1)


def _qb(k: int) -> PochhammerBase:
    return PochhammerBase(1, 2 * k)


def saalschutz_sides(n: int, A: int, B: int, C: int, order: int,
                     corrupt: bool = False) -> tuple[QSeries, QSeries]:
    """Both sides of the terminating balanced sum with a, b, c = q^A, q^B, q^C, through order."""
    if not saalschutz_admissible(n, A, B, C) or min(A, B, C) < 1:
        raise ZeroDivisionError("a denominator factor vanishes for these parameters")
    lhs = []
    for j in range(n + 1):
        num = QSeries.monomial(4 * j)
        for b in (_qb(-n), _qb(C - A), _qb(C - B)):
            num = mul(num, pochhammer_finite(b, j))
        if num.is_zero():
            continue
        den = QSeries.one()
        for b in (Q, _qb(C), _qb(C + 1 - n - A - B)):
            den = mul(den, pochhammer_finite(b, j))
        lhs.append(divide(num, den, order))
    top = mul(pochhammer_finite(_qb(A), n), pochhammer_finite(_qb(B), n))
    if corrupt:
        top = mul(top, pochhammer_finite(_qb(A + 1), 1))
    den = mul(pochhammer_finite(_qb(C), n), pochhammer_finite(_qb(A + B - C), n))
    return series_sum(lhs, order), divide(top, den, order)

