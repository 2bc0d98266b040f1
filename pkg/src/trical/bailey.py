"""Classical and trinomial Bailey machinery.

A trinomial Bailey pair relative to a in {0, 1} is a pair of sequences with
beta(L) = sum_{r<=L} alpha(r) T_a(L, r) / (q)_L. Betas are carried as the
exact numerator ``(q)_L * beta(L)``; the division by (q)_L happens at the
order a check needs. Every ``verify_*`` function returns a
VerificationReport and never raises on a mismatch.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator

from .qfunctions import (MINUS_ONE, MINUS_Q, Q, PochhammerBase, big_T,
                         pochhammer_finite, pochhammer_infinite,
                         reciprocal_pochhammer, reciprocal_pochhammer_infinite)
from .series import (Mismatch, QSeries, divide, equal_to_order,
                     first_mismatch_exact, mul, series_sum)

PASS = "PASS"
FAIL = "FAIL"
SKIP = "SKIP"

FROM_ALPHA = "FROM_ALPHA"
CLOSED_FORM = "CLOSED_FORM"


@dataclass(frozen=True)
class VerificationReport:
    status: str
    scope: dict
    mismatch: Mismatch | None = None
    detail: str = ""

    def __post_init__(self):
        if self.status == FAIL and self.mismatch is None:
            raise ValueError("a FAIL report needs a mismatch")

    @property
    def passed(self) -> bool:
        return self.status == PASS


def _report(result, scope: dict, detail: str = "") -> VerificationReport:
    if result is True or result is None:
        return VerificationReport(PASS, scope, None, detail)
    return VerificationReport(FAIL, scope, result, detail)


def compare_series(lhs: QSeries, rhs: QSeries, order: int, scope: dict) -> VerificationReport:
    return _report(equal_to_order(lhs, rhs, order), scope)


def compare_exact(lhs: QSeries, rhs: QSeries, scope: dict) -> VerificationReport:
    return _report(first_mismatch_exact(lhs, rhs), scope)


# -- alpha sequences ------------------------------------------------------------

@dataclass(frozen=True)
class AlphaSequence:
    """alpha(r) for r >= 0 as exact Laurent polynomials.

    ``decay_floor(r)`` must bound from below the lowest exponent (quarters)
    of alpha(r') for every r' >= r; it is what lets infinite sums over r stop.
    Bounded sequences compute it from their values.
    """

    generator: Callable[[int], QSeries]
    a: int = 0
    support_bound: int | None = None
    decay_floor: Callable[[int], int] | None = None
    label: str = ""

    def __call__(self, r: int) -> QSeries:
        if r < 0 or (self.support_bound is not None and r > self.support_bound):
            return QSeries.zero()
        return self.generator(r)

    def floor(self, r: int = 0) -> int | None:
        """Lower bound on the exponents of alpha(r') for r' >= r (None if all zero)."""
        if self.support_bound is not None:
            vals = [self(k).min_exp for k in range(r, self.support_bound + 1)]
            vals = [v for v in vals if v is not None]
            return min(vals) if vals else None
        if self.decay_floor is None:
            raise ValueError("an unbounded alpha sequence needs a decay floor")
        return self.decay_floor(r)

    def indices(self, order: int, weight: Callable[[int], int]) -> Iterator[int]:
        """r whose term alpha(r) * w_r can reach exponents <= order.

        ``weight(r)`` is a lower bound for the valuation of the factor
        multiplying alpha(r); floor(r) + weight(r) must be nondecreasing.
        """
        r = 0
        while True:
            if self.support_bound is not None and r > self.support_bound:
                return
            f = self.floor(r)
            if f is None or f + weight(r) > order:
                return
            v = self(r).min_exp
            if v is not None and v + weight(r) <= order:
                yield r
            r += 1

    def corrupted(self, r: int, delta: QSeries) -> "AlphaSequence":
        """Copy with alpha(r) replaced by alpha(r) + delta (for negative controls)."""
        gen = self.generator
        support = self.support_bound
        if support is not None:
            support = max(support, r)

        def g(k):
            base = gen(k) if self.support_bound is None or k <= self.support_bound else QSeries.zero()
            return base + delta if k == r else base

        floor = None
        if self.decay_floor is not None:
            df = self.decay_floor
            dv = delta.min_exp
            floor = (lambda k: min(df(k), dv)) if dv is not None else df
        return AlphaSequence(g, self.a, support, floor, self.label + "*")


def alpha_from_list(values: list[QSeries], a: int = 0, label: str = "") -> AlphaSequence:
    vals = tuple(values)
    return AlphaSequence(lambda r: vals[r] if r < len(vals) else QSeries.zero(),
                         a, len(vals) - 1, None, label)


def unit_alpha(a: int = 0) -> AlphaSequence:
    """alpha(0) = 1 and alpha(r) = 0 otherwise."""
    return alpha_from_list([QSeries.one()], a, "unit")


@dataclass(frozen=True)
class ThetaTerm:
    """sign * (-1)^(j if alternating) * q^((quad j^2 + lin j + const)/4) at r = |period j + offset|."""

    period: int
    offset: int
    sign: int
    quad: int
    lin: int
    const: int = 0
    alternating: bool = False

    def coeff(self, j: int) -> int:
        return -self.sign if self.alternating and j % 2 else self.sign

    def exponent(self, j: int) -> int:
        return self.quad * j * j + self.lin * j + self.const


def alpha_from_theta(terms: tuple[ThetaTerm, ...], a: int = 0, label: str = "") -> AlphaSequence:
    """alpha read off a bilateral sum  sum_j c(j) T_a(L, period*j + offset).

    T_a(L, -A) = T_a(L, A), so the term for j lands on r = |period*j + offset|.
    """

    @lru_cache(maxsize=None)
    def gen(r: int) -> QSeries:
        acc = {}
        for t in terms:
            for target in {r, -r}:
                j, rem = divmod(target - t.offset, t.period)
                if rem:
                    continue
                e = t.exponent(j)
                acc[e] = acc.get(e, 0) + t.coeff(j)
        return QSeries({e: v for e, v in acc.items() if v})

    def floor(r: int) -> int:
        best = None
        for t in terms:
            # j with |period j + offset| >= r: j >= hi or j <= lo
            hi = -((-(r - t.offset)) // t.period)
            lo = (-r - t.offset) // t.period
            cands = [hi, lo]
            vertex = -t.lin / (2 * t.quad)
            for v in (int(vertex), int(vertex) + 1, int(vertex) - 1):
                if v >= hi or v <= lo:
                    cands.append(v)
            for j in cands:
                e = t.exponent(j)
                best = e if best is None else min(best, e)
        return best

    return AlphaSequence(gen, a, None, floor, label)


# -- trinomial Bailey pairs -------------------------------------------------------

@dataclass(frozen=True)
class TrinomialBaileyPair:
    """beta(L) = beta_numerator(L) / (q)_L.

    ``numerator_floor`` bounds the lowest exponent of beta_numerator(L) over
    all L from below; it lets infinite L-sums stop. ``truncated_numerator``
    optionally gives the numerator through a given order more cheaply than
    the exact polynomial.
    """

    alpha: AlphaSequence
    beta_numerator: Callable[[int], QSeries]
    a: int
    provenance: str = FROM_ALPHA
    numerator_floor: int = 0
    label: str = ""
    truncated_numerator: Callable[[int, int], QSeries] | None = None

    def numerator_to(self, L: int, order: int) -> QSeries:
        if self.truncated_numerator is not None:
            return self.truncated_numerator(L, order)
        return self.beta_numerator(L).truncate(order)

    def beta(self, L: int, order: int) -> QSeries:
        return mul(self.numerator_to(L, order), reciprocal_pochhammer(Q, L, order), order)

    def with_alpha(self, alpha: AlphaSequence) -> "TrinomialBaileyPair":
        return TrinomialBaileyPair(alpha, self.beta_numerator, self.a, self.provenance,
                                   min(self.numerator_floor, alpha.floor(0) or 0), self.label + "*",
                                   self.truncated_numerator)

    def with_beta(self, numerator: Callable[[int], QSeries]) -> "TrinomialBaileyPair":
        return TrinomialBaileyPair(self.alpha, numerator, self.a, self.provenance,
                                   self.numerator_floor, self.label + "*")


def trinomial_numerator(alpha: AlphaSequence, L: int) -> QSeries:
    """sum_{r<=L} alpha(r) T_a(L, r), i.e. (q)_L times the paired beta."""
    return series_sum(mul(alpha(r), big_T(alpha.a, L, r)) for r in range(L + 1))


def beta_from_alpha_trinomial(alpha: AlphaSequence, L: int, order: int) -> QSeries:
    if L < 0:
        raise ValueError("L must be nonnegative")
    return mul(trinomial_numerator(alpha, L), reciprocal_pochhammer(Q, L, order), order)


def pair_from_alpha(alpha: AlphaSequence, label: str = "") -> TrinomialBaileyPair:
    cached = lru_cache(maxsize=None)(lambda L: trinomial_numerator(alpha, L))
    floor = alpha.floor(0)
    # T_0 and T_1 have no negative powers of q
    return TrinomialBaileyPair(alpha, cached, alpha.a, FROM_ALPHA,
                               min(0, floor) if floor is not None else 0, label or alpha.label)


def verify_pair_relation(pair: TrinomialBaileyPair, L: int) -> VerificationReport:
    """Exact check of the defining relation at one L (numerators compared)."""
    return compare_exact(pair.beta_numerator(L), trinomial_numerator(pair.alpha, L),
                         {"pair": pair.label, "L": L})


def phi(L: int, order: int) -> QSeries:
    """q^(L/2) (-1)_L / (q)_L through ``order``."""
    if L < 0:
        raise ValueError("L must be nonnegative")
    num = pochhammer_finite(MINUS_ONE, L).shift(2 * L)
    return mul(num, reciprocal_pochhammer(Q, L, order), order)


# -- helpers --------------------------------------------------------------------

def _binom1(e: int, sign: int = 1) -> QSeries:
    """1 + sign*q^(e/4), collapsing to the constant when e = 0."""
    if e == 0:
        return QSeries.monomial(0, 1 + sign)
    return QSeries({0: 1, e: sign})


def _times_beta(pair: TrinomialBaileyPair, L: int, prefactor: QSeries, order: int) -> QSeries | None:
    """prefactor * beta(L) through order, or None when it cannot reach order."""
    vp = prefactor.min_exp
    if vp is None or vp + pair.numerator_floor > order:
        return None
    num = mul(prefactor, pair.numerator_to(L, order - vp), order)
    if not num.coeffs():
        return None
    return mul(num, reciprocal_pochhammer(Q, L, order - num.min_exp), order)


def _lhs_series(pair: TrinomialBaileyPair, prefactor: Callable[[int], QSeries], order: int,
                L_max: int | None) -> QSeries:
    """sum_L prefactor(L) beta(L), over 0..L_max or until terms pass order."""
    terms = []
    L = 0
    while L_max is None or L <= L_max:
        pre = prefactor(L)
        if L_max is None and pre.min_exp + pair.numerator_floor > order:
            break
        t = _times_beta(pair, L, pre, order)
        if t is not None:
            terms.append(t)
        L += 1
    return series_sum(terms, order)


def prefactored_sum(prefactor: Callable[[int], QSeries], parts: list[tuple[QSeries, QSeries]],
                    order: int) -> QSeries:
    """prefactor * sum num/den through order, for exact num and den.

    ``prefactor(T)`` must return a series known through T quarters; it is
    built once, deep enough for every part.
    """
    parts = [(n, d) for n, d in parts if not n.is_zero()]
    if not parts:
        return QSeries.zero(order)
    need = max(order + d.min_exp - n.min_exp for n, d in parts)
    P = prefactor(max(order, need))
    return series_sum((divide(mul(P, n), d, order) for n, d in parts), order)


def theorem2_prefactor(order: int) -> QSeries:
    """(-1)_inf (-q)_inf / (q)_inf^2."""
    top = mul(pochhammer_infinite(MINUS_ONE, order), pochhammer_infinite(MINUS_Q, order), order)
    inv = reciprocal_pochhammer_infinite(Q, order)
    return mul(mul(top, inv, order), inv, order)


# -- finite trinomial Bailey lemma --------------------------------------------------------------------

def _check_a(pair: TrinomialBaileyPair, a: int):
    if pair.a != a or pair.alpha.a != a:
        raise ValueError(f"this identity needs a pair relative to a = {a}")


def verify_theorem1_12(pair: TrinomialBaileyPair, M: int, order: int) -> VerificationReport:
    _check_a(pair, 0)
    lhs = _lhs_series(pair, lambda L: pochhammer_finite(MINUS_ONE, L).shift(2 * L), order, M)
    top = pochhammer_finite(MINUS_ONE, M + 1)
    parts = []
    for r in range(M + 1):
        al = pair.alpha(r)
        if al.is_zero():
            continue
        # 1/(q^(r/2) + q^(-r/2)) = q^(r/2) / (1 + q^r)
        parts.append((mul(mul(al, top), big_T(1, M, r)).shift(2 * r), _binom1(4 * r)))
    rhs = _divide_by_qM(_quotient_sum(parts, order), M, order)
    return compare_series(lhs, rhs, order, {"pair": pair.label, "M": M, "order": order})


def _quotient_sum(parts: list[tuple[QSeries, QSeries]], order: int) -> QSeries:
    return series_sum((divide(n, d, order) for n, d in parts if not n.is_zero()), order)


def _divide_by_qM(s: QSeries, M: int, order: int) -> QSeries:
    if not s.coeffs():
        return QSeries.zero(order)
    return mul(s, reciprocal_pochhammer(Q, M, order - s.min_exp), order)


def theorem1_13_parts(alpha: AlphaSequence, M: int, middle_sign: int = -1) -> list[tuple[QSeries, QSeries]]:
    """The alpha-sum of the a = 1 identity as (numerator, denominator) parts, before 1/(q)_M."""
    top = pochhammer_finite(MINUS_ONE, M)
    one_minus = _binom1(4 * M, -1)
    parts = []
    for r in range(M + 1):
        al = alpha(r)
        if al.is_zero():
            continue
        c = mul(al, top)
        parts.append((mul(c, big_T(1, M, r)), QSeries.one()))
        if M >= 1:
            c2 = mul(c, one_minus)
            parts.append((mul(c2, big_T(1, M - 1, r + 1)) * middle_sign, _binom1(-4 - 4 * r)))
            parts.append((-mul(c2, big_T(1, M - 1, r - 1)), _binom1(4 * r - 4)))
    return parts


def verify_theorem1_13(pair: TrinomialBaileyPair, M: int, order: int) -> VerificationReport:
    _check_a(pair, 1)
    base = PochhammerBase(-1, -2)
    lhs = _lhs_series(pair, lambda L: pochhammer_finite(base, L).shift(4 * L), order, M)
    rhs = _divide_by_qM(_quotient_sum(theorem1_13_parts(pair.alpha, M), order), M, order)
    return compare_series(lhs, rhs, order, {"pair": pair.label, "M": M, "order": order})


# -- infinite trinomial Bailey lemma and the one-parameter family ------------------------------------------------

def _theorem2_lhs(pair: TrinomialBaileyPair, which: str, order: int) -> QSeries:
    if which == "eq236":
        pre = lambda L: pochhammer_finite(MINUS_ONE, L).shift(2 * L)
    else:
        base = PochhammerBase(-1, -2)
        pre = lambda L: pochhammer_finite(base, L).shift(4 * L)
    return _lhs_series(pair, pre, order, None)


def theorem2_rhs(alpha: AlphaSequence, which: str, order: int) -> QSeries:
    parts = []
    if which == "eq236":
        for r in alpha.indices(order, lambda r: 2 * r):
            parts.append((alpha(r).shift(2 * r), _binom1(4 * r)))
    elif which == "eq237":
        for r in alpha.indices(order, lambda r: 4 * max(0, r - 1)):
            al = alpha(r)
            parts.append((al, _binom1(4 * r + 4)))
            parts.append((-al, _binom1(4 * r - 4)))
    else:
        raise ValueError(f"unknown identity {which!r}")
    return prefactored_sum(theorem2_prefactor, parts, order)


def verify_theorem2(pair: TrinomialBaileyPair, which: str, order: int) -> VerificationReport:
    _check_a(pair, 0 if which == "eq236" else 1)
    lhs = _theorem2_lhs(pair, which, order)
    rhs = theorem2_rhs(pair.alpha, which, order)
    return compare_series(lhs, rhs, order, {"pair": pair.label, "which": which, "order": order})


def family43_prefactor(n: int) -> Callable[[int], QSeries]:
    """(-q^(n+1))_inf^2 / ((q)_inf (q^(2n+1))_inf)."""
    def build(order: int) -> QSeries:
        top = pochhammer_infinite(PochhammerBase(-1, 2 * n + 2), order)
        out = mul(mul(top, top, order), reciprocal_pochhammer_infinite(Q, order), order)
        return mul(out, reciprocal_pochhammer_infinite(PochhammerBase(1, 4 * n + 2), order), order)
    return build


def family43_lhs(pair: TrinomialBaileyPair, n: int, order: int) -> QSeries:
    base = PochhammerBase(-1, -2 * n)
    return _lhs_series(pair, lambda L: pochhammer_finite(base, L).shift((2 + 4 * n) * L), order, None)


def family43_rhs(alpha: AlphaSequence, n: int, order: int) -> QSeries:
    low = PochhammerBase(-1, -2 * n)
    high = PochhammerBase(-1, 2 * n + 2)

    def weight(r: int) -> int:
        return (2 + 4 * n) * r + pochhammer_finite(low, r).min_exp

    parts = []
    for r in alpha.indices(order, weight):
        num = mul(alpha(r), pochhammer_finite(low, r)).shift((2 + 4 * n) * r)
        parts.append((num, pochhammer_finite(high, r)))
    return prefactored_sum(family43_prefactor(n), parts, order)


def verify_eq43(pair: TrinomialBaileyPair, n: int, order: int) -> VerificationReport:
    _check_a(pair, 0)
    if n < 0:
        raise ValueError("n must be nonnegative")
    return compare_series(family43_lhs(pair, n, order), family43_rhs(pair.alpha, n, order), order,
                          {"pair": pair.label, "n": n, "order": order})


# -- conjugate identities (exact, denominators cleared) ----------------------------------

def conjugate_222_sides(A: int, M: int) -> tuple[QSeries, QSeries]:
    """Both sides of the a = 0 conjugate identity multiplied by (q)_M (q^(A/2)+q^(-A/2))."""
    terms = []
    for L in range(A, M + 1):
        t = mul(pochhammer_finite(MINUS_ONE, L), pochhammer_finite(PochhammerBase(1, 2 * L + 2), M - L))
        terms.append(mul(t, big_T(0, L, A)).shift(2 * L))
    lhs = mul(series_sum(terms), QSeries({2 * A: 1, -2 * A: 1}) if A else QSeries.monomial(0, 2))
    rhs = mul(pochhammer_finite(MINUS_ONE, M + 1), big_T(1, M, A))
    return lhs, rhs


def verify_conjugate_222(A: int, M: int) -> VerificationReport:
    scope = {"A": A, "M": M}
    if not 0 <= A <= M:
        return VerificationReport(SKIP, scope, None, "vacuous outside 0 <= A <= M")
    return compare_exact(*conjugate_222_sides(A, M), scope)


def conjugate_233_sides(A: int, M: int, middle_sign: int = -1) -> tuple[QSeries, QSeries]:
    """Both sides of the a = 1 conjugate identity multiplied by (q)_M (1+q^(-1-A)) (1+q^(A-1))."""
    d1 = _binom1(-4 - 4 * A)
    d2 = _binom1(4 * A - 4)
    base = PochhammerBase(-1, -2)
    terms = []
    for L in range(A, M + 1):
        t = mul(pochhammer_finite(base, L), pochhammer_finite(PochhammerBase(1, 2 * L + 2), M - L))
        terms.append(mul(t, big_T(1, L, A)).shift(4 * L))
    lhs = mul(mul(series_sum(terms), d1), d2)
    one_minus = _binom1(4 * M, -1)
    body = mul(mul(big_T(1, M, A), d1), d2)
    if M >= 1:
        body = body + mul(mul(one_minus, d2), big_T(1, M - 1, A + 1)) * middle_sign
        body = body - mul(mul(one_minus, d1), big_T(1, M - 1, A - 1))
    rhs = mul(pochhammer_finite(MINUS_ONE, M), body)
    return lhs, rhs


def verify_conjugate_233(A: int, M: int, middle_sign: int = -1) -> VerificationReport:
    scope = {"A": A, "M": M}
    if not 0 <= A <= M:
        return VerificationReport(SKIP, scope, None, "vacuous outside 0 <= A <= M")
    return compare_exact(*conjugate_233_sides(A, M, middle_sign), scope)


# -- classical Bailey pairs -------------------------------------------------------

def _product_through(exact: list[QSeries], recips: list[tuple[PochhammerBase, int]],
                     order: int) -> QSeries | None:
    """prod(exact) * prod 1/(b)_n through order; None if it cannot reach order."""
    num = QSeries.one()
    for f in exact:
        num = mul(num, f)
    if num.is_zero():
        return None
    v = num.min_exp
    if v > order:
        return None
    acc = num
    for b, n in recips:
        acc = mul(acc, reciprocal_pochhammer(b, n, order - v), order)
    return acc


def classical_beta_from_alpha(alpha: AlphaSequence, a_param: PochhammerBase, L: int,
                              order: int) -> QSeries:
    """sum_{r<=L} alpha(r) / ((q)_{L-r} (aq)_{L+r}) through order."""
    aq = a_param.times_q()
    terms = []
    for r in range(L + 1):
        t = _product_through([alpha(r)], [(Q, L - r), (aq, L + r)], order)
        if t is not None:
            terms.append(t)
    return series_sum(terms, order)


def _times_base(x: PochhammerBase, y: PochhammerBase, sign: int = 1) -> PochhammerBase:
    return PochhammerBase(x.sign * y.sign, x.half_exponent + sign * y.half_exponent)


def _power(b: PochhammerBase, L: int) -> QSeries:
    return QSeries.monomial(2 * b.half_exponent * L, b.sign ** L)


def verify_classical_transform_17(alpha: AlphaSequence, a_param: PochhammerBase,
                                  rho1: PochhammerBase, rho2: PochhammerBase,
                                  M: int, order: int) -> VerificationReport:
    """Both sides of the classical Bailey transform with beta built from alpha.

    Degenerate parameter choices raise (NonInvertibleError or
    ZeroDivisionError) rather than reporting FAIL.
    """
    aq = a_param.times_q()
    b1 = _times_base(aq, rho1, -1)
    b2 = _times_base(aq, rho2, -1)
    c = _times_base(b1, rho2, -1)
    lhs_terms, rhs_terms = [], []
    for L in range(M + 1):
        exact = [pochhammer_finite(rho1, L), pochhammer_finite(rho2, L), _power(c, L),
                 pochhammer_finite(c, M - L)]
        num = QSeries.one()
        for f in exact:
            num = mul(num, f)
        if not num.is_zero():
            v = num.min_exp
            depth = order - v
            beta = classical_beta_from_alpha(alpha, a_param, L, depth + 8)
            if beta.coeffs():
                t = _product_through([num], [(b1, M), (b2, M), (Q, M - L)], order - beta.min_exp)
                if t is not None:
                    lhs_terms.append(mul(t, beta, order))
        t = _product_through([pochhammer_finite(rho1, L), pochhammer_finite(rho2, L), _power(c, L),
                              alpha(L)], [(b1, L), (b2, L), (Q, M - L), (aq, M + L)], order)
        if t is not None:
            rhs_terms.append(t)
    return compare_series(series_sum(lhs_terms, order), series_sum(rhs_terms, order), order,
                          {"alpha": alpha.label, "M": M, "order": order})
