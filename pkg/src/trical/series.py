"""Exact truncated Laurent series in the formal variable x = q^(1/4).

Every exponent is stored in *quarters*: the key ``k`` stands for ``q^(k/4)``.
Coefficients are Python integers. A series either is EXACT (every absent
coefficient is zero, so the value is a Laurent polynomial) or carries a
truncation point ``trunc``: coefficients at exponents above ``trunc`` are
unknown and are never reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import mpmath

EXACT = None

# below this many coefficient products the schoolbook loop beats packing
_KRONECKER_MIN_WORK = 96


class TruncationError(ValueError):
    """A coefficient beyond the known part of a series was needed."""


class NonInvertibleError(ArithmeticError):
    """A divisor's leading coefficient does not divide the dividend over Z."""


class InexactDivisionError(ArithmeticError):
    """Exact division of Laurent polynomials left a nonzero remainder."""


@dataclass(frozen=True)
class Mismatch:
    """First exponent (in quarters) at which two series disagree."""

    exponent: int
    lhs: int
    rhs: int


def _min_trunc(*truncs):
    known = [t for t in truncs if t is not None]
    return min(known) if known else EXACT


class QSeries:
    """Immutable sparse Laurent series with integer coefficients."""

    __slots__ = ("_c", "_trunc")

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] | None = None,
                 trunc: int | None = EXACT):
        c: dict[int, int] = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
            for e, v in items:
                if trunc is not None and e > trunc:
                    continue
                c[e] = c.get(e, 0) + v
            c = {e: v for e, v in c.items() if v}
        self._c = c
        self._trunc = trunc

    @classmethod
    def _raw(cls, c: dict[int, int], trunc: int | None) -> "QSeries":
        s = object.__new__(cls)
        s._c = c
        s._trunc = trunc
        return s

    # -- constructors -----------------------------------------------------

    @classmethod
    def monomial(cls, quarters: int, coeff: int = 1) -> "QSeries":
        return cls._raw({quarters: coeff} if coeff else {}, EXACT)

    @classmethod
    def zero(cls, trunc: int | None = EXACT) -> "QSeries":
        return cls._raw({}, trunc)

    @classmethod
    def one(cls) -> "QSeries":
        return cls._raw({0: 1}, EXACT)

    @classmethod
    def from_q(cls, coeffs: Mapping[int, int], trunc_q: int | None = EXACT) -> "QSeries":
        """Build from a map of integer powers of q."""
        return cls({4 * e: v for e, v in coeffs.items()},
                   None if trunc_q is None else 4 * trunc_q)

    # -- inspection -------------------------------------------------------

    @property
    def trunc(self) -> int | None:
        return self._trunc

    @property
    def is_exact(self) -> bool:
        return self._trunc is None

    @property
    def min_exp(self) -> int | None:
        """Lowest exponent that may carry a nonzero coefficient.

        ``None`` for the exact zero; ``trunc + 1`` for a truncated series
        that is zero as far as it is known.
        """
        if self._c:
            return min(self._c)
        if self._trunc is None:
            return None
        return self._trunc + 1

    @property
    def max_exp(self) -> int | None:
        return max(self._c) if self._c else None

    def is_zero(self) -> bool:
        """True only for the exact zero."""
        return not self._c and self._trunc is None

    def items(self) -> list[tuple[int, int]]:
        return sorted(self._c.items())

    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def __len__(self) -> int:
        return len(self._c)

    def __getitem__(self, quarters: int) -> int:
        if self._trunc is not None and quarters > self._trunc:
            raise TruncationError(f"coefficient at q^({quarters}/4) beyond truncation {self._trunc}")
        return self._c.get(quarters, 0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = QSeries.monomial(0, other)
        if not isinstance(other, QSeries):
            return NotImplemented
        return self._trunc == other._trunc and self._c == other._c

    def __hash__(self) -> int:
        return hash((self._trunc, frozenset(self._c.items())))

    def __repr__(self) -> str:
        body = " + ".join(f"{v}*x^{e}" for e, v in self.items()) or "0"
        tail = "" if self._trunc is None else f" + O(x^{self._trunc + 1})"
        return f"QSeries({body}{tail})"

    # -- ring operations --------------------------------------------------

    def __neg__(self) -> "QSeries":
        return QSeries._raw({e: -v for e, v in self._c.items()}, self._trunc)

    def __add__(self, other) -> "QSeries":
        if isinstance(other, int):
            other = QSeries.monomial(0, other)
        if not isinstance(other, QSeries):
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other) -> "QSeries":
        if isinstance(other, int):
            other = QSeries.monomial(0, other)
        if not isinstance(other, QSeries):
            return NotImplemented
        return add(self, -other)

    def __rsub__(self, other) -> "QSeries":
        return (-self) + other

    def __mul__(self, other) -> "QSeries":
        if isinstance(other, int):
            if other == 0:
                return QSeries._raw({}, self._trunc)
            return QSeries._raw({e: v * other for e, v in self._c.items()}, self._trunc)
        if not isinstance(other, QSeries):
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QSeries":
        if n < 0:
            raise ValueError("negative powers need invert_unit")
        result = QSeries.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- exponent manipulation ---------------------------------------------

    def shift(self, quarters: int) -> "QSeries":
        """Multiply by q^(quarters/4)."""
        if not quarters:
            return self
        t = None if self._trunc is None else self._trunc + quarters
        return QSeries._raw({e + quarters: v for e, v in self._c.items()}, t)

    def truncate(self, order: int) -> "QSeries":
        t = order if self._trunc is None else min(order, self._trunc)
        return QSeries._raw({e: v for e, v in self._c.items() if e <= t}, t)

    def substitute_power(self, num: int, den: int = 1) -> "QSeries":
        """Substitute q -> q^(num/den); every new exponent must stay integral."""
        if num == 0 or den <= 0:
            raise ValueError("substitution power must be a nonzero rational with den > 0")
        if num < 0 and self._trunc is not None:
            raise TruncationError("cannot invert the variable of a truncated series")
        c = {}
        for e, v in self._c.items():
            k, r = divmod(e * num, den)
            if r:
                raise ValueError(f"exponent {e}/4 does not map onto the quarter grain")
            c[k] = v
        t = None if self._trunc is None else (self._trunc * num) // den
        return QSeries._raw(c, t)

    def substitute_q_inverse(self) -> "QSeries":
        return self.substitute_power(-1)

    def value_at_one(self) -> int:
        """Sum of coefficients, i.e. the value at q = 1 (exact series only)."""
        if self._trunc is not None:
            raise TruncationError("q = 1 is meaningless for a truncated series")
        return sum(self._c.values())

    def eval_float(self, t: float) -> float:
        return eval_float(self, t)


# -- kernels ------------------------------------------------------------------

def _stride(exps: Iterable[int], base: int) -> int:
    g = 0
    for e in exps:
        g = math.gcd(g, e - base)
        if g == 1:
            break
    return g


def _schoolbook(ac: dict[int, int], bc: dict[int, int], bound: int | None) -> dict[int, int]:
    if len(ac) > len(bc):
        ac, bc = bc, ac
    bi = sorted(bc.items())
    res: dict[int, int] = {}
    get = res.get
    for ea, ca in ac.items():
        if bound is None:
            for eb, cb in bi:
                k = ea + eb
                res[k] = get(k, 0) + ca * cb
        else:
            lim = bound - ea
            for eb, cb in bi:
                if eb > lim:
                    break
                k = ea + eb
                res[k] = get(k, 0) + ca * cb
    return {e: v for e, v in res.items() if v}


def _pack(dense: list[int], nbytes: int) -> int:
    pos = b"".join((v if v > 0 else 0).to_bytes(nbytes, "little") for v in dense)
    value = int.from_bytes(pos, "little")
    if any(v < 0 for v in dense):
        neg = b"".join((-v if v < 0 else 0).to_bytes(nbytes, "little") for v in dense)
        value -= int.from_bytes(neg, "little")
    return value


def _kronecker(ac: dict[int, int], bc: dict[int, int], bound: int | None) -> dict[int, int]:
    """Dense product by packing both operands into one big integer each."""
    va, vb = min(ac), min(bc)
    if bound is not None:
        ac = {e: v for e, v in ac.items() if e + vb <= bound}
        bc = {e: v for e, v in bc.items() if e + va <= bound}
        if not ac or not bc:
            return {}
    g = math.gcd(_stride(ac, va), _stride(bc, vb)) or 1
    la = (max(ac) - va) // g + 1
    lb = (max(bc) - vb) // g + 1
    da = [0] * la
    for e, v in ac.items():
        da[(e - va) // g] = v
    db = [0] * lb
    for e, v in bc.items():
        db[(e - vb) // g] = v
    ma = max(abs(v) for v in ac.values())
    mb = max(abs(v) for v in bc.values())
    bits = (min(len(ac), len(bc)) * ma * mb).bit_length() + 2
    nbytes = (bits + 7) // 8
    prod = _pack(da, nbytes) * _pack(db, nbytes)
    n = la + lb - 1
    half = 1 << (8 * nbytes - 1)
    bias = int.from_bytes(half.to_bytes(nbytes, "little") * n, "little")
    raw = (prod + bias).to_bytes(n * nbytes, "little")
    base = va + vb
    res = {}
    for i in range(n):
        v = int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - half
        if v:
            e = base + i * g
            if bound is None or e <= bound:
                res[e] = v
    return res


def _product(ac: dict[int, int], bc: dict[int, int], bound: int | None) -> dict[int, int]:
    if not ac or not bc:
        return {}
    if len(ac) * len(bc) < _KRONECKER_MIN_WORK:
        return _schoolbook(ac, bc, bound)
    span = (max(ac) - min(ac)) + (max(bc) - min(bc))
    if span > 64 * (len(ac) + len(bc)):
        # very sparse operands: packing would mostly move zeros around
        return _schoolbook(ac, bc, bound)
    return _kronecker(ac, bc, bound)


def _quotient(ac: dict[int, int], b_items: list[tuple[int, int]], bound: int) -> dict[int, int]:
    """Power-series quotient a/b for exponents up to ``bound``.

    Each coefficient must be divisible by b's leading coefficient; otherwise
    NonInvertibleError is raised rather than leaving the integers.
    """
    vb, cb = b_items[0]
    rest = [(e - vb, v) for e, v in b_items[1:]]
    if not ac:
        return {}
    va = min(ac)
    vq = va - vb
    g = math.gcd(_stride(ac, va), _stride((d for d, _ in rest), 0)) or 1
    q: dict[int, int] = {}
    get = q.get
    for k in range(vq, bound + 1, g):
        s = ac.get(k + vb, 0)
        span = k - vq
        for d, cd in rest:
            if d > span:
                break
            s -= cd * get(k - d, 0)
        if s:
            qk, r = divmod(s, cb)
            if r:
                raise NonInvertibleError(
                    f"leading coefficient {cb} does not divide {s} at q^({k}/4)")
            q[k] = qk
    return q


# -- public operations ----------------------------------------------------------

def make_monomial(quarters: int, coeff: int) -> QSeries:
    return QSeries.monomial(quarters, coeff)


def q_power(k: int, coeff: int = 1) -> QSeries:
    """coeff * q^k for an integer k."""
    return QSeries.monomial(4 * k, coeff)


def add(a: QSeries, b: QSeries) -> QSeries:
    t = _min_trunc(a._trunc, b._trunc)
    c = dict(a._c)
    get = c.get
    for e, v in b._c.items():
        c[e] = get(e, 0) + v
    return QSeries._raw({e: v for e, v in c.items() if v and (t is None or e <= t)}, t)


def series_sum(terms: Iterable[QSeries], trunc: int | None = EXACT) -> QSeries:
    """Sum many series at once; ``trunc`` caps the result."""
    c: dict[int, int] = {}
    get = c.get
    t = trunc
    for s in terms:
        t = _min_trunc(t, s._trunc)
        for e, v in s._c.items():
            c[e] = get(e, 0) + v
    return QSeries._raw({e: v for e, v in c.items() if v and (t is None or e <= t)}, t)


def _product_trunc(a: QSeries, b: QSeries) -> int | None:
    ta, tb = a._trunc, b._trunc
    if ta is None and tb is None:
        return None
    if ta is None:
        return None if a.is_zero() else tb + a.min_exp
    if tb is None:
        return None if b.is_zero() else ta + b.min_exp
    return min(ta + b.min_exp, tb + a.min_exp)


def mul(a: QSeries, b: QSeries, order: int | None = None) -> QSeries:
    """Cauchy product; the result is known only as far as both operands allow."""
    if a.is_zero() or b.is_zero():
        return QSeries.zero()
    t = _min_trunc(_product_trunc(a, b), order)
    return QSeries._raw(_product(a._c, b._c, t), t)


def divide(a: QSeries, b: QSeries, order: int) -> QSeries:
    """Series quotient a/b through ``order`` quarters (b's leading term divides)."""
    if not b._c:
        if b._trunc is None:
            raise ZeroDivisionError("division by the zero series")
        raise TruncationError("divisor is unknown at its leading term")
    if a.is_zero():
        return QSeries.zero()
    b_items = b.items()
    vb = b_items[0][0]
    va = a.min_exp
    t = _min_trunc(order,
                   None if a._trunc is None else a._trunc - vb,
                   None if b._trunc is None else b._trunc - vb + (va - vb))
    return QSeries._raw(_quotient(a._c, b_items, t), t)


def invert_unit(a: QSeries, order: int) -> QSeries:
    """1/a through ``order``; a's lowest coefficient must be +1 or -1."""
    if not a._c:
        raise ZeroDivisionError("cannot invert a series with no known terms")
    lead = a._c[min(a._c)]
    if lead not in (1, -1):
        raise NonInvertibleError(f"leading coefficient {lead} is not a unit")
    return divide(QSeries.one(), a, order)


def divide_exact(a: QSeries, b: QSeries) -> QSeries:
    """Exact quotient of Laurent polynomials; raises if a remainder is left."""
    if not (a.is_exact and b.is_exact):
        raise TruncationError("exact division needs exact operands")
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return QSeries.zero()
    bound = a.max_exp - b.max_exp
    if bound < a.min_exp - b.min_exp:
        raise InexactDivisionError("divisor has larger degree span than dividend")
    try:
        qc = _quotient(a._c, b.items(), bound)
    except NonInvertibleError as exc:
        raise InexactDivisionError(str(exc)) from None
    quotient = QSeries._raw(qc, EXACT)
    if mul(quotient, b) != a:
        raise InexactDivisionError("nonzero remainder")
    return quotient


def substitute_q_inverse(a: QSeries) -> QSeries:
    return a.substitute_q_inverse()


def eval_float(a: QSeries, t: float) -> float:
    """Sum of coeff * exp(-t * quarters / 4) over the stored terms."""
    if t <= 0:
        raise ValueError("t must be positive")
    with mpmath.workdps(30):
        tt = mpmath.mpf(t)
        total = mpmath.fsum(mpmath.mpf(v) * mpmath.exp(-tt * e / 4) for e, v in a._c.items())
        return float(total)


def equal_to_order(a: QSeries, b: QSeries, order: int) -> bool | Mismatch:
    """True if a and b agree at every exponent <= order, else the first Mismatch."""
    for s in (a, b):
        if s._trunc is not None and s._trunc < order:
            raise TruncationError(f"series known only through {s._trunc} < {order} quarters")
    for e in sorted(set(a._c) | set(b._c)):
        if e > order:
            break
        x, y = a._c.get(e, 0), b._c.get(e, 0)
        if x != y:
            return Mismatch(e, x, y)
    return True


def first_mismatch_exact(a: QSeries, b: QSeries) -> Mismatch | None:
    """Exact comparison of two Laurent polynomials."""
    if not (a.is_exact and b.is_exact):
        raise TruncationError("exact comparison needs exact operands")
    for e in sorted(set(a._c) | set(b._c)):
        x, y = a._c.get(e, 0), b._c.get(e, 0)
        if x != y:
            return Mismatch(e, x, y)
    return None
