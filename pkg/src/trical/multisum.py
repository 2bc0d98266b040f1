"""Evaluator for fermionic multisums built from q-binomials.

A multisum is a finite or infinite sum over a box of nonnegative integer
points of ``q^(Q(x)/4) * prod [top(x), bottom(x)] * prod 1/(q)_{n(x)}``
where Q is a quadratic form and the indices are affine in x. Points where an
index leaves its range contribute zero; points that fail a parity constraint
are skipped.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Mapping

from .qfunctions import Q, q_binomial_in, reciprocal_pochhammer
from .series import QSeries, mul, series_sum


@dataclass(frozen=True)
class Affine:
    """(sum coeff*var + const) / denom over named integer variables."""

    terms: tuple[tuple[str, int], ...] = ()
    const: int = 0
    denom: int = 1

    @classmethod
    def of(cls, const: int = 0, denom: int = 1, **coeffs: int) -> "Affine":
        return cls(tuple(sorted((k, v) for k, v in coeffs.items() if v)), const, denom)

    @classmethod
    def var(cls, name: str) -> "Affine":
        return cls(((name, 1),))

    def __add__(self, other: "Affine") -> "Affine":
        if self.denom != other.denom:
            raise ValueError("cannot add affine forms with different denominators")
        c = dict(self.terms)
        for k, v in other.terms:
            c[k] = c.get(k, 0) + v
        return Affine(tuple(sorted((k, v) for k, v in c.items() if v)),
                      self.const + other.const, self.denom)

    def scaled(self, k: int) -> "Affine":
        return Affine(tuple((n, v * k) for n, v in self.terms), self.const * k, self.denom)

    def compile(self, names: tuple[str, ...]):
        index = {n: i for i, n in enumerate(names)}
        unknown = [n for n, _ in self.terms if n not in index]
        if unknown:
            raise ValueError(f"affine form uses unknown variables {unknown}")
        return (tuple((index[n], v) for n, v in self.terms), self.const, self.denom)


@dataclass(frozen=True)
class Binomial:
    """The factor [top, bottom] in base q^(base_quarters/4)."""

    top: Affine
    bottom: Affine
    base_quarters: int = 4


@dataclass(frozen=True)
class MultisumSpec:
    """Shape of a multisum.

    ``quadratic`` holds (coeff, f, g) triples contributing coeff*f(x)*g(x)
    quarters to the exponent, ``linear`` adds a further affine number of
    quarters. ``parameters`` are fixed per evaluation; ``outer`` names one
    parameter that series mode sums from 0 with ``outer_prefactor(value,
    order)`` in front of each inner sum.
    """

    variables: tuple[str, ...]
    quadratic: tuple[tuple[int, Affine, Affine], ...] = ()
    linear: Affine = field(default_factory=Affine)
    binomials: tuple[Binomial, ...] = ()
    reciprocals: tuple[Affine, ...] = ()
    parity: tuple[Affine, ...] = ()
    parameters: tuple[str, ...] = ()
    outer: str | None = None
    outer_prefactor: Callable[[int, int], QSeries] | None = None
    outer_valuation: Callable[[int], int] | None = None


class MultisumError(ValueError):
    """Inadmissible index, or bounds that do not certify the result."""


def _value(form, x) -> int | None:
    idx, const, denom = form
    v = const
    for i, c in idx:
        v += c * x[i]
    if denom == 1:
        return v
    q, r = divmod(v, denom)
    return None if r else q


class _Compiled:
    def __init__(self, spec: MultisumSpec):
        names = tuple(spec.parameters) + tuple(spec.variables)
        self.nparams = len(spec.parameters)
        self.quadratic = [(c, f.compile(names), g.compile(names)) for c, f, g in spec.quadratic]
        self.linear = spec.linear.compile(names)
        self.binomials = [(b.top.compile(names), b.bottom.compile(names), b.base_quarters)
                          for b in spec.binomials]
        self.reciprocals = [r.compile(names) for r in spec.reciprocals]
        self.parity = [p.compile(names) for p in spec.parity]

    def point(self, x):
        """(exponent, binomial args, reciprocal args) or None for a zero term."""
        for p in self.parity:
            v = _value(p, x)
            if v is None or v % 2:
                return None
        args = []
        for top, bottom, base in self.binomials:
            a, b = _value(top, x), _value(bottom, x)
            if a is None or b is None:
                raise MultisumError(f"non-integral binomial index at {x}")
            if b < 0 or b > a:
                return None
            args.append((a, b, base))
        recips = []
        for form in self.reciprocals:
            n = _value(form, x)
            if n is None:
                raise MultisumError(f"non-integral Pochhammer index at {x}")
            if n < 0:
                return None
            recips.append(n)
        e = _value(self.linear, x)
        for c, f, g in self.quadratic:
            fv, gv = _value(f, x), _value(g, x)
            if fv is None or gv is None or e is None:
                raise MultisumError(f"exponent leaves the quarter grain at {x}")
            e += c * fv * gv
        if e is None:
            raise MultisumError(f"exponent leaves the quarter grain at {x}")
        return e, args, recips


def _term(e: int, args, recips, bound: int | None) -> QSeries:
    acc = QSeries.monomial(e)
    for a, b, base in args:
        acc = mul(acc, q_binomial_in(a, b, base), bound)
    for n in recips:
        if bound is None:
            raise MultisumError("1/(q)_n factors need series mode")
        acc = mul(acc, reciprocal_pochhammer(Q, n, bound - e), bound)
    return acc


def _box(params, bounds):
    return (params + rest for rest in itertools.product(*(range(b + 1) for b in bounds)))


def _shell(params, bounds, width: int = 2):
    """Points outside the box but within ``width`` of it in every direction."""
    ranges = [range(b + width + 1) for b in bounds]
    for rest in itertools.product(*ranges):
        if any(v > b for v, b in zip(rest, bounds)):
            yield params + rest


def _inner_sum(comp: _Compiled, params: tuple[int, ...], bounds: list[int],
               order: int | None) -> QSeries:
    terms = []
    for x in _box(params, bounds):
        pt = comp.point(x)
        if pt is None:
            continue
        e, args, recips = pt
        if order is not None and e > order:
            continue
        terms.append(_term(e, args, recips, order))
    for x in _shell(params, bounds):
        pt = comp.point(x)
        if pt is None:
            continue
        if order is None:
            raise MultisumError(f"nonzero term at {x} outside the summation box")
        if pt[0] <= order:
            raise MultisumError(f"term at {x} has exponent {pt[0]} <= {order}; enlarge the box")
    return series_sum(terms, order)


def inner_min_exponent(spec: MultisumSpec, params: Mapping[str, int],
                       bounds: Mapping[str, int]) -> int | None:
    """Smallest exponent among nonzero terms in the box plus its shell."""
    comp = _Compiled(spec)
    p = tuple(params[n] for n in spec.parameters)
    b = [bounds[v] for v in spec.variables]
    best = None
    for x in itertools.chain(_box(p, b), _shell(p, b)):
        pt = comp.point(x)
        if pt is not None and (best is None or pt[0] < best):
            best = pt[0]
    return best


def fermionic_multisum(spec: MultisumSpec, bounds: Mapping[str, int],
                       order: int | None = None,
                       params: Mapping[str, int] | None = None) -> QSeries:
    """Evaluate a multisum.

    Polynomial mode (``order`` None) returns the exact sum over the box and
    checks that no nonzero term sits just outside it. Series mode returns the
    sum through ``order`` quarters and checks that every term just outside the
    box lies beyond ``order``; when the multisum has an outer variable it is
    summed over ``0..bounds[outer]`` with the same check on the next values.
    """
    params = dict(params or {})
    comp = _Compiled(spec)
    inner_bounds = [bounds[v] for v in spec.variables]

    def fixed(outer_value=None):
        vals = dict(params)
        if outer_value is not None:
            vals[spec.outer] = outer_value
        missing = [n for n in spec.parameters if n not in vals]
        if missing:
            raise MultisumError(f"missing parameters {missing}")
        return tuple(vals[n] for n in spec.parameters)

    if order is None or spec.outer is None:
        return _inner_sum(comp, fixed(), inner_bounds, order)

    if spec.outer_prefactor is None or spec.outer_valuation is None:
        raise MultisumError("an outer sum needs a prefactor and its valuation")
    top = bounds[spec.outer]
    terms = []
    for L in range(top + 1):
        inner_order = order - spec.outer_valuation(L)
        inner = _inner_sum(comp, fixed(L), inner_bounds, inner_order)
        if not inner.coeffs():
            continue
        pre = spec.outer_prefactor(L, order - inner.min_exp)
        terms.append(mul(pre, inner, order))
    for L in (top + 1, top + 2):
        low = inner_min_exponent(spec, {**params, spec.outer: L}, bounds)
        if low is not None and spec.outer_valuation(L) + low <= order:
            raise MultisumError(f"outer value {L} still reaches exponent <= {order}")
    return series_sum(terms, order)
