"""Registry of named identities and the driver that turns them into certificates.

Each IdentityDescriptor knows how to build two or more sides that must agree:
exactly for EXACT_POLY entries (one L at a time), through a given order for
SERIES entries. ``corrupt=True`` injects one deliberate error per entry so
that negative controls exercise the same code path.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Callable

from . import __version__
from .bailey import ThetaTerm, family43_lhs, family43_rhs, trinomial_numerator
from .certificate import ERROR, FAIL, PASS, Certificate, mismatch_dict
from .characters import (CharacterLabel, N1_35, N2_LEVEL1_37, SECTOR_A, VIRASORO_34, YSpec,
                         chi_n1_super, chi_n2_level1, chi_virasoro)
from .identities import (flow_lhs, flow_rhs, half_base_transform, rr_binomial_lhs, rr_binomial_rhs,
                         rr_bosonic, rr_product_sum, rr_trinomial_rhs, saalschutz_admissible,
                         saalschutz_sides, theorem2_bilateral, theta_limit)
from .multisum import MultisumError, fermionic_multisum
from .pairs import (gg_limit, gg_poly, gg_theta, ising_poly, ising_spec, ising_theta, outer_sum,
                    pair_by_name, rr_poly, rr_theta, series_box, theta_trinomial_sum)
from .series import (InexactDivisionError, NonInvertibleError, QSeries, TruncationError,
                     equal_to_order, first_mismatch_exact)

EXACT_POLY = "EXACT_POLY"
SERIES = "SERIES"

DEFAULT_ORDER = 200
DEFAULT_LMAX = 12
# series checks first run at this order; a mismatch there is final
PROBE_ORDER = 24


@dataclass(frozen=True)
class Param:
    name: str
    desk: tuple
    check: Callable[[object], bool] | None = None
    doc: str = ""

    def accepts(self, value) -> bool:
        return self.check(value) if self.check is not None else value in self.desk


@dataclass(frozen=True)
class IdentityDescriptor:
    id: str
    mode: str
    params: tuple[Param, ...]
    build: Callable[..., tuple[QSeries, ...]]
    description: str
    desk_lmax: int = DEFAULT_LMAX
    admissible: Callable[[dict], bool] | None = None

    def sides(self, params: dict, order: int | None = None, corrupt: bool = False) -> tuple[QSeries, ...]:
        return self.build(params, order, corrupt)

    def schema(self) -> str:
        parts = []
        for p in self.params:
            parts.append(f"{p.name} in {{{', '.join(str(v) for v in p.desk)}}}")
        if self.mode == EXACT_POLY:
            parts.append(f"L in 0..lmax (desk lmax {self.desk_lmax})")
        return "; ".join(parts) if parts else "(no parameters)"

    def desk_points(self) -> list[dict]:
        names = [p.name for p in self.params]
        out = []
        for combo in itertools.product(*(p.desk for p in self.params)):
            point = dict(zip(names, combo))
            if self.admissible is None or self.admissible(point):
                out.append(point)
        return out


def _nonneg(v) -> bool:
    return isinstance(v, int) and v >= 0


def _in(lo: int, hi: int) -> Callable[[object], bool]:
    return lambda v: isinstance(v, int) and lo <= v <= hi


# -- builders ------------------------------------------------------------------------------

def _flip_last_pair(terms: tuple[ThetaTerm, ...]) -> tuple[ThetaTerm, ...]:
    """Negate the last two theta terms (one trinomial pair), a sign error in the bosonic side."""
    out = list(terms)
    for k in (len(out) - 2, len(out) - 1):
        t = out[k]
        out[k] = ThetaTerm(t.period, t.offset, -t.sign, t.quad, t.lin, t.const, t.alternating)
    return tuple(out)


def _gg_poly(p, order, corrupt):
    nu, L = p["nu"], p["L"]
    return gg_poly(nu, L), theta_trinomial_sum(gg_theta(nu), L, drop_extreme=corrupt)


def _gg_series(p, order, corrupt):
    nu = p["nu"]
    theta = gg_theta(nu)
    chi = chi_n1_super(CharacterLabel(N1_35, 2, 4 * nu, 2, 2 * (2 * nu - 1)), order)
    return gg_limit(nu, order), theta_limit(_flip_last_pair(theta) if corrupt else theta, order), chi


def _n2_pair(p_tilde: int, r2: tuple[int, int], s2: tuple[int, int], h2: tuple[int, int],
             order: int) -> QSeries:
    """chi(r2[0], s2[0]; y = q^(h2[0]/4)) + q^(1/2) chi(r2[1], s2[1]; y = q^(h2[1]/4)), A sector."""
    first = chi_n2_level1(CharacterLabel(N2_LEVEL1_37, p_tilde, 1, r2[0], s2[0], SECTOR_A),
                          YSpec(1, h2[0]), order)
    second = chi_n2_level1(CharacterLabel(N2_LEVEL1_37, p_tilde, 1, r2[1], s2[1], SECTOR_A),
                           YSpec(1, h2[1]), order)
    return first + second.shift(2)


def _gg_n2(p, order, corrupt):
    nu = p["nu"]
    theta = gg_theta(nu)
    chars = _n2_pair(4 * nu, (1, 3), (4 * nu + 1, 4 * nu - 1), (2, 2), order)
    return (outer_sum("gg", order, nu),
            theorem2_bilateral(_flip_last_pair(theta) if corrupt else theta, order), chars)


def _ising_poly(p, order, corrupt):
    L = p["L"]
    return ising_poly(L), theta_trinomial_sum(ising_theta(), L, drop_extreme=corrupt)


def _ising_series(p, order, corrupt):
    theta = ising_theta()
    lhs = fermionic_multisum(ising_spec("limit"), {"j": series_box(2 * order)}, order)
    chars = (chi_virasoro(CharacterLabel(VIRASORO_34, 3, 4, 2, 2), order)
             + chi_virasoro(CharacterLabel(VIRASORO_34, 3, 4, 4, 2), order).shift(2))
    return lhs, theta_limit(_flip_last_pair(theta) if corrupt else theta, order), chars


def _ising_n2(p, order, corrupt):
    theta = ising_theta()
    chars = _n2_pair(6, (1, 1), (3, 3), (2, 6), order)
    return (outer_sum("ising", order),
            theorem2_bilateral(_flip_last_pair(theta) if corrupt else theta, order), chars)


def _flow(p, order, corrupt):
    return flow_lhs(p["p"], order), flow_rhs(p["p"], order, raw_prefactor=corrupt)


def _rr_series(p, order, corrupt):
    a = p["a"]
    chi = chi_virasoro(CharacterLabel(VIRASORO_34, 2, 5, 2, 2 * (2 - a)), order)
    bos = rr_bosonic(1 - a if corrupt else a, order)
    return rr_product_sum(a, order), bos, chi


def _rr_binomial(p, order, corrupt):
    a, L = p["a"], p["L"]
    return rr_binomial_lhs(a, L), rr_binomial_rhs(a, L, drop_extreme=corrupt)


def _rr_trinomial(p, order, corrupt):
    L = p["L"]
    return rr_binomial_lhs(0, L), rr_trinomial_rhs(L, drop_extreme=corrupt)


def _rr_trinomial_half(p, order, corrupt):
    L = p["L"]
    return (rr_poly(L), theta_trinomial_sum(rr_theta(), L, drop_extreme=corrupt),
            half_base_transform(rr_binomial_lhs(0, L), L), half_base_transform(rr_trinomial_rhs(L), L))


def _rr_n2(p, order, corrupt):
    theta = rr_theta()
    return outer_sum("rr", order), theorem2_bilateral(_flip_last_pair(theta) if corrupt else theta, order)


def _saalschutz(p, order, corrupt):
    return saalschutz_sides(p["n"], p["A"], p["B"], p["C"], order, corrupt)


def _corrupt_pair(pair):
    return pair.with_alpha(pair.alpha.corrupted(1, QSeries.monomial(4)))


def _family43(p, order, corrupt):
    pair = pair_by_name(p["pair"])
    if corrupt:
        pair = _corrupt_pair(pair)
    return family43_lhs(pair, p["n"], order), family43_rhs(pair.alpha, p["n"], order)


def _bailey_pair(name_of: Callable[[dict], str]):
    def build(p, order, corrupt):
        pair = pair_by_name(name_of(p))
        alpha = pair.alpha.corrupted(1, QSeries.monomial(4)) if corrupt else pair.alpha
        return pair.beta_numerator(p["L"]), trinomial_numerator(alpha, p["L"])
    return build


_NU = Param("nu", (2, 3, 4), _in(2, 4), "index of the generalized Göllnitz-Gordon family")

REGISTRY: tuple[IdentityDescriptor, ...] = (
    IdentityDescriptor("gg-poly-3.9", EXACT_POLY, (_NU,), _gg_poly,
                       "Göllnitz-Gordon multisum polynomial equals its alternating T_0 sum"),
    IdentityDescriptor("gg-series-3.11", SERIES, (Param("nu", (2, 3), _in(2, 4)),), _gg_series,
                       "Göllnitz-Gordon multisum limit = bosonic sum = N=1 SM(2,4nu) character"),
    IdentityDescriptor("gg-n2-3.15", SERIES, (Param("nu", (2,), _in(2, 3)),), _gg_n2,
                       "Göllnitz-Gordon L-multisum = Bailey-lemma bilateral sum = N=2 SM(4nu,1) characters"),
    IdentityDescriptor("ising-poly-3.16", EXACT_POLY, (), _ising_poly,
                       "sum_j q^(j^2/2) [L; j] equals its T_0 theta sum", desk_lmax=16),
    IdentityDescriptor("ising-series-3.17", SERIES, (), _ising_series,
                       "Ising fermionic sum = bosonic sum = chi_(1,1) + q^(1/2) chi_(2,1) of M(3,4)"),
    IdentityDescriptor("ising-n2-3.20", SERIES, (), _ising_n2,
                       "Ising double sum = Bailey-lemma bilateral sum = N=2 SM(6,1) characters"),
    IdentityDescriptor("warnaar-flow-3.21", SERIES, (Param("p", (3, 5), lambda v: v in (3, 5)),), _flow,
                       "M(p,p+1) multisum against the N=2 bilateral sum (corrected prefactor)"),
    IdentityDescriptor("rr-series-3.24", SERIES, (Param("a", (0, 1)),), _rr_series,
                       "Rogers-Ramanujan sum = bosonic product = M(2,5) character"),
    IdentityDescriptor("rr-binomial-poly-3.25", EXACT_POLY, (Param("a", (0, 1)),), _rr_binomial,
                       "Rogers-Ramanujan polynomials as alternating binomial sums"),
    IdentityDescriptor("rr-trinomial-3.26", EXACT_POLY, (), _rr_trinomial,
                       "Rogers-Ramanujan polynomial (a = 0) as a q^2 round-bracket trinomial sum"),
    IdentityDescriptor("rr-trinomial-half-3.27", EXACT_POLY, (), _rr_trinomial_half,
                       "half-base binomial sum = T_0 theta sum = q -> q^(-1/2) image of the q^2 identity"),
    IdentityDescriptor("rr-n2-3.30", SERIES, (), _rr_n2,
                       "half-base double sum equals its Bailey-lemma bilateral sum"),
    IdentityDescriptor("pfaff-saalschutz-4.2", SERIES,
                       (Param("n", tuple(range(7)), _in(0, 6)), Param("A", (1, 2, 3, 4), _in(1, 4)),
                        Param("B", (1, 2, 3, 4), _in(1, 4)), Param("C", (1, 2, 3, 4), _in(1, 4))),
                       _saalschutz, "terminating balanced 3phi2 sum with a, b, c = q^A, q^B, q^C",
                       admissible=lambda p: saalschutz_admissible(p["n"], p["A"], p["B"], p["C"])),
    IdentityDescriptor("family-4.3", SERIES,
                       (Param("n", (0, 1, 2, 3), _in(0, 3)), Param("pair", ("gg", "ising", "rr"))),
                       _family43, "one-parameter generalization of the infinite Bailey lemma on the three pairs"),
    IdentityDescriptor("bailey-pair-3.13", EXACT_POLY, (Param("nu", (2, 3), _in(2, 4)),),
                       _bailey_pair(lambda p: f"gg{p['nu']}"),
                       "Göllnitz-Gordon alpha and multisum beta form a trinomial Bailey pair"),
    IdentityDescriptor("bailey-pair-3.18", EXACT_POLY, (), _bailey_pair(lambda p: "ising"),
                       "Ising alpha and binomial-sum beta form a trinomial Bailey pair"),
    IdentityDescriptor("bailey-pair-3.29", EXACT_POLY, (), _bailey_pair(lambda p: "rr"),
                       "half-base Rogers-Ramanujan alpha and beta form a trinomial Bailey pair"),
)

_BY_ID = {d.id: d for d in REGISTRY}
assert len(_BY_ID) == len(REGISTRY), "duplicate registry ids"


def list_identities() -> tuple[IdentityDescriptor, ...]:
    return REGISTRY


def get_identity(identity_id: str) -> IdentityDescriptor:
    try:
        return _BY_ID[identity_id]
    except KeyError:
        raise KeyError(f"unknown identity {identity_id!r}") from None


# -- verification driver -----------------------------------------------------------------------

class ParamError(ValueError):
    pass


def _resolve_params(desc: IdentityDescriptor, params: dict) -> dict:
    known = {p.name for p in desc.params} | ({"L"} if desc.mode == EXACT_POLY else set())
    unknown = sorted(set(params) - known)
    if unknown:
        raise ParamError(f"unknown parameters {unknown} for {desc.id}")
    out = {}
    for p in desc.params:
        v = params.get(p.name, p.desk[0])
        if not p.accepts(v):
            raise ParamError(f"{p.name}={v!r} outside the schema of {desc.id}")
        out[p.name] = v
    if "L" in params:
        if not _nonneg(params["L"]):
            raise ParamError("L must be a nonnegative integer")
        out["L"] = params["L"]
    if desc.admissible is not None and not desc.admissible(out):
        raise ParamError(f"parameters {out} make a denominator vanish")
    return out


def _first_mismatch(sides: tuple[QSeries, ...], order: int | None):
    """Lowest mismatch between sides[0] and any other side, or None."""
    best = None
    for other in sides[1:]:
        m = first_mismatch_exact(sides[0], other) if order is None else equal_to_order(sides[0], other, order)
        if m is True or m is None:
            continue
        if best is None or m.exponent < best.exponent:
            best = m
    return best


_BUILD_ERRORS = (ValueError, ArithmeticError, MultisumError, TruncationError,
                 NonInvertibleError, InexactDivisionError)


def check(desc: IdentityDescriptor, params: dict, order: int | None = None,
          lmax: int | None = None, corrupt: bool = False):
    """Run the comparison; returns (mismatch or None, params as recorded)."""
    if desc.mode == EXACT_POLY:
        if "L" in params:
            return _first_mismatch(desc.sides(params, None, corrupt), None), dict(params)
        top = DEFAULT_LMAX if lmax is None else lmax
        for L in range(top + 1):
            m = _first_mismatch(desc.sides({**params, "L": L}, None, corrupt), None)
            if m is not None:
                return m, {**params, "lmax": top, "L": L}
        return None, {**params, "lmax": top}
    order = DEFAULT_ORDER if order is None else order
    for stage in sorted({min(PROBE_ORDER, order), order}):
        m = _first_mismatch(desc.sides(params, stage, corrupt), stage)
        if m is not None:
            return m, dict(params)
    return None, dict(params)


def verify_identity(identity_id: str, params: dict | None = None, order: int | None = None,
                    lmax: int | None = None, corrupt: bool = False) -> Certificate:
    """Build both sides of a registered identity, compare them and certify the outcome."""
    desc = get_identity(identity_id)
    start = time.perf_counter()
    params = dict(params or {})
    trunc = None if desc.mode == EXACT_POLY else (DEFAULT_ORDER if order is None else order)
    if trunc is not None and trunc < 0:
        return _cert(desc, params, trunc, ERROR, None, start, "order must be nonnegative")
    if lmax is not None and lmax < 0:
        return _cert(desc, params, trunc, ERROR, None, start, "lmax must be nonnegative")
    try:
        resolved = _resolve_params(desc, params)
        mismatch, recorded = check(desc, resolved, trunc, lmax, corrupt)
    except (ParamError, *_BUILD_ERRORS) as exc:
        return _cert(desc, params, trunc, ERROR, None, start, f"{type(exc).__name__}: {exc}")
    if mismatch is None:
        return _cert(desc, recorded, trunc, PASS, None, start)
    return _cert(desc, recorded, trunc, FAIL,
                 mismatch_dict(mismatch.exponent, mismatch.lhs, mismatch.rhs), start)


def _cert(desc, params, trunc, status, mismatch, start, detail: str = "") -> Certificate:
    elapsed = int(round((time.perf_counter() - start) * 1000))
    return Certificate(desc.id, params, desc.mode, trunc, status, mismatch, elapsed, __version__,
                       detail=detail)


def desk_jobs() -> list[tuple[str, dict, int | None]]:
    """Every (id, params, lmax) instance of the desk suite, in a fixed order."""
    jobs = []
    for desc in REGISTRY:
        lmax = desc.desk_lmax if desc.mode == EXACT_POLY else None
        for point in desc.desk_points():
            jobs.append((desc.id, point, lmax))
    return jobs


def certificate_name(identity_id: str, params: dict) -> str:
    tail = "_".join(f"{k}{params[k]}" for k in sorted(params))
    return f"{identity_id}{'__' + tail if tail else ''}.json"
