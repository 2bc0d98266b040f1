"""Series that ``trical expand`` can print, looked up by name.

Fixed names cover the limits and the fermionic sums. Characters take their
labels after a colon, half-integer labels doubled:

    virasoro:P,P',R,S        n1:P,P',R,S
    n2:P,2R,2S,SECTOR,2H     (y = q^(2H/4); prefix 2H with '-' for y = -q^...)
    n2-general:P,P',2R,2S,2H
"""

from __future__ import annotations

from .bailey import theorem2_prefactor
from .characters import (N1_35, N2_GENERAL_38, N2_LEVEL1_37, VIRASORO_34, CharacterLabel,
                         InvalidLabel, YSpec, chi_n1_super, chi_n2_general, chi_n2_level1,
                         chi_virasoro, is_certified)
from .identities import rr_product_sum
from .multisum import fermionic_multisum
from .pairs import gg_limit, ising_spec, outer_sum, series_box
from .qfunctions import limit_series
from .series import QSeries


def _fixed(name: str, order: int) -> QSeries:
    table = {
        "T1_limit": lambda: limit_series("T1_limit", order),
        "T0_pair_limit": lambda: limit_series("T0_pair_limit", order),
        "theorem2-prefactor": lambda: theorem2_prefactor(order),
        "gg-limit-nu2": lambda: gg_limit(2, order),
        "gg-limit-nu3": lambda: gg_limit(3, order),
        "ising-limit": lambda: fermionic_multisum(ising_spec("limit"), {"j": series_box(2 * order)}, order),
        "rr-a0": lambda: rr_product_sum(0, order),
        "rr-a1": lambda: rr_product_sum(1, order),
        "gg-double-sum-nu2": lambda: outer_sum("gg", order, 2),
        "ising-double-sum": lambda: outer_sum("ising", order),
        "rr-double-sum": lambda: outer_sum("rr", order),
    }
    return table[name]()


FIXED_NAMES = ("T1_limit", "T0_pair_limit", "theorem2-prefactor", "gg-limit-nu2", "gg-limit-nu3",
               "ising-limit", "rr-a0", "rr-a1", "gg-double-sum-nu2", "ising-double-sum", "rr-double-sum")


def _y(text: str) -> YSpec:
    v = int(text)
    return YSpec(-1 if text.startswith("-") else 1, abs(v))


def named_series(name: str, order: int) -> tuple[QSeries, str]:
    """The series and an optional note (e.g. that a character label is not established)."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    if name in FIXED_NAMES:
        return _fixed(name, order), ""
    kind, sep, rest = name.partition(":")
    if not sep:
        raise KeyError(f"unknown series {name!r}; fixed names: {', '.join(FIXED_NAMES)}")
    f = rest.split(",")
    try:
        if kind == "virasoro":
            p, pp, r, s = map(int, f)
            return chi_virasoro(CharacterLabel(VIRASORO_34, p, pp, 2 * r, 2 * s), order), ""
        if kind == "n1":
            p, pp, r, s = map(int, f)
            return chi_n1_super(CharacterLabel(N1_35, p, pp, 2 * r, 2 * s), order), ""
        if kind == "n2":
            p, r2, s2 = map(int, f[:3])
            label = CharacterLabel(N2_LEVEL1_37, p, 1, r2, s2, f[3])
            return chi_n2_level1(label, _y(f[4]), order), ""
        if kind == "n2-general":
            p, pp, r2, s2 = map(int, f[:4])
            label = CharacterLabel(N2_GENERAL_38, p, pp, r2, s2)
            note = "" if is_certified(label) else "UNCERTIFIED: formula established only for r = s = 1/2"
            return chi_n2_general(label, _y(f[4]), order), note
    except (IndexError, InvalidLabel, ZeroDivisionError) as exc:
        raise ValueError(f"bad series spec {name!r}: {exc}") from None
    raise KeyError(f"unknown series family {kind!r}")
