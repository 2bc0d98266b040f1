"""Numeric evaluation of the half-base double sum near q = 1.

The double sum sum_{L,j} q^((L+j^2)/2) (-1)_L/(q)_L [L+j; 2j]_{sqrt q} has
nonnegative terms, so evaluating it at q = e^(-t) over the box
(L + j^2)/2 <= order, with a rigorous bound on the rest, is straightforward
in floating point. The log-domain evaluation keeps t down to about 0.05 safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

COS_PI_10 = math.cos(math.pi / 10)


@dataclass(frozen=True)
class AsymptoticResult:
    t: float
    order: int
    lhs_value: float
    rhs_value: float
    ratio: float
    tail_bound: float


class TailBoundError(RuntimeError):
    pass


def asymptotic_rhs(t: float) -> float:
    """sqrt(2/(5 pi t)) cos(pi/10) exp(9 pi^2/(20 t))."""
    return math.sqrt(2 / (5 * math.pi * t)) * COS_PI_10 * math.exp(9 * math.pi ** 2 / (20 * t))


def _log_poch(z: float, n: int) -> np.ndarray:
    """log (z; z)_k for k = 0..n."""
    k = np.arange(1, n + 1)
    return np.concatenate(([0.0], np.cumsum(np.log1p(-z ** k))))


def double_sum(t: float, order: int) -> tuple[float, float]:
    """Sum over (L + j^2)/2 <= order/4 (order in quarters) and a bound on the omitted terms."""
    if t <= 0:
        raise ValueError("t must be positive")
    q = math.exp(-t)
    s = math.sqrt(q)
    n_max = order // 4  # largest total power of q kept
    L_max = 2 * n_max
    j_max = math.isqrt(2 * n_max)
    ls = _log_poch(s, L_max + 2 * j_max + 1)
    # log((-1)_L / (q)_L) = log 2 + sum_{i=1}^{L-1} log(1+q^i) - log (q)_L
    i = np.arange(1, L_max + 1)
    lq = np.concatenate(([0.0], np.cumsum(np.log1p(-q ** i))))
    lplus = np.concatenate(([0.0, 0.0], np.cumsum(np.log1p(q ** i[:-1])))) if L_max else np.zeros(1)
    log_pref = np.where(np.arange(L_max + 1) > 0, math.log(2) + lplus[: L_max + 1], 0.0) - lq

    total = 0.0
    for j in range(j_max + 1):
        Ls = np.arange(j, L_max + 1)
        Ls = Ls[(Ls + j * j) <= 2 * n_max]
        if Ls.size == 0:
            continue
        # [L+j; 2j] in base s = (s)_{L+j} / ((s)_{2j} (s)_{L-j})
        log_bin = ls[Ls + j] - ls[2 * j] - ls[Ls - j]
        expo = -t * (Ls + j * j) / 2
        total += float(np.exp(expo + log_pref[Ls] + log_bin).sum())

    # each factor is at most 2(-q)_inf/(q)_inf * 1/(s; s)_inf, and the omitted
    # powers q^((L+j^2)/2) sum to at most the geometric tail below
    k = np.arange(1, 4000)
    log_c = (math.log(2) + np.log1p(q ** k).sum() - np.log1p(-q ** k).sum()
             - np.log1p(-s ** k).sum())
    tail = 0.0
    j = 0
    while True:
        first_L = max(j, 2 * n_max + 1 - j * j)
        term = math.exp(-t * (first_L + j * j) / 2) / (1 - s)
        tail += term
        # past j_max the terms shrink faster than geometrically
        if j > j_max and term <= 1e-20 * tail:
            break
        j += 1
    return total, math.exp(log_c) * tail


def asymptotic_check_331(t: float, order: int = 8000, tolerance: float = 1e-9) -> AsymptoticResult:
    """Evaluate the double sum at q = e^(-t) and compare with the exponential asymptotic form."""
    lhs, tail = double_sum(t, order)
    if not tail <= tolerance * lhs:
        raise TailBoundError(f"tail bound {tail:.3g} exceeds {tolerance:g} of the value {lhs:.6g}; "
                             f"raise the order above {order}")
    rhs = asymptotic_rhs(t)
    return AsymptoticResult(t, order, lhs, rhs, lhs / rhs, tail)
