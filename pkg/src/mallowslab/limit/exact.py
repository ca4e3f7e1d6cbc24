"""Exact computations by enumerating S_n (n <= 8)."""

from __future__ import annotations

__all__ = [
    "ENUMERATION_BUDGET", "BudgetError", "perm_table", "inversion_table", "pmf_table",
    "exact_sat_prob", "tv_exact_mallows", "tv_tgeo_uniform", "pushforward",
]

import math
from collections import defaultdict
from collections.abc import Callable, Hashable
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

import numpy as np

from ..logic.evaluate import evaluate_batch
from ..logic.formula import Formula
from ..mallows import MallowsParams, normalizing_constant, tgeo_pmf
from ..perm import all_perms

ENUMERATION_BUDGET = 8


class BudgetError(ValueError):
    pass


def _check(n: int) -> None:
    if not 0 <= n <= ENUMERATION_BUDGET:
        raise BudgetError(f"enumeration budget: n={n} exceeds {ENUMERATION_BUDGET}")


@lru_cache(maxsize=None)
def perm_table(n: int) -> np.ndarray:
    """All of S_n as a read-only ``(n!, n)`` array in lexicographic order."""
    _check(n)
    out = np.array(all_perms(n), dtype=np.int64).reshape(math.factorial(n), n)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def inversion_table(n: int) -> np.ndarray:
    p = perm_table(n)
    inv = np.zeros(len(p), dtype=np.int64)
    for i in range(n):
        inv += (p[:, i : i + 1] > p[:, i + 1 :]).sum(axis=1)
    inv.setflags(write=False)
    return inv


def pmf_table(n: int, q) -> np.ndarray | list:
    """Mallows(n, q) mass of every row of :func:`perm_table`; a list of Fractions for rational ``q``."""
    MallowsParams(n, q)
    inv = inversion_table(n)
    if isinstance(q, Rational):
        z = normalizing_constant(n, q)
        qf = Fraction(q)
        powers = [qf**k / z for k in range(int(inv.max(initial=0)) + 1)]
        return [powers[k] for k in inv]
    if q == 1:
        return np.full(len(inv), 1.0 / math.factorial(n))
    logw = inv * math.log(q)
    logw -= logw.max()
    w = np.exp(logw)
    return w / w.sum()


def exact_sat_prob(sentence: Formula, n: int, q):
    """``P(Pi_n |= sentence)`` for ``Pi_n ~ Mallows(n, q)``; a Fraction when ``q`` is rational."""
    if sentence.free:
        raise ValueError(f"not a sentence: free variables {sorted(sentence.free)}")
    MallowsParams(n, q)
    sat = evaluate_batch(perm_table(n), sentence)
    pmf = pmf_table(n, q)
    if isinstance(pmf, list):
        return sum((w for w, s in zip(pmf, sat) if s), Fraction(0))
    return float(pmf[sat].sum())


def tv_exact_mallows(n: int, q1, q2):
    """Total variation distance between Mallows(n, q1) and Mallows(n, q2)."""
    a, b = pmf_table(n, q1), pmf_table(n, q2)
    if isinstance(a, list) and isinstance(b, list):
        return sum((abs(x - y) for x, y in zip(a, b)), Fraction(0)) / 2
    return 0.5 * float(np.abs(np.asarray(a, dtype=float) - np.asarray(b, dtype=float)).sum())


def tv_tgeo_uniform(m: int, q):
    """Total variation distance between TGeo(m, 1 - q) and the uniform law on ``[m]``."""
    if m < 1:
        raise ValueError("m must be at least 1")
    if q == 1:
        return Fraction(0) if isinstance(q, Rational) else 0.0
    pmf = tgeo_pmf(m, 1 - q)
    if isinstance(pmf, list):
        return sum((abs(w - Fraction(1, m)) for w in pmf), Fraction(0)) / 2
    return 0.5 * float(np.abs(pmf - 1.0 / m).sum())


def pushforward(n: int, q, statistic: Callable[[tuple[int, ...]], Hashable]) -> dict:
    """Exact law of ``statistic(Pi_n)`` as a dict value -> mass."""
    out: dict = defaultdict(int)
    pmf = pmf_table(n, q)
    for row, w in zip(perm_table(n), pmf):
        out[statistic(tuple(int(v) for v in row))] += w
    return dict(out)
