"""Small cycle counts of uniform permutations versus independent Poissons.

The distance compares the law of ``(C_1, ..., C_b)`` with the product of
``Poisson(1 / i)`` laws after clipping every count at ``cap + 1`` (the
overflow bucket ``> cap``).  Since

    TV = sum over cells of max(emp - poisson, 0)

only cells that were observed contribute, so no grid over all cells is built.
The reported half-width is the delta-method value
``1.96 * sqrt(A (1 - A) / N)`` with ``A`` the empirical mass of the cells
where the empirical law exceeds the Poisson one.
"""

from __future__ import annotations

__all__ = ["POISSON_CAP", "CycleDistance", "cycle_count_matrix", "poisson_marginals", "poisson_cycle_distance"]

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..mallows import replica_rng
from .exact import perm_table

POISSON_CAP = 10
_CELLS_PER_BLOCK = 1 << 23
Z95 = 1.959963984540054


@lru_cache(maxsize=None)
def _mobius(k: int) -> int:
    out, m, p = 1, k, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            out = -out
        p += 1
    return -out if m > 1 else out


def cycle_count_matrix(perms: np.ndarray, b: int) -> np.ndarray:
    """``out[r, i - 1]`` is the number of ``i``-cycles of ``perms[r]`` for ``i <= b``.

    Uses ``fix(p**d) = sum_{i | d} i * C_i`` and Mobius inversion.
    """
    perms = np.atleast_2d(np.asarray(perms, dtype=np.int64))
    rows, n = perms.shape
    if not 0 <= b <= n:
        raise ValueError(f"need 0 <= b <= n, got b={b}, n={n}")
    idx = (perms - 1).astype(np.int32)
    power = idx
    home = np.arange(n, dtype=np.int32)
    fix = np.zeros((rows, b + 1), dtype=np.int64)
    for d in range(1, b + 1):
        if d > 1:
            power = np.take_along_axis(idx, power, axis=1)
        fix[:, d] = (power == home).sum(axis=1)
    out = np.zeros((rows, b), dtype=np.int64)
    for i in range(1, b + 1):
        acc = sum(_mobius(i // d) * fix[:, d] for d in range(1, i + 1) if i % d == 0)
        out[:, i - 1] = acc // i
    return out


def poisson_marginals(b: int, cap: int = POISSON_CAP) -> np.ndarray:
    """Row ``i - 1`` is the ``Poisson(1 / i)`` law on ``0..cap`` plus the overflow mass."""
    out = np.zeros((b, cap + 2))
    for i in range(1, b + 1):
        lam = 1.0 / i
        pmf = [math.exp(-lam) * lam**k / math.factorial(k) for k in range(cap + 1)]
        out[i - 1, : cap + 1] = pmf
        out[i - 1, cap + 1] = max(0.0, -math.expm1(-lam) - sum(pmf[1:]))
    return out


@dataclass(frozen=True)
class CycleDistance:
    n: int
    b: int
    value: float
    half_width_95: float
    samples: int | None  # None for the exact computation


def _distance(cells: np.ndarray, weights: np.ndarray, b: int, cap: int) -> tuple[float, float]:
    """TV between the law putting ``weights`` on the rows of ``cells`` and the Poisson product."""
    marg = poisson_marginals(b, cap)
    if b == 0:
        return 0.0, 0.0
    uniq, inverse = np.unique(cells, axis=0, return_inverse=True)
    emp = np.bincount(inverse.reshape(-1), weights=weights, minlength=len(uniq))
    pois = np.prod(marg[np.arange(b), uniq], axis=1)
    excess = emp > pois
    return float((emp - pois)[excess].sum()), float(emp[excess].sum())


def poisson_cycle_distance(
    n: int, b: int, samples: int | None = None, seed: int | None = None, cap: int = POISSON_CAP,
) -> CycleDistance:
    """TV distance between ``(C_1..C_b)`` of a uniform element of S_n and the Poisson product.

    With ``samples=None`` the law of the counts is computed exactly by
    enumerating S_n (``n <= 8``); otherwise it is estimated from ``samples``
    uniform permutations drawn with ``seed``.
    """
    if not 0 <= b <= n:
        raise ValueError(f"need b <= n, got b={b}, n={n}")
    if samples is None:
        perms = perm_table(n)
        cells = np.minimum(cycle_count_matrix(perms, b), cap + 1)
        value, _ = _distance(cells, np.full(len(perms), 1.0 / len(perms)), b, cap)
        return CycleDistance(n, b, value, 0.0, None)
    if seed is None:
        raise ValueError("a seed is required for the sampled distance")
    if samples < 1:
        raise ValueError("samples must be positive")
    block = max(1, min(samples, _CELLS_PER_BLOCK // max(n, 1)))
    parts = []
    for k, start in enumerate(range(0, samples, block)):
        size = min(block, samples - start)
        rng = replica_rng(seed, n, k)
        perms = rng.permuted(np.broadcast_to(np.arange(1, n + 1), (size, n)), axis=1)
        parts.append(np.minimum(cycle_count_matrix(perms, b), cap + 1))
    cells = np.concatenate(parts)
    value, mass = _distance(cells, np.full(samples, 1.0 / samples), b, cap)
    return CycleDistance(n, b, value, Z95 * math.sqrt(mass * (1 - mass) / samples), samples)
