"""
Mallows(n, q) distributions: exact mass function and samplers.

``P(p) = q**inv(p) / Z(n, q)`` with ``Z(n, q) = prod_i (1 - q**i) / (1 - q)``.
Passing ``q`` as a :class:`fractions.Fraction` (or int) makes every quantity
here exact; floats are evaluated in log space with ``expm1``/``log1p`` so that
values of ``q`` within ``1e-8`` of one stay accurate.

Sampling follows the insertion construction: draw independent
``Z_i ~ TGeo(n - i + 1, 1 - q)`` and let ``p(i)`` be the ``Z_i``-th smallest
value not used yet.  The truncated geometric law

    P(Z = k) = (1 - q) q**(k-1) / (1 - q**m),   k in {1, ..., m},

is a probability distribution for every ``q > 0, q != 1``; for ``q == 1`` the
``Z_i`` are uniform instead.
"""

__all__ = [
    "MallowsParams", "replica_rng", "normalizing_constant", "log_normalizing_constant",
    "mallows_pmf", "tgeo_pmf", "sample_truncated_geometric", "sample_geometric",
    "decode_insertion", "sample_mallows", "sample_mallows_batch", "RegenerativeStream",
    "stream_prefix_ranks_batch",
]

import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational, Real

import numpy as np

from .perm import Perm, inversions, rank

_BATCH_CHUNK = 20_000
_CELL_CHUNK = 1 << 23


@dataclass(frozen=True)
class MallowsParams:
    n: int
    q: Real

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        if not self.q > 0:
            raise ValueError(f"q must be positive, got {self.q}")


def replica_rng(seed: int, *key: int) -> np.random.Generator:
    """Generator for replica ``key`` of a run; independent of worker layout."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=tuple(key)))


def _exact(q) -> bool:
    return isinstance(q, Rational)


def _log_qint(i: int, log_q: float) -> float:
    """log of [i]_q = (1 - q**i) / (1 - q) for q = exp(log_q) != 1."""
    return math.log(math.expm1(i * log_q) / math.expm1(log_q))


def normalizing_constant(n: int, q) -> float | Fraction:
    if q == 1:
        return math.factorial(n)
    if _exact(q):
        q = Fraction(q)
        out = Fraction(1)
        for i in range(1, n + 1):
            out *= (1 - q**i) / (1 - q)
        return out
    return math.exp(log_normalizing_constant(n, q))


def log_normalizing_constant(n: int, q: float) -> float:
    if q == 1:
        return math.lgamma(n + 1)
    log_q = math.log(q)
    return sum(_log_qint(i, log_q) for i in range(1, n + 1))


def mallows_pmf(params: MallowsParams, p: Sequence[int]):
    if len(p) != params.n:
        raise ValueError(f"permutation of length {len(p)} but n={params.n}")
    q = params.q
    k = inversions(p)
    if _exact(q):
        return Fraction(q) ** k / normalizing_constant(params.n, q)
    return math.exp(k * math.log(q) - log_normalizing_constant(params.n, q))


def tgeo_pmf(m: int, p) -> np.ndarray | list:
    """Mass of TGeo(m, p) on ``k = 1..m`` (index ``k - 1``).  Exact for rational ``p``."""
    if m < 1:
        raise ValueError("support size must be at least 1")
    if p == 0:
        raise ValueError("p = 0 is the uniform case; use the uniform branch")
    if p >= 1:
        raise ValueError("p must be < 1")
    if _exact(p):
        p = Fraction(p)
        z = 1 - (1 - p) ** m
        return [p * (1 - p) ** (k - 1) / z for k in range(1, m + 1)]
    log_q = math.log1p(-p)
    k = np.arange(m)
    # weights q**(k-1) scaled by the largest term to avoid overflow for q > 1
    logw = k * log_q
    logw -= logw.max()
    w = np.exp(logw)
    return w / w.sum()


def sample_truncated_geometric(m: int, p: float, rng: np.random.Generator, size=None):
    """Inverse-CDF draw(s) from TGeo(m, p), values in ``1..m``."""
    if m < 1:
        raise ValueError("support size must be at least 1")
    if p == 0:
        raise ValueError("p = 0 is the uniform case; use the uniform branch")
    if p >= 1:
        raise ValueError("p must be < 1")
    q = 1.0 - p
    reflect = q > 1
    if reflect:
        # m + 1 - Z ~ TGeo(m, 1 - 1/q)
        q = 1.0 / q
    log_q = math.log(q)
    u = 1.0 - rng.random(size)  # in (0, 1]
    # CDF(k) = (1 - q**k) / (1 - q**m); solve CDF(k - 1) < u <= CDF(k)
    k = np.ceil(np.log1p(u * np.expm1(m * log_q)) / log_q)
    k = np.clip(k, 1, m).astype(np.int64)
    if reflect:
        k = m + 1 - k
    return int(k) if size is None else k


def sample_geometric(q: float, rng: np.random.Generator, size=None):
    """Draw(s) from Geo(1 - q) on ``{1, 2, ...}``: P(Z = k) = (1 - q) q**(k-1)."""
    if not 0 < q < 1:
        raise ValueError("geometric parameter needs 0 < q < 1")
    u = 1.0 - rng.random(size)
    k = np.maximum(np.ceil(np.log(u) / math.log(q)), 1).astype(np.int64)
    return int(k) if size is None else k


def decode_insertion(z: np.ndarray, universe: int | None = None) -> np.ndarray:
    """Rows of codes -> rows of images; ``out[:, i]`` is the ``z[:, i]``-th smallest unused value.

    ``universe`` bounds the values; by default it is the row length, which
    turns valid TGeo codes into permutations of ``[n]``.
    """
    z = np.atleast_2d(z)
    rows, n = z.shape
    universe = n if universe is None else universe
    avail = np.ones((rows, universe), dtype=bool)
    out = np.empty((rows, n), dtype=np.int64)
    r = np.arange(rows)
    for i in range(n):
        c = np.cumsum(avail, axis=1, dtype=np.int32)
        idx = np.argmax(c >= z[:, i : i + 1], axis=1)
        out[:, i] = idx + 1
        avail[r, idx] = False
    return out


def sample_mallows(params: MallowsParams, rng: np.random.Generator) -> Perm:
    n, q = params.n, float(params.q)
    if n == 0:
        return Perm(())
    if q == 1.0:
        z = [int(rng.integers(1, n - i + 1)) for i in range(n)]
    else:
        z = [sample_truncated_geometric(n - i, 1.0 - q, rng) for i in range(n)]
    remaining = list(range(1, n + 1))
    return Perm(tuple(remaining.pop(k - 1) for k in z))


def sample_mallows_batch(params: MallowsParams, size: int, rng: np.random.Generator) -> np.ndarray:
    """``size`` independent samples as an int array of shape ``(size, n)``.

    For ``q == 1`` rows are argsorts of iid uniforms (the same uniform law as
    the insertion construction with uniform codes, at O(n log n) per row).
    """
    n, q = params.n, float(params.q)
    if n == 0:
        return np.empty((size, 0), dtype=np.int64)
    out = np.empty((size, n), dtype=np.int64)
    chunk = max(1, min(_BATCH_CHUNK, _CELL_CHUNK // n))
    for start in range(0, size, chunk):
        b = min(chunk, size - start)
        if q == 1.0:
            out[start : start + b] = np.argsort(rng.random((b, n)), axis=1) + 1
            continue
        z = np.empty((b, n), dtype=np.int64)
        for i in range(n):
            z[:, i] = sample_truncated_geometric(n - i, 1.0 - q, rng, size=b)
        out[start : start + b] = decode_insertion(z)
    return out


@dataclass
class RegenerativeStream:
    """Lazily extended Mallows(N, q) permutation of the positive integers.

    Position ``i`` receives the ``Z_i``-th smallest unused value with
    ``Z_i ~ Geo(1 - q)``.  ``t`` is a regeneration time when the first ``t``
    images are exactly ``{1..t}``, i.e. when the running maximum equals ``t``.
    """

    q: float
    rng: np.random.Generator
    z_record: list[int] = field(default_factory=list)
    images: list[int] = field(default_factory=list)
    running_max: int = 0
    regeneration_times: list[int] = field(default_factory=lambda: [0])
    # unused values below running_max, ascending
    _holes: list[int] = field(default_factory=list, repr=False)

    def __post_init__(self):
        if not 0 < self.q < 1:
            raise ValueError("regenerative construction needs 0 < q < 1")

    def _push(self, z: int) -> None:
        holes = self._holes
        if z <= len(holes):
            v = holes.pop(z - 1)
        else:
            v = self.running_max + z - len(holes)
            holes.extend(range(self.running_max + 1, v))
            self.running_max = v
        self.z_record.append(z)
        self.images.append(v)
        if not holes and self.running_max == len(self.images):
            self.regeneration_times.append(len(self.images))

    def extend(self, upto: int) -> None:
        need = upto - len(self.images)
        if need > 0:
            for z in sample_geometric(self.q, self.rng, size=need).tolist():
                self._push(z)

    def prefix_rank(self, n: int) -> Perm:
        self.extend(n)
        return rank(self.images[:n])

    def next_regeneration(self) -> int:
        """Smallest regeneration time after the last one recorded."""
        last = self.regeneration_times[-1]
        while self.regeneration_times[-1] == last:
            self._push(sample_geometric(self.q, self.rng))
        return self.regeneration_times[-1]


def stream_prefix_ranks_batch(q: float, n: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """Prefix patterns of ``size`` independent regenerative streams, shape ``(size, n)``."""
    out = np.empty((size, n), dtype=np.int64)
    for start in range(0, size, _BATCH_CHUNK):
        b = min(_BATCH_CHUNK, size - start)
        z = sample_geometric(q, rng, size=(b, n))
        # the i-th image is at most (i - 1) + Z_i
        images = decode_insertion(z, universe=int(n - 1 + z.max()))
        out[start : start + b] = np.argsort(np.argsort(images, axis=1), axis=1) + 1
    return out
