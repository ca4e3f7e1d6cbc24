"""Monte Carlo estimation of satisfaction probabilities.

Samples are generated in fixed-size blocks.  Block ``b`` at size ``n`` draws
from ``replica_rng(seed, n, b)``, so the estimate depends only on the
configuration and the seed: the worker count only changes which process
computes a block, and the per-block success counts are summed exactly.

The reported interval is the normal approximation
``p_hat +- 1.96 * sqrt(p_hat * (1 - p_hat) / N)``.
"""

from __future__ import annotations

__all__ = [
    "BLOCK_SIZE", "QSchedule", "ExperimentConfig", "SatEstimate", "estimate_sat_prob",
    "DisplacementCheck", "displacement_bound_check",
]

import math
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..logic.evaluate import evaluate_batch
from ..logic.formula import Formula
from ..mallows import MallowsParams, replica_rng, sample_mallows_batch
from ..towers import log_star

BLOCK_SIZE = 10_000
Z95 = 1.959963984540054

_KINDS = ("fixed", "one-minus-c-over-n4", "one-minus-c-over-n", "logstar-band")


@dataclass(frozen=True)
class QSchedule:
    """A rule ``n -> q(n)``.

    ============================  ==========================
    ``fixed``                     ``q = param``
    ``one-minus-c-over-n4``       ``q = 1 - param / n**4``
    ``one-minus-c-over-n``        ``q = 1 - param / n``
    ``logstar-band``              ``q = 1 + param / log*(n)`` with ``param`` = +1 or -1
    ============================  ==========================
    """

    kind: str
    param: float | Fraction = 1

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown schedule {self.kind!r}; expected one of {_KINDS}")
        if self.kind == "logstar-band" and self.param not in (1, -1):
            raise ValueError("logstar-band needs sign +1 or -1")

    @classmethod
    def fixed(cls, q) -> QSchedule:
        return cls("fixed", q)

    @classmethod
    def parse(cls, text: str) -> QSchedule:
        """``0.5``, ``fixed:1/2``, ``n4:1``, ``n:2``, ``logstar:+1``."""
        kind, _, arg = text.partition(":")
        if not arg:
            kind, arg = "fixed", text
        kind = {"n4": "one-minus-c-over-n4", "n": "one-minus-c-over-n", "logstar": "logstar-band"}.get(kind, kind)
        value = Fraction(arg) if "/" in arg else float(arg)
        return cls(kind, value)

    def __call__(self, n: int):
        c = self.param
        if self.kind == "fixed":
            q = c
        elif self.kind == "one-minus-c-over-n4":
            q = 1 - c / n**4
        elif self.kind == "one-minus-c-over-n":
            q = 1 - c / n
        else:
            ls = log_star(n)
            if ls == 0:
                raise ValueError("logstar-band is undefined at n = 1 (log* 1 = 0)")
            q = 1 + c / ls
        if not q > 0:
            raise ValueError(f"schedule {self.kind}({c}) gives q = {q} <= 0 at n = {n}")
        return q

    def __str__(self) -> str:
        return f"{self.kind}:{self.param}"


@dataclass(frozen=True)
class ExperimentConfig:
    sentence: Formula
    schedule: QSchedule
    sizes: Sequence[int]
    samples: int
    seed: int
    workers: int = 1

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        if not self.sizes:
            raise ValueError("sizes must be nonempty")
        if len(set(self.sizes)) != len(self.sizes):
            raise ValueError("sizes must be distinct")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")
        if self.sentence.free:
            raise ValueError(f"not a sentence: free variables {sorted(self.sentence.free)}")
        for n in self.sizes:
            if n < 0:
                raise ValueError("sizes must be nonnegative")
            self.schedule(n)


@dataclass(frozen=True)
class SatEstimate:
    n: int
    q: float
    p_hat: float
    half_width_95: float
    samples: int
    successes: int = field(default=0, repr=False)

    @property
    def ci(self) -> tuple[float, float]:
        return max(0.0, self.p_hat - self.half_width_95), min(1.0, self.p_hat + self.half_width_95)


def _block_successes(task: tuple) -> int:
    sentence, n, q, seed, block, size = task
    rng = replica_rng(seed, n, block)
    perms = sample_mallows_batch(MallowsParams(n, q), size, rng)
    return int(evaluate_batch(perms, sentence).sum())


def _tasks(config: ExperimentConfig) -> list[tuple]:
    out = []
    for n in config.sizes:
        q = float(config.schedule(n))
        for b, start in enumerate(range(0, config.samples, BLOCK_SIZE)):
            out.append((config.sentence, n, q, config.seed, b, min(BLOCK_SIZE, config.samples - start)))
    return out


def estimate_sat_prob(config: ExperimentConfig) -> dict[int, SatEstimate]:
    """Per-size estimates, keyed by ``n`` in the order of ``config.sizes``."""
    tasks = _tasks(config)
    if config.workers == 1 or len(tasks) == 1:
        counts = [_block_successes(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            counts = list(pool.map(_block_successes, tasks))
    total: dict[int, int] = {n: 0 for n in config.sizes}
    for t, c in zip(tasks, counts):
        total[t[1]] += c
    out = {}
    for n in config.sizes:
        p = total[n] / config.samples
        hw = Z95 * math.sqrt(p * (1 - p) / config.samples)
        out[n] = SatEstimate(n, float(config.schedule(n)), p, hw, config.samples, total[n])
    return out


@dataclass(frozen=True)
class DisplacementCheck:
    n: int
    q: float
    mean: float
    std_error: float
    bound: float
    samples: int

    @property
    def passed(self) -> bool:
        return self.mean <= self.bound + 3 * self.std_error

    def __bool__(self) -> bool:
        return self.passed


def displacement_bound_check(n: int, q: float, samples: int, seed: int) -> DisplacementCheck:
    """Compare the sample mean of ``|Pi(1) - 1|`` with ``min(2q / (1 - q), n - 1)``."""
    if not 0 < q < 1:
        raise ValueError("the displacement bound needs 0 < q < 1")
    if n < 1 or samples < 1:
        raise ValueError("n and samples must be positive")
    disp = np.empty(samples, dtype=np.int64)
    for b, start in enumerate(range(0, samples, BLOCK_SIZE)):
        size = min(BLOCK_SIZE, samples - start)
        perms = sample_mallows_batch(MallowsParams(n, q), size, replica_rng(seed, n, b))
        disp[start : start + size] = perms[:, 0] - 1
    se = float(disp.std(ddof=1) / math.sqrt(samples)) if samples > 1 else 0.0
    return DisplacementCheck(n, q, float(disp.mean()), se, min(2 * q / (1 - q), n - 1), samples)
