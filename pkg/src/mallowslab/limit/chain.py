"""The regeneration chain of a Mallows(N, q) stream.

For a stream with codes ``Z_1, Z_2, ...`` let ``R_n`` be the last
regeneration time ``<= n``.  The chain state at time ``n`` is the pair

    ( d-type of the pattern Pi_{R_n},  tail codes Z_{R_n + 1}, ..., Z_n ).

Because the first ``R_n`` images are exactly ``{1..R_n}``, the images after
``R_n`` are obtained by decoding the tail codes on their own and shifting by
``R_n``.  Hence ``Pi_n = Pi_{R_n} (+) tail_pattern`` where ``tail_pattern``
is the permutation decoded from the tail codes, and by congruence of ``(+)``
the same holds up to ``d``-equivalence with any representative of the class.

Classes are carried forward without looking at the long prefix: at a new
regeneration time the new class is the type of ``rep (+) block`` where
``rep`` is the registered representative of the previous class and ``block``
the pattern of the last regeneration block.  The registry keeps the first
permutation seen for each type.
"""

from __future__ import annotations

__all__ = [
    "ChainState", "ChainTrace", "ChainVerificationError", "VERIFY_UP_TO", "tail_pattern",
    "chain_trace", "first_regeneration_times", "class_occupancy", "occupancy_tv",
]

from collections import Counter
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field

import numpy as np

from ..logic.ef import EFType, ef_equivalent, ef_type
from ..logic.formula import Signature
from ..mallows import RegenerativeStream, decode_insertion, replica_rng
from ..perm import Perm, direct_sum, prefix_rank, rank

VERIFY_UP_TO = 10


class ChainVerificationError(AssertionError):
    pass


@dataclass(frozen=True)
class ChainState:
    n: int
    regeneration_time: int
    class_label: EFType
    tail: tuple[int, ...]

    def __post_init__(self):
        if len(self.tail) != self.n - self.regeneration_time:
            raise ValueError("tail must hold the codes after the last regeneration time")

    @property
    def at_regeneration(self) -> bool:
        return not self.tail


def tail_pattern(tail: Sequence[int]) -> Perm:
    """Pattern of the images produced by ``tail`` codes right after a regeneration time."""
    if not tail:
        return Perm(())
    z = np.asarray(tail, dtype=np.int64)
    images = decode_insertion(z[None, :], universe=int(len(z) - 1 + z.max()))[0]
    return rank(images.tolist())


@dataclass
class ChainTrace:
    """Snapshots ``M_1, ..., M_{n_max}`` plus the class registry used to build them."""

    q: float
    d: int
    signature: Signature
    states: list[ChainState]
    registry: dict[EFType, Perm]
    images: list[int] = field(repr=False)

    def __len__(self) -> int:
        return len(self.states)

    def __getitem__(self, i):
        return self.states[i]

    def __iter__(self) -> Iterator[ChainState]:
        return iter(self.states)

    def rep(self, label: EFType) -> Perm:
        return self.registry[label]

    def regeneration_times(self) -> list[int]:
        return [s.n for s in self.states if s.at_regeneration]


def chain_trace(
    q: float, d: int, n_max: int, seed: int | None = None, *, rng: np.random.Generator | None = None,
    verify: bool = True, signature: Signature = Signature.TOTO,
    registry: dict[EFType, Perm] | None = None,
) -> ChainTrace:
    """Follow the chain along one stream up to ``n_max``.

    With ``verify`` every ``n <= VERIFY_UP_TO`` checks by EF types that the
    class label is the type of ``Pi_{R_n}`` and that
    ``Pi_n`` is ``d``-equivalent to ``rep (+) tail_pattern``.  ``registry`` may
    be shared between calls.
    """
    if not 0 < q < 1:
        raise ValueError("the chain needs 0 < q < 1")
    if d < 0:
        raise ValueError("d must be nonnegative")
    if rng is None:
        if seed is None:
            raise ValueError("give a seed or a generator")
        rng = replica_rng(seed)
    stream = RegenerativeStream(q, rng)
    stream.extend(n_max)
    regen = set(stream.regeneration_times)
    registry = {} if registry is None else registry

    def register(p: Perm) -> EFType:
        label = ef_type(p, d, signature)
        registry.setdefault(label, p)
        return label

    label = register(Perm(()))
    last = 0
    states = []
    for n in range(1, n_max + 1):
        if n in regen:
            block = Perm(tuple(v - last for v in stream.images[last:n]))
            label = register(direct_sum(registry[label], block))
            last = n
        tail = tuple(stream.z_record[last:n])
        state = ChainState(n, last, label, tail)
        if verify and n <= VERIFY_UP_TO:
            _verify(stream.images, state, registry[label], d, signature)
        states.append(state)
    return ChainTrace(q, d, signature, states, registry, list(stream.images))


def _verify(images: list[int], s: ChainState, rep: Perm, d: int, signature: Signature) -> None:
    prefix = prefix_rank(images, s.regeneration_time)
    if set(images[: s.regeneration_time]) != set(range(1, s.regeneration_time + 1)):
        raise ChainVerificationError(f"n={s.n}: prefix of length {s.regeneration_time} is not closed")
    if ef_type(prefix, d, signature) != s.class_label:
        raise ChainVerificationError(f"n={s.n}: class label differs from the type of the prefix")
    if s.at_regeneration != (s.regeneration_time == s.n):
        raise ChainVerificationError(f"n={s.n}: tail emptiness disagrees with regeneration")
    full = prefix_rank(images, s.n)
    if full != direct_sum(prefix, tail_pattern(s.tail)):
        raise ChainVerificationError(f"n={s.n}: tail codes do not decode to the suffix")
    if not ef_equivalent(full, direct_sum(rep, tail_pattern(s.tail)), d, signature):
        raise ChainVerificationError(f"n={s.n}: Pi_n is not {d}-equivalent to rep (+) tail")


def first_regeneration_times(q: float, runs: int, seed: int) -> np.ndarray:
    """``T_1`` of ``runs`` independent streams."""
    out = np.empty(runs, dtype=np.int64)
    for r in range(runs):
        out[r] = RegenerativeStream(q, replica_rng(seed, r)).next_regeneration()
    return out


def class_occupancy(
    q: float, d: int, sizes: Sequence[int], runs: int, seed: int, signature: Signature = Signature.TOTO,
) -> dict[int, Counter]:
    """Empirical law of the class label at each ``n`` in ``sizes`` over ``runs`` streams.

    One stream per run serves all sizes, so the laws are snapshots of the
    same chains.  Labels are canonical type digests and comparable across runs.
    """
    registry: dict[EFType, Perm] = {}
    out = {n: Counter() for n in sizes}
    n_max = max(sizes)
    for r in range(runs):
        trace = chain_trace(q, d, n_max, rng=replica_rng(seed, r), verify=False,
                            signature=signature, registry=registry)
        for n in sizes:
            out[n][trace[n - 1].class_label] += 1
    return out


def occupancy_tv(a: Counter, b: Counter) -> float:
    na, nb = sum(a.values()), sum(b.values())
    return 0.5 * sum(abs(a[k] / na - b[k] / nb) for k in set(a) | set(b))
