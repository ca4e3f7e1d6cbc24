"""
Permutations of ``[n] = {1, ..., n}`` in one-line notation.

A permutation is a plain tuple ``p`` with ``p[i - 1]`` the image of ``i``.
The empty tuple is the unique permutation of the empty set.

>>> inversions((2, 3, 1))
2
>>> direct_sum((1,), (2, 1))
(1, 3, 2)
>>> prefix_rank((3, 1, 4, 2), 2)
(2, 1)
"""

__all__ = [
    "Perm", "as_perm", "identity", "inversions", "rank", "inverse", "reverse",
    "direct_sum", "prefix_rank", "compose", "cycle_counts", "all_perms",
    "parse_perm", "format_perm",
]

from collections.abc import Iterable, Sequence
from itertools import permutations
from typing import NewType

# one-line notation, images of 1..n
Perm = NewType("Perm", tuple[int, ...])


def as_perm(images: Iterable[int]) -> Perm:
    """Validate and freeze a sequence of images."""
    p = tuple(int(v) for v in images)
    if sorted(p) != list(range(1, len(p) + 1)):
        raise ValueError(f"not a permutation of [{len(p)}]: {p}")
    return Perm(p)


def identity(n: int) -> Perm:
    return Perm(tuple(range(1, n + 1)))


def inversions(p: Sequence[int]) -> int:
    """Number of pairs i < j with p(i) > p(j), counted with a Fenwick tree."""
    n = len(p)
    tree = [0] * (n + 1)
    seen = 0
    count = 0
    for v in p:
        # number of earlier values <= v
        le = 0
        i = v
        while i > 0:
            le += tree[i]
            i -= i & -i
        count += seen - le
        i = v
        while i <= n:
            tree[i] += 1
            i += i & -i
        seen += 1
    return count


def rank(xs: Sequence[float]) -> Perm:
    """Replace each entry by its position in sorted order."""
    order = sorted(range(len(xs)), key=xs.__getitem__)
    out = [0] * len(xs)
    for r, i in enumerate(order, start=1):
        if r > 1 and xs[order[r - 2]] == xs[i]:
            raise ValueError("entries are not distinct")
        out[i] = r
    return Perm(tuple(out))


def inverse(p: Sequence[int]) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p, start=1):
        out[v - 1] = i
    return Perm(tuple(out))


def reverse(p: Sequence[int]) -> Perm:
    """Left composition with the reversal ``i -> n - i + 1`` (flips images)."""
    n = len(p)
    return Perm(tuple(n - v + 1 for v in p))


def compose(p: Sequence[int], s: Sequence[int]) -> Perm:
    """``(p o s)(i) = p(s(i))``."""
    if len(p) != len(s):
        raise ValueError("length mismatch")
    return Perm(tuple(p[v - 1] for v in s))


def direct_sum(p: Sequence[int], s: Sequence[int]) -> Perm:
    n = len(p)
    return Perm(tuple(p) + tuple(v + n for v in s))


def prefix_rank(p: Sequence[int], j: int) -> Perm:
    """Pattern formed by the first ``j`` images."""
    if not 0 <= j <= len(p):
        raise ValueError(f"prefix length {j} out of range for n={len(p)}")
    return rank(p[:j])


def cycle_counts(p: Sequence[int]) -> list[int]:
    """``counts[i - 1]`` is the number of ``i``-cycles."""
    n = len(p)
    counts = [0] * n
    seen = [False] * (n + 1)
    for start in range(1, n + 1):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = p[i - 1]
            length += 1
        counts[length - 1] += 1
    return counts


def all_perms(n: int) -> list[Perm]:
    """All of S_n in lexicographic order."""
    return [Perm(t) for t in permutations(range(1, n + 1))]


def parse_perm(text: str) -> Perm:
    """Parse comma separated one-line notation, e.g. ``"2,3,1"``; ``""`` is S_0."""
    text = text.strip()
    if not text:
        return Perm(())
    try:
        return as_perm(int(tok) for tok in text.split(","))
    except ValueError as exc:
        raise ValueError(f"bad permutation {text!r}: {exc}") from None


def format_perm(p: Sequence[int]) -> str:
    return ",".join(str(v) for v in p)
