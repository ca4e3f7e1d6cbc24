"""
Structural statistics of a permutation ``p``.

* ``W_k(A)``: positions ``i`` with ``p(i), p(i)+1, ..., p(i)+k-1`` all in ``p[A]``.
* ``S(I, J)``: values ``v`` with ``v in p[I]`` and ``v + 1 in p[J]``.
* ``x(I, J)``: the smallest position of ``I`` whose image lies in ``S(I, J)``;
  ``y(I, J)`` is the position holding ``p(x) + 1``.
* ``e(Ical; J)``: the pair (argmin, argmax) of ``y(I_l, J)`` over the
  sequence ``Ical``, defined only when every ``S(I_l, J)`` is non-empty.
* ``H(Ical; Jcal)``: the digraph on ``Ical`` whose arcs are the defined
  ``e(Ical; J)`` for ``J`` in ``Jcal``.
* ``I_k(J)``: the gaps strictly between consecutive points of ``W_k(J)``.

Positions and values are 1-based.  Vertices of graphs are indices into the
interval sequence (0-based).
"""

from __future__ import annotations

__all__ = [
    "w_set", "w_count", "s_set", "xy_pair", "induced_edge", "induced_graph",
    "minimal_intervals", "j1", "k1",
]

import math
from collections.abc import Iterable, Sequence

from ..perm import inverse, prefix_rank
from .types import EMPTY, DirectedGraph, Interval, IntervalSeq


def _image_set(p: Sequence[int], a: Iterable[int]) -> set[int]:
    n = len(p)
    out = set()
    for i in a:
        if not 1 <= i <= n:
            raise ValueError(f"position {i} outside [1, {n}]")
        out.add(p[i - 1])
    return out


def w_set(p: Sequence[int], a: Iterable[int], k: int) -> list[int]:
    """``W_k(A)`` in increasing order."""
    if k < 1:
        raise ValueError("k must be at least 1")
    img = _image_set(p, a)
    return [i for i, v in enumerate(p, start=1) if all(v + t in img for t in range(k))]


def w_count(p: Sequence[int], a: Iterable[int], k: int) -> int:
    return len(w_set(p, a, k))


def _check_disjoint(*sets: frozenset[int]) -> None:
    seen: set[int] = set()
    for s in sets:
        if seen & s:
            raise ValueError("position sets must be pairwise disjoint")
        seen |= s


def s_set(p: Sequence[int], i_set: Iterable[int], j_set: Iterable[int]) -> set[int]:
    i_set, j_set = frozenset(i_set), frozenset(j_set)
    _check_disjoint(i_set, j_set)
    img_i, img_j = _image_set(p, i_set), _image_set(p, j_set)
    return {v for v in img_i if v + 1 in img_j}


def xy_pair(p: Sequence[int], i_set: Iterable[int], j_set: Iterable[int]) -> tuple[int, int] | None:
    """``(x(I, J), y(I, J))``, or ``None`` when ``S(I, J)`` is empty."""
    i_set = frozenset(i_set)
    s = s_set(p, i_set, j_set)
    if not s:
        return None
    x = min(i for i in i_set if p[i - 1] in s)
    y = inverse(p)[p[x - 1]]  # p^{-1}(p(x) + 1), 1-based value p(x) + 1 sits at index p(x)
    return x, y


def _check_family(ical: Sequence[Interval], j_sets: Sequence[frozenset[int]]) -> None:
    members = [frozenset(i) for i in ical]
    _check_disjoint(*members)
    whole = frozenset().union(*members) if members else frozenset()
    for j in j_sets:
        if whole & j:
            raise ValueError("each J must be disjoint from every interval of the sequence")


def _edge(p: Sequence[int], ical: Sequence[Interval], j: frozenset[int]) -> tuple[int, int] | None:
    if not ical:
        return None
    ys = []
    for interval in ical:
        xy = xy_pair(p, interval, j)
        if xy is None:
            return None
        ys.append(xy[1])
    # y-values are distinct: they are positions holding distinct images p(x) + 1
    assert len(set(ys)) == len(ys)
    return ys.index(min(ys)), ys.index(max(ys))


def induced_edge(p: Sequence[int], ical: Sequence[Interval], j: Iterable[int]) -> tuple[int, int] | None:
    """``e(Ical; J)`` as a pair of indices into ``ical``, or ``None`` if undefined."""
    j = frozenset(j)
    _check_family(ical, [j])
    return _edge(p, ical, j)


def induced_graph(p: Sequence[int], ical: Sequence[Interval], jcal: Sequence[Iterable[int]]) -> DirectedGraph:
    """``H(Ical; Jcal)``.  Undefined edges are skipped and loops (only possible with one vertex) dropped."""
    j_sets = [frozenset(j) for j in jcal]
    _check_family(ical, j_sets)
    arcs = set()
    for j in j_sets:
        e = _edge(p, ical, j)
        if e is not None and e[0] != e[1]:
            arcs.add(e)
    return DirectedGraph(len(ical), frozenset(arcs))


def minimal_intervals(p: Sequence[int], j: Interval | Iterable[int], k: int) -> IntervalSeq:
    """``I_k(J)``: gaps between consecutive points of ``W_k(J)``; adjacent points give ``EMPTY``."""
    w = w_set(p, j, k)
    out = []
    for a, b in zip(w, w[1:]):
        out.append(Interval(a + 1, b - 1) if b > a + 1 else EMPTY)
    return tuple(out)


def j1(p: Sequence[int]) -> float:
    """Least ``j`` with ``w_2([j]) >= 1``; ``math.inf`` when there is none (``n <= 1``)."""
    inv = inverse(p)
    # the pair of values (m, m + 1) is inside p[[j]] exactly when j >= max of their positions
    return min((max(inv[m - 1], inv[m]) for m in range(1, len(p))), default=math.inf)


def k1(p: Sequence[int]) -> int:
    if len(p) < 2:
        raise ValueError(f"K1 is undefined for n={len(p)} (needs n >= 2)")
    return int(j1(prefix_rank(p, int(j1(p)))))
