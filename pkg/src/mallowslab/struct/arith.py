"""
Arithmetic encoded by digraphs on an ordered vertex set ``1..N``.

Four graphs ``D, E, T, W`` encode ``j = 2i``, ``j = 2**i``, ``j = T(i)`` and
``j = W(i)`` for ``i >= 1``, restricted to ``[N]``.  :func:`arith_check` is a
direct comparison against the defining recursions (base case ``i = 1`` maps
to ``2``; ``D`` steps by two, ``E`` doubles through ``D``, ``T`` exponentiates
through ``E``, ``W`` towers through ``T``).  :func:`arithmetic_graphs` builds
the graphs from closed forms, so the two code paths are independent.

Graph vertices are 0-based indices; vertex ``v`` stands for the number ``v + 1``.
"""

from __future__ import annotations

__all__ = [
    "ArithGraphs", "arithmetic_graphs", "arith_check", "even_size_oracle",
    "even_size_graph_check", "matching_check",
]

from collections.abc import Iterable
from typing import NamedTuple

from ..towers import MAX_TOWER, MAX_WOWZER, log_star_star, tower, wowzer
from .types import DirectedGraph


class ArithGraphs(NamedTuple):
    d: DirectedGraph
    e: DirectedGraph
    t: DirectedGraph
    w: DirectedGraph


def _graph(n: int, pairs: Iterable[tuple[int, int]]) -> DirectedGraph:
    return DirectedGraph(n, frozenset((i - 1, j - 1) for i, j in pairs if 1 <= i <= n and 1 <= j <= n))


def arithmetic_graphs(n: int) -> ArithGraphs:
    """Ground-truth graphs on ``N = n`` vertices."""
    rng = range(1, n + 1)
    d = [(i, 2 * i) for i in rng if 2 * i <= n]
    # 2**i <= n needs i < n.bit_length()
    e = [(i, 1 << i) for i in range(1, n.bit_length()) if (1 << i) <= n]
    t = [(i, tower(i)) for i in range(1, MAX_TOWER + 1) if i <= n and tower(i) <= n]
    w = [(i, wowzer(i)) for i in range(1, MAX_WOWZER + 1) if i <= n and wowzer(i) <= n]
    return ArithGraphs(_graph(n, d), _graph(n, e), _graph(n, t), _graph(n, w))


def _adjacency(g: DirectedGraph) -> dict[int, set[int]]:
    """1-based out-neighbourhoods."""
    out: dict[int, set[int]] = {i: set() for i in range(1, g.order + 1)}
    for u, v in g.arcs:
        out[u + 1].add(v + 1)
    return out


def _recursion_holds(adj: dict[int, set[int]], step: dict[int, set[int]], n: int) -> bool:
    """``arc(1, j) <=> j == 2`` and, for ``i >= 2``, ``arc(i, j) <=> exists j' (arc(i-1, j') and step(j', j))``."""
    if n >= 1 and adj[1] != ({2} if n >= 2 else set()):
        return False
    for i in range(2, n + 1):
        want = set().union(*(step[jp] for jp in adj[i - 1]))
        if adj[i] != want:
            return False
    return True


def arith_check(gd: DirectedGraph, ge: DirectedGraph, gt: DirectedGraph, gw: DirectedGraph) -> bool:
    n = gd.order
    if not (ge.order == gt.order == gw.order == n):
        raise ValueError("the four graphs must share the vertex set")
    d, e, t, w = (_adjacency(g) for g in (gd, ge, gt, gw))
    plus_two = {j: ({j + 2} if j + 2 <= n else set()) for j in range(1, n + 1)}
    return (
        _recursion_holds(d, plus_two, n)
        and _recursion_holds(e, d, n)
        and _recursion_holds(t, e, n)
        and _recursion_holds(w, t, n)
    )


def even_size_oracle(n: int) -> bool:
    """Whether ``log**(log**(n))`` is even."""
    return log_star_star(log_star_star(n)) % 2 == 0


def even_size_graph_check(gd: DirectedGraph, ge: DirectedGraph, gt: DirectedGraph, gw: DirectedGraph) -> bool:
    """Parity of ``log** log** N`` read off the graphs alone.

    Take the largest ``x`` with ``W``-arcs ``z -> y -> x``.  If ``x`` is the
    last vertex the answer is "``z`` is even"; otherwise it is "``z + 1`` is
    even"; evenness of ``z`` means a ``D``-arc into ``z``.  With no such ``x``
    (only when ``N <= 3``) the parity is even exactly when there is no third
    vertex.
    """
    if not arith_check(gd, ge, gt, gw):
        raise ValueError("graphs do not encode arithmetic")
    n = gd.order
    warcs = gw.arcs
    triples = [(x, y, z) for (y, x) in warcs for (z, y2) in warcs if y2 == y]
    if not triples:
        return n < 3
    x, _, z = max(triples)
    z_even = any(v == z for _, v in gd.arcs)
    return z_even if x == n - 1 else not z_even


def matching_check(g: DirectedGraph, part_a: Iterable[int], part_b: Iterable[int]) -> bool:
    """Whether ``g`` is a matching from ``B`` into ``A`` that leaves some ``A``-vertex free.

    Conditions: every ``B``-vertex has out-degree one, every ``A``-vertex has
    in-degree at most one, some ``A``-vertex has in-degree zero and every arc
    goes from ``B`` to ``A``.  Such a graph exists iff ``|A| > |B|``.
    """
    a, b = frozenset(part_a), frozenset(part_b)
    if a & b or (a | b) != frozenset(range(g.order)):
        raise ValueError("parts must partition the vertex set")
    return (
        all(g.out_degree(u) == 1 for u in b)
        and all(g.in_degree(v) <= 1 for v in a)
        and any(g.in_degree(v) == 0 for v in a)
        and all(u in b and v in a for u, v in g.arcs)
    )
