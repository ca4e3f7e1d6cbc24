"""Model checking.

:func:`evaluate` is the plain Tarskian recursion on one permutation, with a
memo on ``(subformula, values of its free variables)``.  It is the reference
implementation.

:func:`evaluate_table` evaluates a formula on a whole batch of permutations
at once with numpy.  Every variable name owns one array axis; a subformula's
value is a boolean array that is non-trivial only along the axes of its free
variables (other axes have length one), and a quantifier reduces its axis
with ``any``/``all``.  Atoms built from ``=`` and ``<1`` do not depend on the
permutation and are kept with a batch axis of length one.
"""

from __future__ import annotations

__all__ = ["UnboundVariableError", "evaluate", "evaluate_batch", "evaluate_table", "witnesses"]

import sys
from collections.abc import Mapping, Sequence

import numpy as np

from .formula import (
    EQ, LT1, LT2, R, And, Atom, Exists, ForAll, Formula, Iff, Implies, Not, Or,
    all_variables,
)

# elements per chunk in the batch evaluator
_CELL_BUDGET = 1 << 24
_MAX_AXES = 60


class UnboundVariableError(KeyError):
    pass


def _ensure_recursion(f: Formula) -> None:
    if sys.getrecursionlimit() < 20_000:
        sys.setrecursionlimit(20_000)


def evaluate(p: Sequence[int], f: Formula, assignment: Mapping[str, int] | None = None) -> bool:
    """Truth of ``f`` in the permutation ``p`` under ``assignment`` (1-based elements)."""
    n = len(p)
    env = dict(assignment or {})
    missing = f.free - env.keys()
    if missing:
        raise UnboundVariableError(f"unbound free variable(s) {sorted(missing)}")
    for v, a in env.items():
        if not 1 <= a <= n:
            raise ValueError(f"{v}={a} outside [1, {n}]")
    _ensure_recursion(f)
    memo: dict[tuple, bool] = {}
    order: dict[int, tuple[str, ...]] = {}
    dom = range(1, n + 1)

    def ev(g: Formula) -> bool:
        if isinstance(g, Atom):
            a, b = env[g.left], env[g.right]
            if g.rel == EQ:
                return a == b
            if g.rel == R:
                return p[a - 1] == b
            if g.rel == LT1:
                return a < b
            return p[a - 1] < p[b - 1]
        if isinstance(g, Not):
            return not ev(g.body)
        if isinstance(g, And):
            return ev(g.left) and ev(g.right)
        if isinstance(g, Or):
            return ev(g.left) or ev(g.right)
        if isinstance(g, Implies):
            return (not ev(g.left)) or ev(g.right)
        if isinstance(g, Iff):
            return ev(g.left) == ev(g.right)
        names = order.get(id(g))
        if names is None:
            names = order[id(g)] = tuple(sorted(g.free))
        key = (id(g), *(env[v] for v in names))
        hit = memo.get(key)
        if hit is not None:
            return hit
        saved = env.get(g.var)
        want = isinstance(g, Exists)
        out = not want
        for a in dom:
            env[g.var] = a
            if ev(g.body) == want:
                out = want
                break
        if saved is None:
            env.pop(g.var, None)
        else:
            env[g.var] = saved
        memo[key] = out
        return out

    return ev(f)


def _compact(f: Formula) -> Formula:
    """Alpha-rename bound variables onto as few names as possible.

    A binder takes the first name ``#0, #1, ...`` not used by another
    variable free in its body, so the number of distinct names (hence array
    axes) equals the largest number of simultaneously live variables.
    Shared subtrees stay shared when their free names map identically.
    """
    memo: dict[tuple, Formula] = {}

    def go(g: Formula, env: dict[str, str]) -> Formula:
        key = (id(g), tuple(sorted((v, env.get(v, v)) for v in g.free)))
        hit = memo.get(key)
        if hit is not None:
            return hit
        if isinstance(g, Atom):
            out = Atom(g.rel, env.get(g.left, g.left), env.get(g.right, g.right))
        elif isinstance(g, Not):
            out = Not(go(g.body, env))
        elif isinstance(g, (And, Or, Implies, Iff)):
            out = type(g)(go(g.left, env), go(g.right, env))
        else:
            live = {env.get(v, v) for v in g.body.free if v != g.var}
            k = 0
            while f"#{k}" in live:
                k += 1
            inner = dict(env)
            inner[g.var] = f"#{k}"
            out = type(g)(f"#{k}", go(g.body, inner))
        memo[key] = out
        return out

    return go(f, {})


def _width(f: Formula, pinned=()) -> int:
    """Largest number of unpinned free variables of any subformula (quantifier bodies included)."""
    best = 0
    stack = [f]
    seen = set()
    while stack:
        g = stack.pop()
        if id(g) in seen:
            continue
        seen.add(id(g))
        best = max(best, len(g.free - set(pinned)))
        if isinstance(g, Atom):
            continue
        if isinstance(g, (Not, Exists, ForAll)):
            stack.append(g.body)
        else:
            stack.extend((g.left, g.right))
    return best


def evaluate_table(
    perms: np.ndarray, f: Formula, free_order: Sequence[str] | None = None,
    fixed: Mapping[str, int] | None = None,
) -> np.ndarray:
    """Truth table of ``f`` over a batch.

    Returns a boolean array of shape ``(B, n, ..., n)`` with one axis per
    variable of ``free_order`` (default: sorted free variables); entry
    ``[b, i1 - 1, ...]`` is the truth value in ``perms[b]`` with the free
    variables set to ``i1, ...``.  Free variables listed in ``fixed`` take
    the given value and get no output axis.
    """
    perms = np.asarray(perms, dtype=np.int64)
    if perms.ndim == 1:
        perms = perms[None, :]
    batch, n = perms.shape
    fixed = {v: a for v, a in (fixed or {}).items() if v in f.free}
    for v, a in fixed.items():
        if not 1 <= a <= n:
            raise ValueError(f"{v}={a} outside [1, {n}]")
    open_vars = f.free - fixed.keys()
    free_order = tuple(sorted(open_vars)) if free_order is None else tuple(free_order)
    if set(free_order) != set(open_vars):
        raise ValueError(f"free_order {free_order} does not match free variables {sorted(f.free)}")
    _ensure_recursion(f)
    f = _compact(f)
    names = sorted(all_variables(f))
    if len(names) > _MAX_AXES:
        raise ValueError(f"formula uses {len(names)} variables; batch evaluation supports {_MAX_AXES}")
    axis = {v: k + 1 for k, v in enumerate(names)}
    ndim = len(names) + 1
    # after compaction no free name is also bound, so fixed variables can be pinned
    pinned = fixed
    width = _width(f, pinned.keys())
    chunk = max(1, _CELL_BUDGET // max(1, n**width))
    out_shape = (batch,) + (n,) * len(free_order)
    result = np.empty(out_shape, dtype=bool)
    for start in range(0, batch, chunk):
        block = perms[start : start + chunk]
        full = _table_block(block, n, f, axis, ndim, pinned)
        # move the free-variable axes into the requested order
        idx = [slice(None)] + [0] * (ndim - 1)
        for v in free_order:
            idx[axis[v]] = slice(None)
        sub = full[tuple(idx)]
        kept = sorted(free_order, key=axis.get)
        perm_axes = [0] + [1 + kept.index(v) for v in free_order]
        sub = np.transpose(sub, perm_axes)
        result[start : start + block.shape[0]] = np.broadcast_to(sub, (block.shape[0],) + out_shape[1:])
    return result


def _table_block(
    block: np.ndarray, n: int, f: Formula, axis: dict[str, int], ndim: int, pinned: Mapping[str, int],
) -> np.ndarray:
    values: dict[str, np.ndarray] = {}
    positions: dict[str, np.ndarray] = {}

    def shape_for(v: str, size_b: int) -> list[int]:
        shape = [size_b] + [1] * (ndim - 1)
        shape[axis[v]] = n
        return shape

    def pos(v: str) -> np.ndarray:
        if v not in positions:
            if v in pinned:
                positions[v] = np.full([1] * ndim, pinned[v])
            else:
                positions[v] = np.arange(1, n + 1).reshape(shape_for(v, 1))
        return positions[v]

    def img(v: str) -> np.ndarray:
        if v not in values:
            if v in pinned:
                col = block[:, pinned[v] - 1]
                values[v] = col.reshape([block.shape[0]] + [1] * (ndim - 1))
            else:
                values[v] = block.reshape(shape_for(v, block.shape[0]))
        return values[v]

    memo: dict[int, np.ndarray] = {}

    def ev(g: Formula) -> np.ndarray:
        hit = memo.get(id(g))
        if hit is not None:
            return hit
        if isinstance(g, Atom):
            a, b = g.left, g.right
            if g.rel == EQ:
                out = pos(a) == pos(b)
            elif g.rel == LT1:
                out = pos(a) < pos(b)
            elif g.rel == R:
                out = img(a) == pos(b)
            else:
                out = img(a) < img(b)
        elif isinstance(g, Not):
            out = ~ev(g.body)
        elif isinstance(g, And):
            out = ev(g.left) & ev(g.right)
        elif isinstance(g, Or):
            out = ev(g.left) | ev(g.right)
        elif isinstance(g, Implies):
            out = ~ev(g.left) | ev(g.right)
        elif isinstance(g, Iff):
            out = ev(g.left) == ev(g.right)
        else:
            body = ev(g.body)
            ax = axis[g.var]
            if body.shape[ax] == 1:
                # variable not free in the body: the quantifier is vacuous unless n == 0
                out = body if n > 0 else np.full(body.shape, isinstance(g, ForAll))
            elif isinstance(g, Exists):
                out = body.any(axis=ax, keepdims=True)
            else:
                out = body.all(axis=ax, keepdims=True)
        memo[id(g)] = out
        return out

    out = ev(f)
    if out.shape[0] != block.shape[0]:
        out = np.broadcast_to(out, (block.shape[0],) + out.shape[1:])
    return out


def evaluate_batch(perms: np.ndarray, f: Formula, assignment: Mapping[str, int] | None = None) -> np.ndarray:
    """Truth of ``f`` in each row of ``perms`` (shape ``(B, n)``) -> bool array ``(B,)``."""
    assignment = dict(assignment or {})
    missing = f.free - assignment.keys()
    if missing:
        raise UnboundVariableError(f"unbound free variable(s) {sorted(missing)}")
    return evaluate_table(perms, f, (), fixed=assignment)


def witnesses(p: Sequence[int], f: Formula) -> list[int]:
    """Elements ``j`` with ``p |= f[j]`` for a formula with exactly one free variable."""
    if len(f.free) != 1:
        raise ValueError("witnesses needs exactly one free variable")
    if len(p) == 0:
        return []
    row = evaluate_table(np.asarray([p]), f)[0]
    return [int(j) + 1 for j in np.flatnonzero(row)]
