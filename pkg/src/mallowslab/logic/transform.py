"""Syntactic transformations of TOTO formulas.

All constructions draw bound variable names from a :class:`Fresh` supply, so
the same call always produces the same tree.
"""

from __future__ import annotations

__all__ = [
    "succ_formula", "rename_free", "relativize", "relativize_to_witness",
    "reverse_formula", "require_toto",
]

from collections.abc import Mapping

from .formula import (
    LT1, LT2, R, And, Atom, Exists, ForAll, Formula, Fresh, Iff, Implies,
    Not, Or, all_variables, conj, le1, relations,
)


def require_toto(f: Formula, what: str) -> None:
    if R in relations(f):
        raise ValueError(f"{what}: TOTO only (formula uses R)")


def succ_formula(order: int, k: int, x: str, y: str, fresh: Fresh | None = None) -> Formula:
    """``y`` is the ``k``-th successor of ``x`` in ``<1`` (order 1) or ``<2`` (order 2).

    ``succ^(1)(x, y) = x < y & ~exists w. (x < w & w < y)`` and
    ``succ^(k+1)(x, y) = exists w. (succ^(1)(w, y) & succ^(k)(x, w))``.
    """
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    if k < 1:
        raise ValueError("k must be at least 1")
    rel = LT1 if order == 1 else LT2
    fresh = fresh if fresh is not None else Fresh({x, y})
    fresh.avoid.update((x, y))

    def one(a: str, b: str) -> Formula:
        w = fresh("w")
        return And(Atom(rel, a, b), Not(Exists(w, And(Atom(rel, a, w), Atom(rel, w, b)))))

    def go(kk: int, a: str, b: str) -> Formula:
        if kk == 1:
            return one(a, b)
        w = fresh("w")
        return Exists(w, And(one(w, b), go(kk - 1, a, w)))

    return go(k, x, y)


def rename_free(f: Formula, mapping: Mapping[str, str]) -> Formula:
    """Replace free occurrences; bound variables that would capture a new name are renamed."""
    mapping = {a: b for a, b in mapping.items() if a != b and a in f.free}
    if not mapping:
        return f
    fresh = Fresh(all_variables(f) | set(mapping.values()) | set(mapping))

    def go(g: Formula, m: dict[str, str]) -> Formula:
        if not m or not (g.free & m.keys()):
            return g
        if isinstance(g, Atom):
            return Atom(g.rel, m.get(g.left, g.left), m.get(g.right, g.right))
        if isinstance(g, Not):
            return Not(go(g.body, m))
        if isinstance(g, (And, Or, Implies, Iff)):
            return type(g)(go(g.left, m), go(g.right, m))
        inner = {a: b for a, b in m.items() if a != g.var}
        var = g.var
        if var in inner.values():
            # the binder would capture a substituted name
            new = fresh(var)
            inner[var] = new
            var = new
        return type(g)(var, go(g.body, inner))

    return go(f, mapping)


def relativize(f: Formula, y: str | None = None, fresh: Fresh | None = None) -> tuple[Formula, str]:
    """``f`` relativized to the prefix ``{1..y}`` in ``<1``.

    Returns ``(f_le, y)`` where ``y`` is the new free variable.  For a
    permutation ``p`` and ``j`` in ``[n]``, ``p |= f_le[y := j, xs := is]``
    iff ``rank(p(1..j)) |= f[xs := is]`` whenever every ``i`` is at most ``j``.
    Quantifiers are guarded: ``exists x. g`` becomes
    ``exists x. ((x <1 y | x = y) & g_le)`` and ``forall x. g`` becomes
    ``forall x. ((x <1 y | x = y) -> g_le)``; atoms are unchanged because
    ranking a prefix preserves both orders.
    """
    require_toto(f, "relativize")
    used = all_variables(f)
    fresh = fresh if fresh is not None else Fresh(set(used))
    fresh.avoid.update(used)
    if y is None:
        y = fresh("y")
    elif y in f.free:
        raise ValueError(f"bound variable {y!r} is free in the formula")
    elif y in used:
        # y is bound somewhere inside: rename those binders first
        f = _rename_bound(f, y, fresh)

    def go(g: Formula) -> Formula:
        if isinstance(g, Atom):
            return g
        if isinstance(g, Not):
            return Not(go(g.body))
        if isinstance(g, (And, Or, Implies, Iff)):
            return type(g)(go(g.left), go(g.right))
        guard = le1(g.var, y)
        if isinstance(g, Exists):
            return Exists(g.var, And(guard, go(g.body)))
        return ForAll(g.var, Implies(guard, go(g.body)))

    return go(f), y


def _rename_bound(f: Formula, name: str, fresh: Fresh) -> Formula:
    def go(g: Formula) -> Formula:
        if isinstance(g, Atom):
            return g
        if isinstance(g, Not):
            return Not(go(g.body))
        if isinstance(g, (And, Or, Implies, Iff)):
            return type(g)(go(g.left), go(g.right))
        body = go(g.body)
        if g.var == name:
            new = fresh(name)
            return type(g)(new, rename_free(body, {name: new}))
        return type(g)(g.var, body)

    return go(f)


def relativize_to_witness(xi: Formula, f: Formula, fresh: Fresh | None = None) -> Formula:
    """``exists z. (xi(z) & x1 <=1 z & ... & f_le(z, xs))``.

    ``xi`` must have exactly one free variable.  When ``xi`` has a unique
    witness ``j``, the result holds iff the rank of ``p(1..j)`` satisfies ``f``
    (with the free variables of ``f`` at most ``j``).
    """
    require_toto(xi, "relativize_to_witness")
    require_toto(f, "relativize_to_witness")
    if len(xi.free) != 1:
        raise ValueError("witness formula must have exactly one free variable")
    (v,) = xi.free
    fresh = fresh if fresh is not None else Fresh(set())
    fresh.avoid.update(all_variables(xi) | all_variables(f))
    z = fresh("z")
    f_le, _ = relativize(f, z, fresh)
    parts = [rename_free(xi, {v: z})]
    parts += [le1(x, z) for x in sorted(f.free)]
    parts.append(f_le)
    return Exists(z, conj(*parts))


def reverse_formula(f: Formula) -> Formula:
    """Swap the arguments of every ``<2`` atom.

    ``p |= f`` iff ``reverse(p) |= reverse_formula(f)`` under the same assignment.
    """
    require_toto(f, "reverse_formula")

    def go(g: Formula) -> Formula:
        if isinstance(g, Atom):
            return Atom(LT2, g.right, g.left) if g.rel == LT2 else g
        if isinstance(g, Not):
            return Not(go(g.body))
        if isinstance(g, (And, Or, Implies, Iff)):
            return type(g)(go(g.left), go(g.right))
        return type(g)(g.var, go(g.body))

    return go(f)

