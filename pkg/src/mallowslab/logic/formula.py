"""First-order formulas over permutations.

Two signatures are supported.  ``TOOB`` has the single binary relation ``R``
with ``R(x, y)`` iff ``p(x) = y``.  ``TOTO`` has two orders: ``x <1 y`` iff
``x < y`` (positions) and ``x <2 y`` iff ``p(x) < p(y)`` (images).  Equality
is available in both.
"""

from __future__ import annotations

__all__ = [
    "Signature", "Formula", "Atom", "Not", "And", "Or", "Implies", "Iff",
    "Exists", "ForAll", "EQ", "R", "LT1", "LT2", "conj", "disj", "exists",
    "forall", "le1", "free_variables", "all_variables", "depth", "relations",
    "signature_of", "check_signature", "Fresh", "node_count",
]

import enum
from dataclasses import dataclass, field
from functools import cached_property
from itertools import count


class Signature(enum.Enum):
    TOOB = "toob"
    TOTO = "toto"

    @property
    def relations(self) -> frozenset[str]:
        return frozenset({EQ, R}) if self is Signature.TOOB else frozenset({EQ, LT1, LT2})


EQ, R, LT1, LT2 = "=", "R", "<1", "<2"


class Formula:
    """Base class; concrete nodes are frozen dataclasses."""

    __slots__ = ()

    @cached_property
    def free(self) -> frozenset[str]:
        return _free(self)

    def __and__(self, other: Formula) -> Formula:
        return And(self, other)

    def __or__(self, other: Formula) -> Formula:
        return Or(self, other)

    def __invert__(self) -> Formula:
        return Not(self)

    def __str__(self) -> str:
        from .parser import render

        return render(self)


@dataclass(frozen=True, eq=True)
class Atom(Formula):
    rel: str
    left: str
    right: str

    def __post_init__(self):
        if self.rel not in (EQ, R, LT1, LT2):
            raise ValueError(f"unknown relation {self.rel!r}")


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class ForAll(Formula):
    var: str
    body: Formula


BINARY = (And, Or, Implies, Iff)
QUANTIFIERS = (Exists, ForAll)


def conj(*parts: Formula) -> Formula:
    """Left-nested conjunction; a single part is returned as is."""
    if not parts:
        raise ValueError("empty conjunction")
    out = parts[0]
    for f in parts[1:]:
        out = And(out, f)
    return out


def disj(*parts: Formula) -> Formula:
    if not parts:
        raise ValueError("empty disjunction")
    out = parts[0]
    for f in parts[1:]:
        out = Or(out, f)
    return out


def exists(*args) -> Formula:
    """``exists("x", "y", body)`` nests quantifiers left to right."""
    *names, body = args
    for v in reversed(names):
        body = Exists(v, body)
    return body


def forall(*args) -> Formula:
    *names, body = args
    for v in reversed(names):
        body = ForAll(v, body)
    return body


def le1(x: str, y: str) -> Formula:
    """``x <=1 y`` spelled with primitives."""
    return Or(Atom(LT1, x, y), Atom(EQ, x, y))


def _free(f: Formula) -> frozenset[str]:
    if isinstance(f, Atom):
        return frozenset((f.left, f.right))
    if isinstance(f, Not):
        return f.body.free
    if isinstance(f, BINARY):
        return f.left.free | f.right.free
    return f.body.free - {f.var}


def free_variables(f: Formula) -> frozenset[str]:
    return f.free


def _children(f: Formula):
    if isinstance(f, Atom):
        return ()
    if isinstance(f, BINARY):
        return (f.left, f.right)
    return (f.body,)


def _walk(f: Formula):
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(_children(g))


def all_variables(f: Formula) -> set[str]:
    out: set[str] = set()
    for g in _walk(f):
        if isinstance(g, Atom):
            out.update((g.left, g.right))
        elif isinstance(g, QUANTIFIERS):
            out.add(g.var)
    return out


def relations(f: Formula) -> set[str]:
    return {g.rel for g in _walk(f) if isinstance(g, Atom)}


def node_count(f: Formula) -> int:
    return sum(1 for _ in _walk(f))


def depth(f: Formula) -> int:
    """Quantifier depth: atoms 0, connectives take the max, quantifiers add one."""
    memo: dict[int, int] = {}

    def go(g: Formula) -> int:
        key = id(g)
        if key in memo:
            return memo[key]
        if isinstance(g, Atom):
            d = 0
        elif isinstance(g, Not):
            d = go(g.body)
        elif isinstance(g, BINARY):
            d = max(go(g.left), go(g.right))
        else:
            d = go(g.body) + 1
        memo[key] = d
        return d

    return go(f)


def signature_of(f: Formula) -> Signature:
    """The signature a formula belongs to; pure-equality formulas count as TOTO."""
    rels = relations(f)
    if R in rels and rels & {LT1, LT2}:
        raise ValueError("formula mixes TOOB and TOTO relations")
    return Signature.TOOB if R in rels else Signature.TOTO


def check_signature(f: Formula, sig: Signature) -> None:
    bad = relations(f) - sig.relations
    if bad:
        raise ValueError(f"relation(s) {sorted(bad)} not in signature {sig.value}")


@dataclass
class Fresh:
    """Deterministic fresh-name supply: ``w1, w2, ...`` skipping names in ``avoid``."""

    avoid: set[str] = field(default_factory=set)
    _counter: count = field(default_factory=lambda: count(1), repr=False)

    def __call__(self, stem: str = "v") -> str:
        while True:
            name = f"{stem}{next(self._counter)}"
            if name not in self.avoid:
                self.avoid.add(name)
                return name
