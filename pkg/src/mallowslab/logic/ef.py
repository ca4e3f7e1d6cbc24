"""Ehrenfeucht-Fraisse types and games.

The ``d``-type of a tuple ``a`` in ``p`` is the atomic diagram of ``a`` when
``d = 0`` and otherwise the set of ``(d-1)``-types of the extensions
``a + (e,)`` for all elements ``e``.  Two structures are ``d``-equivalent iff
their ``d``-types of the empty tuple coincide.  Types are compressed to
16-byte digests of a canonical encoding (children sorted and deduplicated),
so they compare equal across processes.

:func:`duplicator_wins` plays the game directly and is kept as an
independent check of the type computation.
"""

from __future__ import annotations

__all__ = ["EFBudgetError", "EFType", "EF_BUDGET", "atomic_diagram", "ef_type", "ef_equivalent", "duplicator_wins"]

import hashlib
from collections.abc import Sequence
from dataclasses import dataclass

from .formula import Signature

# largest n**d explored by one type computation
EF_BUDGET = 12**4


class EFBudgetError(ValueError):
    pass


@dataclass(frozen=True)
class EFType:
    signature: Signature
    depth: int
    digest: bytes

    def __str__(self) -> str:
        return f"{self.signature.value}:d{self.depth}:{self.digest.hex()[:12]}"


def _sig(signature) -> Signature:
    return Signature(signature) if isinstance(signature, str) else signature


def _cmp(a: int, b: int) -> int:
    return (a > b) - (a < b)


def atomic_diagram(p: Sequence[int], a: Sequence[int], signature=Signature.TOTO) -> tuple:
    """Canonical encoding of the atomic facts about the tuple ``a``."""
    sig = _sig(signature)
    k = len(a)
    if sig is Signature.TOTO:
        return tuple(
            (_cmp(a[i], a[j]), _cmp(p[a[i] - 1], p[a[j] - 1]))
            for i in range(k) for j in range(i + 1, k)
        )
    eq = tuple(a[i] == a[j] for i in range(k) for j in range(i + 1, k))
    rel = tuple(p[a[i] - 1] == a[j] for i in range(k) for j in range(k))
    return eq, rel


def _digest(obj) -> bytes:
    return hashlib.blake2b(repr(obj).encode(), digest_size=16).digest()


def ef_type(p: Sequence[int], d: int, signature=Signature.TOTO, assignment: Sequence[int] = ()) -> EFType:
    """The ``d``-round type of ``(p, assignment)``."""
    sig = _sig(signature)
    n = len(p)
    if d < 0:
        raise ValueError("d must be nonnegative")
    if n**d > EF_BUDGET:
        raise EFBudgetError(f"EF budget exceeded: n={n}, d={d} (n**d must be at most {EF_BUDGET})")
    for a in assignment:
        if not 1 <= a <= n:
            raise ValueError(f"element {a} outside [1, {n}]")
    memo: dict[tuple, bytes] = {}

    def go(a: tuple[int, ...], r: int) -> bytes:
        hit = memo.get(a)
        if hit is not None:
            return hit
        diag = atomic_diagram(p, a, sig)
        if r == 0:
            out = _digest(diag)
        else:
            kids = sorted({go(a + (e,), r - 1) for e in range(1, n + 1)})
            out = _digest((diag, tuple(kids)))
        memo[a] = out
        return out

    # tuples of one length always sit at the same remaining depth, so keying on a suffices
    return EFType(sig, d, go(tuple(assignment), d))


def ef_equivalent(p: Sequence[int], s: Sequence[int], d: int, signature=Signature.TOTO) -> bool:
    return ef_type(p, d, signature) == ef_type(s, d, signature)


def duplicator_wins(p: Sequence[int], s: Sequence[int], d: int, signature=Signature.TOTO) -> bool:
    """Solve the ``d``-round game by exhaustive search (small inputs only)."""
    sig = _sig(signature)
    np_, ns = len(p), len(s)

    def partial_iso(a: tuple, b: tuple) -> bool:
        return atomic_diagram(p, a, sig) == atomic_diagram(s, b, sig)

    def win(a: tuple, b: tuple, r: int) -> bool:
        if not partial_iso(a, b):
            return False
        if r == 0:
            return True
        for e in range(1, np_ + 1):
            if not any(win(a + (e,), b + (f,), r - 1) for f in range(1, ns + 1)):
                return False
        for f in range(1, ns + 1):
            if not any(win(a + (e,), b + (f,), r - 1) for e in range(1, np_ + 1)):
                return False
        return True

    return win((), (), d)
