"""Shared test helpers: random formulas and hypothesis strategies."""

from __future__ import annotations

import random

import pytest
from hypothesis import strategies as st

from mallowslab.logic import And, Atom, Exists, ForAll, Iff, Implies, Not, Or, Signature
from mallowslab.logic.formula import EQ, LT1, LT2, R

VARS = ("x", "y", "z", "u")
RELS = {Signature.TOTO: (EQ, LT1, LT2), Signature.TOOB: (EQ, R)}


def random_formula(rng: random.Random, depth: int, scope: tuple[str, ...], sig: Signature = Signature.TOTO,
                   size: int = 4):
    """A formula of quantifier depth at most ``depth`` whose free variables lie in ``scope``.

    ``scope`` may be empty only when ``depth > 0``; the root is then a quantifier.
    """
    rels = RELS[sig]
    if not scope or (depth > 0 and rng.random() < 0.45):
        if depth == 0:
            raise ValueError("no variables to build an atom from")
        v = rng.choice([w for w in VARS if w not in scope] or list(VARS))
        body = random_formula(rng, depth - 1, scope + (v,), sig, size)
        return (Exists if rng.random() < 0.5 else ForAll)(v, body)
    if size <= 1 or rng.random() < 0.3:
        return Atom(rng.choice(rels), rng.choice(scope), rng.choice(scope))
    r = rng.random()
    if r < 0.2:
        return Not(random_formula(rng, depth, scope, sig, size - 1))
    cls = rng.choice((And, Or, Implies, Iff, And, Or))
    return cls(random_formula(rng, depth, scope, sig, size // 2), random_formula(rng, depth, scope, sig, size // 2))


def random_sentence(rng: random.Random, depth: int, sig: Signature = Signature.TOTO, size: int = 4):
    return random_formula(rng, max(depth, 1), (), sig, size)


def perms_of(max_n: int, min_n: int = 0):
    return st.integers(min_n, max_n).flatmap(lambda n: st.permutations(list(range(1, n + 1)))).map(tuple)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


# acceptance report ----------------------------------------------------------------

ACCEPTANCE: dict[int, str] = {}


def report(criterion: int, ok: bool, detail: str) -> None:
    """Print and keep one PASS/FAIL line for an acceptance criterion, then assert it."""
    line = f"criterion {criterion:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE[criterion] = line
    print(line)
    assert ok, line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
