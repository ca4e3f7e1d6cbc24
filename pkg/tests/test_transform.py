"""Relativization, witness relativization and reversal, checked semantically."""

import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_formula, random_sentence
from mallowslab.logic import (
    LT1, LT2, Atom, Exists, Fresh, Signature, depth, evaluate, evaluate_batch, parse,
    relativize, relativize_to_witness, rename_free, reverse_formula,
)
from mallowslab.perm import all_perms, prefix_rank, reverse

S231 = parse("exists x. exists y. exists z. (x <1 y & y <1 z & z <2 x & x <2 y)")
IS_MAX = parse("~(exists w. z <1 w)")


def test_atoms_unchanged_and_toob_rejected():
    f = Atom(LT1, "x", "z")
    g, y = relativize(f)
    assert g == f and y not in ("x", "z")
    with pytest.raises(ValueError, match="TOTO only"):
        relativize(parse("exists x. R(x,x)"))
    with pytest.raises(ValueError, match="TOTO only"):
        reverse_formula(parse("R(x,y)"))


def test_relativize_rejects_free_name_and_renames_bound():
    with pytest.raises(ValueError):
        relativize(parse("x <1 y"), "y")
    g, y = relativize(parse("exists y. y <1 x"), "y")
    assert y == "y" and g.free == frozenset({"x", "y"})
    for p in all_perms(4):
        for j in range(1, 5):
            for i in range(1, j + 1):
                assert evaluate(p, g, {"y": j, "x": i}) == evaluate(prefix_rank(p, j), parse("exists y. y <1 x"), {"x": i})


def test_reverse_examples():
    assert reverse_formula(parse("x <2 y")) == parse("y <2 x")
    assert reverse_formula(parse("x <1 y")) == parse("x <1 y")


def test_rename_free_avoids_capture():
    f = parse("exists y. x <1 y")
    g = rename_free(f, {"x": "y"})
    assert g.free == frozenset({"y"})
    for p in all_perms(3):
        for j in range(1, 4):
            assert evaluate(p, g, {"y": j}) == evaluate(p, f, {"x": j})


def _relativize_case(rng: random.Random, p) -> bool:
    n = len(p)
    f = random_formula(rng, rng.randint(0, 2), ("x1", "x2"), Signature.TOTO, size=6)
    g, y = relativize(f)
    j = rng.randint(1, n)
    env = {v: rng.randint(1, j) for v in sorted(f.free)}
    return evaluate(p, g, {**env, y: j}) == evaluate(prefix_rank(p, j), f, env)


def _reverse_case(rng: random.Random, p) -> bool:
    n = len(p)
    f = random_formula(rng, rng.randint(0, 2), ("x1", "x2"), Signature.TOTO, size=6)
    env = {v: rng.randint(1, n) for v in sorted(f.free)}
    return evaluate(p, f, env) == evaluate(reverse(p), reverse_formula(f), env)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32), st.permutations(list(range(1, 7))))
def test_relativization_property(seed, p):
    assert _relativize_case(random.Random(seed), tuple(p))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32), st.permutations(list(range(1, 7))))
def test_reversal_property(seed, p):
    assert _reverse_case(random.Random(seed), tuple(p))


def test_reverse_is_involution_and_keeps_depth(rng):
    for _ in range(100):
        f = random_formula(rng, 2, ("x",), Signature.TOTO, size=8)
        r = reverse_formula(f)
        assert reverse_formula(r) == f
        assert depth(r) == depth(f) and r.free == f.free
        g, y = relativize(f)
        # y only occurs in quantifier guards
        assert depth(g) == depth(f)
        assert g.free == (f.free | {y} if depth(f) else f.free)


def test_witness_relativization_whole_domain_and_231():
    phi = relativize_to_witness(IS_MAX, S231)
    assert phi.free == frozenset()
    perms = all_perms(5)
    assert evaluate_batch(np.array(perms), phi).tolist() == evaluate_batch(np.array(perms), S231).tolist()


def test_witness_relativization_unsatisfied_is_false():
    never = parse("~z = z")
    phi = relativize_to_witness(never, parse("forall x. x = x"))
    assert not any(evaluate_batch(np.array(all_perms(4)), phi))


def test_witness_relativization_with_prefix_witness(rng):
    # xi(z): z holds the value 1, unique in every permutation
    xi = parse("~(exists w. w <2 z)")
    for _ in range(40):
        s = random_sentence(rng, 2, size=6)
        phi = relativize_to_witness(xi, s, Fresh())
        for p in all_perms(5)[::9]:
            j = p.index(1) + 1
            assert evaluate(p, phi) == evaluate(prefix_rank(p, j), s)


def test_witness_relativization_keeps_free_variables():
    f = parse("exists y. x <2 y")
    phi = relativize_to_witness(IS_MAX, f)
    assert phi.free == frozenset({"x"})
    for p in all_perms(4):
        for i in range(1, 5):
            assert evaluate(p, phi, {"x": i}) == evaluate(p, f, {"x": i})
