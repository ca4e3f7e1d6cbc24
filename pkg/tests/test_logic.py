"""Formula syntax, rendering, depth and evaluation."""

import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import perms_of, random_formula, random_sentence
from mallowslab.logic import (
    EQ, LT1, LT2, R, And, Atom, Exists, ForAll, FormulaSyntaxError, Fresh, Iff, Implies, Not, Or,
    Signature, UnboundVariableError, depth, evaluate, evaluate_batch, evaluate_table,
    free_variables, node_count, parse, render, signature_of, succ_formula, witnesses,
)
from mallowslab.perm import all_perms, cycle_counts, identity

FIXED = "exists x. R(x,x)"
S231 = "exists x. exists y. exists z. (x <1 y & y <1 z & z <2 x & x <2 y)"


def contains_231(p):
    return any(p[c] < p[a] < p[b] for a, b, c in itertools.combinations(range(len(p)), 3))


# parsing ----------------------------------------------------------------------

def test_parse_fixed_point_sentence():
    assert parse(FIXED, "toob") == Exists("x", Atom(R, "x", "x"))


def test_parse_231_sentence_shape():
    f = parse(S231, Signature.TOTO)
    assert f == Exists("x", Exists("y", Exists("z", And(And(And(
        Atom(LT1, "x", "y"), Atom(LT1, "y", "z")), Atom(LT2, "z", "x")), Atom(LT2, "x", "y")))))
    assert free_variables(f) == frozenset()


def test_syntax_error_offset():
    with pytest.raises(FormulaSyntaxError) as exc:
        parse("R(x,")
    assert exc.value.offset == 4
    assert "offset 4" in str(exc.value)


@pytest.mark.parametrize("text", ["x <3 y", "exists . x = x", "x = y)", "(x = y", "~", "x <1"])
def test_syntax_errors(text):
    with pytest.raises(FormulaSyntaxError):
        parse(text)


def test_signature_checks():
    with pytest.raises(ValueError):
        parse("x <1 y", "toob")
    with pytest.raises(ValueError):
        parse("R(x,y)", "toto")
    assert signature_of(parse("x = y")) in (Signature.TOOB, Signature.TOTO)
    assert signature_of(parse("x <2 y")) is Signature.TOTO


def test_precedence_and_associativity():
    assert parse("~x = y & y = z | z = x") == Or(And(Not(Atom(EQ, "x", "y")), Atom(EQ, "y", "z")), Atom(EQ, "z", "x"))
    # implication is right associative, <-> binds loosest
    a, b, c = (Atom(EQ, v, v) for v in "abc")
    assert parse("a = a -> b = b -> c = c") == Implies(a, Implies(b, c))
    assert parse("a = a <-> b = b -> c = c") == Iff(a, Implies(b, c))
    # a quantifier reaches as far right as possible
    assert parse("exists x. x = x & y = y") == Exists("x", And(Atom(EQ, "x", "x"), Atom(EQ, "y", "y")))
    assert parse("(exists x. x = x) & y = y") == And(Exists("x", Atom(EQ, "x", "x")), Atom(EQ, "y", "y"))


def test_render_examples():
    assert render(parse(FIXED)) == "exists x. R(x,x)"
    f = And(Exists("x", Atom(EQ, "x", "x")), Atom(EQ, "y", "y"))
    assert parse(render(f)) == f


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32), st.integers(0, 3), st.sampled_from(list(Signature)))
def test_parse_render_round_trip(seed, d, sig):
    f = random_formula(random.Random(seed), d, ("x", "y"), sig, size=8)
    text = render(f)
    assert parse(text) == f
    assert render(parse(text)) == text


# depth ------------------------------------------------------------------------

def test_depth_examples():
    assert depth(Atom(EQ, "x", "y")) == 0
    assert depth(parse(FIXED)) == 1
    assert depth(parse(S231)) == 3
    assert depth(parse("(exists x. x = x) & forall y. forall z. y <1 z")) == 2
    assert depth(parse("~(exists x. x = x) -> (exists y. y = y)")) == 1


def test_node_count_shares_nothing_special():
    assert node_count(parse("x = y & ~y = x")) == 4


# evaluation -------------------------------------------------------------------

def test_evaluate_examples():
    fp, s231 = parse(FIXED), parse(S231)
    assert evaluate(identity(3), fp) is True
    assert evaluate((2, 3, 1), fp) is False
    assert evaluate((2, 3, 1), s231) is True


def test_evaluate_empty_structure():
    assert evaluate((), parse("exists x. x = x")) is False
    assert evaluate((), parse("forall x. ~x = x")) is True
    assert evaluate_batch(np.empty((2, 0), dtype=int), parse("forall x. ~x = x")).tolist() == [True, True]


def test_unbound_variable_and_range_errors():
    with pytest.raises(UnboundVariableError):
        evaluate((1, 2), parse("x <1 y"), {"x": 1})
    with pytest.raises(ValueError):
        evaluate((1, 2), parse("x = x"), {"x": 3})


def test_fixed_point_sentence_matches_cycle_counts_on_s5():
    fp = parse(FIXED)
    perms = all_perms(5)
    batch = evaluate_batch(np.array(perms), fp)
    assert batch.tolist() == [cycle_counts(p)[0] > 0 for p in perms]


def test_231_sentence_matches_pattern_search_on_s6():
    perms = all_perms(6)
    assert evaluate_batch(np.array(perms), parse(S231)).tolist() == [contains_231(p) for p in perms]


@pytest.mark.parametrize("order", [1, 2])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_succ_formula_on_s5(order, k):
    f = succ_formula(order, k, "x", "y")
    assert f.free == frozenset({"x", "y"})
    for p in all_perms(5)[::7]:
        table = evaluate_table(np.array([p]), f, ("x", "y"))[0]
        for i, j in itertools.product(range(1, 6), repeat=2):
            want = (i + k == j) if order == 1 else (p[i - 1] + k == p[j - 1])
            assert table[i - 1, j - 1] == want


def test_succ_formula_examples():
    assert evaluate((1, 2, 3), succ_formula(1, 1, "x", "y"), {"x": 1, "y": 2})
    assert evaluate((2, 3, 1), succ_formula(2, 1, "x", "y"), {"x": 1, "y": 2})
    f = succ_formula(1, 2, "x", "y")
    assert evaluate((1, 2, 3), f, {"x": 1, "y": 3}) and not evaluate((1, 2, 3), f, {"x": 1, "y": 2})
    with pytest.raises(ValueError):
        succ_formula(3, 1, "x", "y")


def test_fresh_is_deterministic_and_avoids():
    a, b = Fresh({"w1"}), Fresh({"w1"})
    names = [a("w") for _ in range(3)]
    assert names == [b("w") for _ in range(3)]
    assert "w1" not in names and len(set(names)) == 3


def test_witnesses():
    f = parse("~(exists y. y <2 x)")  # x holds the value 1
    assert witnesses((3, 1, 2), f) == [2]
    assert witnesses((), f) == []


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from(list(Signature)), st.integers(0, 5))
def test_batch_matches_tarskian(seed, sig, n):
    rng = random.Random(seed)
    f = random_formula(rng, rng.randint(0, 3), ("x", "y"), sig, size=8)
    perms = np.array(all_perms(n)) if n <= 4 else np.array([rng.sample(range(1, n + 1), n) for _ in range(10)])
    names = tuple(sorted(f.free))
    if n == 0:
        perms = perms.reshape(1, 0)
        if names:
            return
    table = evaluate_table(perms, f, names)
    for b, p in enumerate(perms.tolist()):
        for vals in itertools.product(range(1, n + 1), repeat=len(names)):
            env = dict(zip(names, vals))
            assert table[(b, *(v - 1 for v in vals))] == evaluate(p, f, env)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), perms_of(5, 1))
def test_fixed_assignment_matches_table(seed, p):
    rng = random.Random(seed)
    f = random_formula(rng, 2, ("x", "y"), Signature.TOTO, size=6)
    if f.free != {"x", "y"}:
        return
    n = len(p)
    table = evaluate_table(np.array([p]), f, ("x", "y"))[0]
    for i in range(1, n + 1):
        sub = evaluate_table(np.array([p]), f, ("y",), fixed={"x": i})[0]
        assert np.array_equal(sub, table[i - 1])


def test_sentences_from_helper_are_closed(rng):
    for _ in range(50):
        s = random_sentence(rng, 2)
        assert s.free == frozenset() and depth(s) <= 2
