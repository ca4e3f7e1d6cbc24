"""Ehrenfeucht-Fraisse types against the game solver and against truth pools."""

import itertools
import random

import numpy as np
import pytest

from conftest import random_sentence
from mallowslab.logic import (
    EFBudgetError, Signature, atomic_diagram, duplicator_wins, ef_equivalent, ef_type, evaluate_batch,
)
from mallowslab.perm import all_perms, cycle_counts, direct_sum, identity

TOTO, TOOB = Signature.TOTO, Signature.TOOB


def test_examples():
    assert ef_equivalent(identity(3), identity(4), 2)
    assert not ef_equivalent((1, 2), (1, 2, 3), 2)
    assert not duplicator_wins((1, 2), (1, 2, 3), 2)
    assert ef_equivalent((2, 3, 1), (2, 3, 1), 3)


def test_budget():
    with pytest.raises(EFBudgetError, match="budget"):
        ef_type(identity(13), 4)
    ef_type(identity(12), 4)


def test_atomic_diagram_encodings():
    assert atomic_diagram((2, 1), (1, 2), TOTO) == ((-1, 1),)
    assert atomic_diagram((2, 1), (1, 2), TOOB) == ((False,), (False, True, True, False))


def test_depth_zero_classes():
    # with no pebbles every structure looks alike, except that the empty one has no elements
    assert ef_type((), 0) == ef_type((2, 1), 0)
    assert ef_type((), 1) != ef_type((1,), 1)


@pytest.mark.parametrize("sig", [TOTO, TOOB])
@pytest.mark.parametrize("d", [1, 2])
def test_types_agree_with_game_on_small_pools(sig, d):
    pool = all_perms(2) + all_perms(3) + [p for p in all_perms(4) if p[0] <= 2]
    types = {p: ef_type(p, d, sig) for p in pool}
    rng = random.Random(d)
    pairs = list(itertools.combinations(pool, 2))
    for p, s in rng.sample(pairs, 150):
        assert (types[p] == types[s]) == duplicator_wins(p, s, d, sig)


def test_identity_classes_match_game_d3():
    for m, n in [(7, 8), (6, 7), (7, 10)]:
        assert ef_equivalent(identity(m), identity(n), 3) == duplicator_wins(identity(m), identity(n), 3)


@pytest.mark.parametrize("d", [1, 2])
@pytest.mark.parametrize("sig", [TOTO, TOOB])
def test_soundness_against_truth_pool(d, sig):
    rng = random.Random(100 + d)
    sentences = [random_sentence(rng, d, sig, size=6) for _ in range(200)]
    perms = all_perms(4)
    truth = np.stack([evaluate_batch(np.array(perms), s) for s in sentences], axis=1)
    types = [ef_type(p, d, sig) for p in perms]
    for a, b in itertools.combinations(range(len(perms)), 2):
        if types[a] == types[b]:
            assert np.array_equal(truth[a], truth[b])


@pytest.mark.parametrize("d", [1, 2])
def test_direct_sum_congruence(d):
    pool = all_perms(1) + all_perms(2) + all_perms(3)
    cls = {p: ef_type(p, d) for p in pool}
    classes = {}
    for p in pool:
        classes.setdefault(cls[p], []).append(p)
    for c1, c2 in itertools.product(classes.values(), repeat=2):
        sums = {ef_type(direct_sum(a, b), d) for a in c1[:3] for b in c2[:3]}
        assert len(sums) == 1


@pytest.mark.parametrize("d", [1, 2])
def test_padding_with_identity(d):
    for p in all_perms(4):
        assert ef_equivalent(direct_sum(p, identity(2**d - 1)), direct_sum(p, identity(2**d)), d)


def test_toob_cycle_type_classes_on_s5():
    by_type = {}
    for p in all_perms(5):
        by_type.setdefault(tuple(cycle_counts(p)), set()).add(ef_type(p, 2, TOOB))
    assert all(len(v) == 1 for v in by_type.values())
    # two 5-cycles, double-checked by the game
    assert duplicator_wins((2, 3, 4, 5, 1), (3, 4, 5, 1, 2), 2, TOOB)


def test_class_counts_stabilize_d1():
    counts = [len({ef_type(p, 1) for p in all_perms(n)}) for n in range(1, 8)]
    assert counts == [1] * 7
