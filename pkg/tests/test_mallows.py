import math
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mallowslab.mallows import (
    MallowsParams, RegenerativeStream, decode_insertion, log_normalizing_constant, mallows_pmf,
    normalizing_constant, replica_rng, sample_geometric, sample_mallows, sample_mallows_batch,
    sample_truncated_geometric, stream_prefix_ranks_batch, tgeo_pmf,
)
from mallowslab.perm import all_perms, inversions, prefix_rank


def brute_z(n, q):
    return sum(q ** inversions(p) for p in all_perms(n))


def test_params_validation():
    with pytest.raises(ValueError):
        MallowsParams(3, 0)
    with pytest.raises(ValueError):
        MallowsParams(-1, 0.5)


def test_normalizing_constant_small_closed_forms():
    assert normalizing_constant(2, Fraction(1, 2)) == Fraction(3, 2)
    assert normalizing_constant(3, 2) == 1 * 3 * 7
    assert normalizing_constant(4, 1) == 24
    assert normalizing_constant(0, 0.3) == 1.0


@pytest.mark.parametrize("q", [0.3, 1.0, 2.5, 1 - 1e-9])
def test_normalizing_constant_matches_enumeration(q):
    for n in range(7):
        assert normalizing_constant(n, q) == pytest.approx(brute_z(n, q), rel=1e-12)


def test_log_normalizing_constant_large_n_is_finite():
    v = log_normalizing_constant(1000, 0.5)
    # Z(n, q) -> prod (1 - q**i) / (1 - q)**n; log grows like n log 2
    assert v == pytest.approx(1000 * math.log(2) + sum(math.log1p(-(0.5**i)) for i in range(1, 1001)), rel=1e-12)


def test_pmf_exact_and_sums_to_one():
    q = Fraction(1, 3)
    total = sum(mallows_pmf(MallowsParams(4, q), p) for p in all_perms(4))
    assert total == 1
    assert mallows_pmf(MallowsParams(3, Fraction(1, 2)), (2, 3, 1)) == Fraction(1, 4) / Fraction(21, 8)
    with pytest.raises(ValueError):
        mallows_pmf(MallowsParams(3, 0.5), (1, 2))


def test_tgeo_pmf_exact_values():
    assert tgeo_pmf(3, Fraction(1, 2)) == [Fraction(4, 7), Fraction(2, 7), Fraction(1, 7)]
    # p < 0 is the q > 1 branch, mass increasing in k
    w = tgeo_pmf(3, -1.0)
    assert w == pytest.approx([1 / 7, 2 / 7, 4 / 7])
    assert tgeo_pmf(1, 0.3) == pytest.approx([1.0])
    with pytest.raises(ValueError):
        tgeo_pmf(3, 0)


@pytest.mark.parametrize("m,p", [(5, 0.5), (4, -1.0), (7, 0.9), (3, 1e-6)])
def test_truncated_geometric_sampler_law(m, p):
    rng = np.random.default_rng(1)
    draws = sample_truncated_geometric(m, p, rng, size=200_000)
    emp = np.bincount(draws, minlength=m + 1)[1:] / len(draws)
    assert draws.min() >= 1 and draws.max() <= m
    assert 0.5 * np.abs(emp - tgeo_pmf(m, p)).sum() < 0.006


def test_geometric_sampler_mean():
    rng = np.random.default_rng(2)
    z = sample_geometric(0.5, rng, size=200_000)
    assert z.min() >= 1
    assert z.mean() == pytest.approx(2.0, abs=0.02)


def test_decode_insertion():
    assert decode_insertion(np.array([[2, 2, 1]])).tolist() == [[2, 3, 1]]
    assert decode_insertion(np.array([[3, 1]]), universe=5).tolist() == [[3, 1]]


def test_replica_rng_is_keyed():
    a = replica_rng(5, 1, 2).random(3)
    assert np.array_equal(a, replica_rng(5, 1, 2).random(3))
    assert not np.array_equal(a, replica_rng(5, 2, 1).random(3))


@pytest.mark.parametrize("q", [0.5, 1.0, 2.0])
def test_batch_sampler_law_n4(q):
    rng = np.random.default_rng(3)
    rows = sample_mallows_batch(MallowsParams(4, q), 100_000, rng)
    counts = Counter(map(tuple, rows.tolist()))
    params = MallowsParams(4, q)
    tv = 0.5 * sum(abs(counts[p] / 100_000 - mallows_pmf(params, p)) for p in all_perms(4))
    assert tv < 0.015


def test_single_sampler_law_n3():
    rng = np.random.default_rng(4)
    params = MallowsParams(3, 0.4)
    counts = Counter(sample_mallows(params, rng) for _ in range(30_000))
    tv = 0.5 * sum(abs(counts[p] / 30_000 - mallows_pmf(params, p)) for p in all_perms(3))
    assert tv < 0.02


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 30), st.floats(0.05, 5.0), st.integers(0, 2**32))
def test_samples_are_permutations(n, q, seed):
    rows = sample_mallows_batch(MallowsParams(n, q), 5, np.random.default_rng(seed))
    assert rows.shape == (5, n)
    assert all(sorted(r) == list(range(1, n + 1)) for r in rows.tolist())


def test_stream_regeneration_and_prefix():
    s = RegenerativeStream(0.5, np.random.default_rng(5))
    s.extend(200)
    for t in s.regeneration_times:
        assert sorted(s.images[:t]) == list(range(1, t + 1))
    closed = [t for t in range(201) if max(s.images[:t], default=0) == t]
    assert closed == s.regeneration_times
    assert s.prefix_rank(7) == prefix_rank(s.images, 7)
    nxt = s.next_regeneration()
    assert nxt > 200 or nxt == s.regeneration_times[-1]
    with pytest.raises(ValueError):
        RegenerativeStream(1.0, np.random.default_rng(0))


def test_stream_prefix_ranks_law():
    rows = stream_prefix_ranks_batch(0.5, 3, 100_000, np.random.default_rng(6))
    counts = Counter(map(tuple, rows.tolist()))
    params = MallowsParams(3, 0.5)
    tv = 0.5 * sum(abs(counts[p] / 100_000 - mallows_pmf(params, p)) for p in all_perms(3))
    assert tv < 0.01
