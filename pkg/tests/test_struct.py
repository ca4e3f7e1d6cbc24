"""Interval statistics, induced graphs, arithmetic encodings and sentence builders.

The ``ref_*`` helpers are independent brute-force definitions used as oracles.
"""

import itertools
import math
import random

import numpy as np
import pytest

from mallowslab.logic import EQ, LT1, Atom, Exists, Fresh, Not, Or, And, depth, evaluate, evaluate_batch, evaluate_table, parse, render
from mallowslab.logic.transform import succ_formula
from mallowslab.perm import all_perms, identity, inverse, prefix_rank
from mallowslab.struct import (
    EMPTY, DirectedGraph, Interval, arith_check, arithmetic_graphs, even_size_graph_check,
    even_size_oracle, format_interval_seq, induced_edge, induced_graph, j1, k1, matching_check,
    minimal_intervals, parse_interval, parse_interval_seq, s_set, w_count, w_set, xy_pair,
)
from mallowslab.struct import sentences as S
from mallowslab.towers import log_star_star

CHERRY = (21, 12, 19, 7, 11, 17, 9, 5, 3, 13, 6, 1, 8, 16, 4, 18, 14, 20, 22, 10, 15, 2)


# reference implementations -----------------------------------------------------

def ref_w(p, a, k):
    img = {p[i - 1] for i in a}
    return [i for i in range(1, len(p) + 1) if all(p[i - 1] + t in img for t in range(k))]


def ref_gaps(p, a, k):
    w = ref_w(p, a, k)
    return [list(range(w[t] + 1, w[t + 1])) for t in range(len(w) - 1)]


def ref_y(p, a, b):
    """y(A, B) without any disjointness assumption; None when undefined."""
    pos = {v: i + 1 for i, v in enumerate(p)}
    img_b = {p[i - 1] for i in b}
    xs = [x for x in a if p[x - 1] + 1 in img_b]
    return pos[p[min(xs) - 1] + 1] if xs else None


def ref_h(p, ical, jcal):
    arcs = set()
    for jj in jcal:
        ys = [ref_y(p, ii, jj) for ii in ical]
        if ical and None not in ys:
            e = (ys.index(min(ys)), ys.index(max(ys)))
            if e[0] != e[1]:
                arcs.add(e)
    return arcs


def ref_j1(p):
    for j in range(1, len(p) + 1):
        if ref_w(p, range(1, j + 1), 2):
            return j
    return math.inf


# types ---------------------------------------------------------------------------

def test_interval_type():
    assert list(Interval(2, 4)) == [2, 3, 4] and len(Interval(2, 4)) == 3
    assert EMPTY == Interval(5, 4) and len(EMPTY) == 0
    assert str(EMPTY) == "()" and str(Interval(3, 7)) == "3-7"
    assert parse_interval("4") == Interval(4, 4)
    seq = parse_interval_seq("1-3,(),5-6")
    assert seq == (Interval(1, 3), EMPTY, Interval(5, 6))
    assert format_interval_seq(seq) == "1-3,(),5-6"
    with pytest.raises(ValueError):
        parse_interval("5-3")


def test_graph_text_round_trip():
    g = DirectedGraph(3, frozenset({(0, 2), (1, 2)}))
    assert g.to_text() == "3\n1 3\n2 3\n"
    assert DirectedGraph.from_text(g.to_text()) == g
    with pytest.raises(ValueError):
        DirectedGraph(2, frozenset({(1, 1)}))
    with pytest.raises(ValueError):
        DirectedGraph(2, frozenset({(0, 2)}))


# W_k, S, x/y ---------------------------------------------------------------------

def test_w_examples():
    p = (3, 1, 4, 2, 5)
    assert w_set(p, range(1, 6), 1) == [1, 2, 3, 4, 5]
    assert w_set(identity(7), range(1, 5), 2) == [1, 2, 3]
    assert w_count(identity(7), range(1, 5), 2) == 3
    with pytest.raises(ValueError):
        w_set(p, [1], 0)


def test_w_k1_is_identity_on_sets():
    rng = random.Random(1)
    for p in all_perms(6)[::37]:
        a = sorted(rng.sample(range(1, 7), 3))
        assert w_set(p, a, 1) == a


def test_w_matches_reference_exhaustively_s5():
    for p in all_perms(5):
        for lo, hi in itertools.combinations_with_replacement(range(1, 6), 2):
            for k in (1, 2, 3):
                assert w_set(p, range(lo, hi + 1), k) == ref_w(p, range(lo, hi + 1), k)


def test_w2_prefix_identity_on_s6():
    for p in all_perms(6):
        pos = inverse(p)
        for j in range(1, 7):
            want = sum(1 for m in range(1, 6) if pos[m - 1] <= j and pos[m] <= j)
            assert w_count(p, range(1, j + 1), 2) == want


def test_s_and_xy_examples():
    assert s_set(identity(3), {1, 2}, {3}) == {2}
    assert xy_pair(identity(3), {1, 2}, {3}) == (2, 3)
    assert xy_pair((3, 1, 2), {1}, {2}) is None
    with pytest.raises(ValueError):
        s_set(identity(3), {1, 2}, {2, 3})


def test_xy_matches_reference():
    rng = random.Random(2)
    for _ in range(300):
        p = tuple(rng.sample(range(1, 10), 9))
        cut = rng.randint(1, 8)
        a, b = range(1, cut + 1), range(cut + 1, 10)
        got = xy_pair(p, a, b)
        want = ref_y(p, a, b)
        assert (got is None) == (want is None)
        if got is not None:
            assert got[1] == want and p[got[0] - 1] + 1 == p[want - 1]


# minimal intervals and graphs ------------------------------------------------------

def test_minimal_interval_examples():
    assert minimal_intervals(identity(5), Interval(1, 5), 2) == (EMPTY, EMPTY, EMPTY)
    assert minimal_intervals((2, 1), Interval(1, 2), 2) == ()
    assert minimal_intervals(identity(5), Interval(1, 1), 1) == ()


def test_minimal_interval_count_and_reference_s6():
    for p in all_perms(6)[::5]:
        for lo, hi in itertools.combinations_with_replacement(range(1, 7), 2):
            for k in (1, 2):
                seq = minimal_intervals(p, Interval(lo, hi), k)
                assert len(seq) == max(len(ref_w(p, range(lo, hi + 1), k)) - 1, 0)
                assert [list(g) for g in seq] == ref_gaps(p, range(lo, hi + 1), k)


def test_shrink_bound_exhaustive_s7():
    for p in all_perms(7):
        for lo, hi in itertools.combinations(range(1, 8), 2):
            for k in (1, 2, 3):
                big = len(minimal_intervals(p, Interval(lo, hi), k))
                small = len(minimal_intervals(p, Interval(lo, hi - 1), k))
                assert big - k <= small <= big


def test_induced_graph_examples():
    p = (2, 1, 4, 7, 5, 12, 3, 9, 6, 10, 11, 8)
    ical = (Interval(9, 9), Interval(11, 11))
    # J = {1..7}: y-values 7 (p(9)=6 -> 7 at 4) ... computed by the reference
    g = induced_graph(p, ical, [range(1, 8)])
    assert g.arcs == frozenset(ref_h(p, [list(i) for i in ical], [range(1, 8)]))
    # some S empty -> no edge
    assert induced_edge(identity(4), (Interval(1, 1), Interval(3, 3)), [4]) is None
    assert induced_graph(identity(4), (Interval(1, 1), Interval(3, 3)), [[4]]).arcs == frozenset()
    # the same edge from two J's is one arc
    q = (1, 3, 2, 4, 6, 5)
    g2 = induced_graph(q, (Interval(1, 1), Interval(2, 2)), [[3, 4], [4, 5, 6]])
    assert g2.order == 2 and len(g2.arcs) <= 1
    with pytest.raises(ValueError):
        induced_graph(identity(4), (Interval(1, 2), Interval(2, 3)), [[4]])


def test_induced_graph_matches_reference():
    rng = random.Random(3)
    hits = 0
    for _ in range(400):
        n = 14
        p = tuple(rng.sample(range(1, n + 1), n))
        cut = rng.randint(4, 10)
        pts = sorted(rng.sample(range(1, cut + 2), 4))
        ical = tuple(Interval(pts[t], pts[t + 1] - 1) for t in range(3))
        jcal = [Interval(*sorted(rng.sample(range(cut + 1, n + 1), 2))) for _ in range(4)]
        g = induced_graph(p, ical, jcal)
        assert g.order == len(ical)
        assert set(g.arcs) == ref_h(p, [list(i) for i in ical], [list(j) for j in jcal])
        hits += bool(g.arcs)
    assert hits > 20


def test_cherry_statistics_frozen():
    # values computed by brute force for the length-22 example permutation
    assert w_set(CHERRY, range(1, 13), 2) == [2, 5, 8, 11]
    assert minimal_intervals(CHERRY, Interval(1, 12), 2) == (Interval(3, 4), Interval(6, 7), Interval(9, 10))
    assert w_set(CHERRY, range(13, 23), 2) == [17, 21]
    assert minimal_intervals(CHERRY, Interval(13, 22), 2) == (Interval(18, 20),)
    assert ref_w(CHERRY, range(13, 23), 2) == [17, 21]


# J1 and K1 -----------------------------------------------------------------------

def test_j1_k1_examples():
    assert j1(identity(5)) == 2
    assert j1((1,)) == math.inf and j1(()) == math.inf
    assert j1((3, 1, 2)) == 3
    with pytest.raises(ValueError, match="undefined"):
        k1((1,))
    assert k1(identity(4)) == 2


def test_j1_matches_reference_and_monotone_s6():
    for p in all_perms(6):
        assert j1(p) == ref_j1(p)
        vals = [j1(prefix_rank(p, k)) for k in range(2, 7)]
        assert vals == sorted(vals)


def test_k1_is_at_most_j1():
    for p in all_perms(6)[::3]:
        assert 2 <= k1(p) <= j1(p)


# arithmetic graphs ------------------------------------------------------------------

def test_arith_examples():
    g = arithmetic_graphs(16)
    assert arith_check(*g)
    broken = DirectedGraph(16, g.d.arcs - {(0, 1)})
    assert not arith_check(broken, g.e, g.t, g.w)
    assert arith_check(*arithmetic_graphs(1))
    assert arithmetic_graphs(1).d.arcs == frozenset()
    assert sorted(g.w.arcs) == [(0, 1), (1, 3)]
    with pytest.raises(ValueError):
        arith_check(g.d, g.e, g.t, arithmetic_graphs(5).w)


def test_arith_rejects_single_arc_perturbations():
    rng = random.Random(4)
    for n in (2, 5, 16, 40):
        g = arithmetic_graphs(n)
        for _ in range(50):
            which = rng.randrange(4)
            u, v = rng.sample(range(n), 2)
            arcs = set(g[which].arcs) ^ {(u, v)}
            gs = list(g)
            gs[which] = DirectedGraph(n, frozenset(arcs))
            assert not arith_check(*gs)


def test_even_size_oracle_values():
    assert [even_size_oracle(n) for n in (1, 2, 3, 4, 5, 65537)] == [True, True, False, False, True, True]
    # log** log** 4 = log** 2 = 1
    assert log_star_star(log_star_star(4)) == 1


def test_even_size_graph_check_agrees():
    for n in range(0, 65):
        assert even_size_graph_check(*arithmetic_graphs(n)) == even_size_oracle(n)
    g = arithmetic_graphs(8)
    with pytest.raises(ValueError):
        even_size_graph_check(DirectedGraph(8), g.e, g.t, g.w)


def test_matching_examples():
    a, b = [0, 1, 2], [3, 4]
    assert matching_check(DirectedGraph(5, frozenset({(3, 0), (4, 1)})), a, b)
    assert not matching_check(DirectedGraph(5, frozenset({(3, 0), (4, 1), (3, 2)})), a, b)
    assert not matching_check(DirectedGraph(4, frozenset({(2, 0), (3, 1)})), [0, 1], [2, 3])
    assert not matching_check(DirectedGraph(5, frozenset({(0, 3), (4, 1)})), a, b)
    with pytest.raises(ValueError):
        matching_check(DirectedGraph(3), [0, 1], [1, 2])


# sentence builders -------------------------------------------------------------------

S5 = np.array(all_perms(5))


def test_rho_exhaustive_s5():
    rho = S.build_rho()
    assert rho.free == frozenset()
    assert evaluate_batch(S5, rho).tolist() == [p[0] > p[-1] for p in S5.tolist()]


def test_j1_witness_exhaustive_s5():
    f = S.build_j1_witness("x")
    table = evaluate_table(S5, f, ("x",))
    for row, p in zip(table, S5.tolist()):
        assert np.flatnonzero(row).tolist() == [j1(p) - 1]


def test_k1_witness_exhaustive_s5():
    f = S.build_k1_witness("x")
    assert f.free == frozenset({"x"})
    table = evaluate_table(S5, f, ("x",))
    for row, p in zip(table, S5.tolist()):
        assert np.flatnonzero(row).tolist() == [k1(p) - 1]


def test_lambda_exhaustive_s5():
    f = S.build_lambda("y")
    table = evaluate_table(S5, f, ("y",))
    for row, p in zip(table, S5.tolist()):
        j = p.index(1) + 1
        assert np.flatnonzero(row).tolist() == ([j - 2] if j > 1 else [])


@pytest.mark.parametrize("k", [1, 2, 3])
def test_zeta_exhaustive_s5(k):
    f = S.build_zeta(k, "i", "a", "b")
    table = evaluate_table(S5, f, ("i", "a", "b"))
    for row, p in zip(table, S5.tolist()):
        for lo, hi in itertools.product(range(1, 6), repeat=2):
            want = set(ref_w(p, range(lo, hi + 1), k)) & set(range(lo, hi + 1)) if lo <= hi else set()
            got = set((np.flatnonzero(row[:, lo - 1, hi - 1]) + 1).tolist())
            assert got == want


def test_vertex_formula_matches_minimal_intervals():
    f = S.build_vertex(2, "u", "a", "b")
    rng = random.Random(5)
    for _ in range(20):
        p = tuple(rng.sample(range(1, 11), 10))
        lo = rng.randint(1, 4)
        hi = rng.randint(lo + 2, 10)
        w = ref_w(p, range(lo, hi + 1), 2)
        table = evaluate_table(np.array([p]), f, ("u",), fixed={"a": lo, "b": hi})[0]
        assert (np.flatnonzero(table) + 1).tolist() == w[:-1]


def _arc_instances():
    """Permutations of length 12 with disjoint I, J whose graph H(I_2(I); I_2(J)) has arcs."""
    rng = random.Random(6)
    found = []
    while len(found) < 3:
        p = tuple(rng.sample(range(1, 13), 12))
        cut = rng.randint(5, 8)
        i_int, j_int = (Interval(cut + 1, 12), Interval(1, cut)) if rng.random() < 0.5 else (Interval(1, cut), Interval(cut + 1, 12))
        ical = minimal_intervals(p, i_int, 2)
        g = induced_graph(p, ical, minimal_intervals(p, j_int, 2))
        if g.arcs:
            found.append((p, i_int, j_int, g, ical))
    return found


def test_arc_formula_matches_induced_graph():
    f = S.build_arc(2, "u", "v", "a", "b", "c", "d")
    for p, i_int, j_int, g, ical in _arc_instances():
        w = ref_w(p, i_int, 2)[:-1]  # vertex names: left W-points of the gaps
        env = {"a": i_int.lo, "b": i_int.hi, "c": j_int.lo, "d": j_int.hi}
        got = set()
        for u, v in itertools.product(range(i_int.lo, i_int.hi + 1), repeat=2):
            if evaluate(p, f, {**env, "u": u, "v": v}):
                got.add((w.index(u), w.index(v)))
        assert got == set(g.arcs)


# arithmetic templates on an abstract family: every position is a vertex ------------

def _pos(c, u, fresh):
    """``u`` is the ``c``-th position."""
    f0, w = fresh("f"), fresh("w")
    if c == 1:
        return Not(Exists(w, Atom(LT1, w, u)))
    first = Not(Exists(w, Atom(LT1, w, f0)))
    return Exists(f0, And(first, succ_formula(1, c - 1, f0, u, fresh)))


def _rel(pairs, fresh):
    def rel(u, v):
        parts = [And(_pos(i + 1, u, fresh), _pos(j + 1, v, fresh)) for i, j in sorted(pairs)]
        if not parts:
            return Not(Atom(EQ, u, u))
        out = parts[0]
        for q in parts[1:]:
            out = Or(out, q)
        return out
    return rel


def _all_positions():
    return S.Family(vertex=lambda u: Atom(EQ, u, u), gap=lambda u: (lambda x: Atom(EQ, x, u)))


@pytest.mark.parametrize("n", range(1, 9))
def test_arith_and_even_size_templates(n):
    g = arithmetic_graphs(n)
    fresh = Fresh()
    arcs = tuple(_rel(x.arcs, fresh) for x in g)
    fam = _all_positions()
    p = identity(n)
    assert evaluate(p, S.build_arith(fam, arcs, fresh)) is True
    assert evaluate(p, S.build_even_size(fam, arcs, fresh)) == even_size_oracle(n) == even_size_graph_check(*g)


@pytest.mark.parametrize("n", [2, 4, 6])
def test_arith_template_rejects_perturbations(n):
    g = arithmetic_graphs(n)
    rng = random.Random(n)
    for _ in range(6):
        which = rng.randrange(4)
        u, v = rng.sample(range(n), 2)
        gs = list(g)
        gs[which] = DirectedGraph(n, frozenset(set(g[which].arcs) ^ {(u, v)}))
        fresh = Fresh()
        arcs = tuple(_rel(x.arcs, fresh) for x in gs)
        assert evaluate(identity(n), S.build_arith(_all_positions(), arcs, fresh)) == arith_check(*gs) is False


# the non-convergence sentence ---------------------------------------------------------

def _ref_bigger(p, i_int, i2_int, k):
    """Some interval J makes H((I_k(I), I_k(I')); I_k(J)) a matching of I_k(I') into I_k(I) leaving a vertex free."""
    a, b = ref_gaps(p, i_int, k), ref_gaps(p, i2_int, k)
    n = len(p)
    for lo in range(1, n + 1):
        for hi in range(lo, n + 1):
            arcs = ref_h(p, a + b, ref_gaps(p, range(lo, hi + 1), k))
            na = len(a)
            out = {u: [v for x, v in arcs if x == u] for u in range(na + len(b))}
            if (all(len(out[u]) == 1 for u in range(na, na + len(b)))
                    and all(sum(1 for _, v in arcs if v == t) <= 1 for t in range(na))
                    and any(all(v != t for _, v in arcs) for t in range(na))
                    and all(x >= na and v < na for x, v in arcs)):
                return True
    return False


BIGGER_POSITIVE = [
    ((7, 10, 1, 3, 5, 4, 6, 2, 9, 8), (1, 6), (7, 10)),
    ((8, 6, 4, 9, 3, 1, 2, 7, 5, 10), (5, 10), (1, 4)),
    ((9, 8, 2, 1, 3, 5, 4, 7, 10, 6), (1, 6), (7, 10)),
]


def test_bigger_formula_small_cases():
    fresh = Fresh({"a", "b", "c", "d"})
    f = S.build_bigger(2, "a", "b", "c", "d", fresh)
    rng = random.Random(7)
    cases = list(BIGGER_POSITIVE)
    for _ in range(40):
        p = tuple(rng.sample(range(1, 11), 10))
        cut = rng.randint(4, 6)
        halves = [(1, cut), (cut + 1, 10)]
        rng.shuffle(halves)
        cases.append((p, *halves))
    outcomes = set()
    for p, (a, b), (c, d) in cases:
        want = _ref_bigger(p, range(a, b + 1), range(c, d + 1), 2)
        assert evaluate(p, f, {"a": a, "b": b, "c": c, "d": d}) == want
        outcomes.add(want)
    assert outcomes == {True, False}
    # overlapping intervals are rejected by the disjointness clause
    p, (a, b), (c, d) = BIGGER_POSITIVE[0]
    assert evaluate(p, f, {"a": a, "b": b + 1, "c": c, "d": d}) is False


@pytest.fixture(scope="module")
def built():
    return {
        "phi": S.build_nonconvergence_phi(2), "omega": S.build_omega(2),
        "xi1": S.build_xi1(2), "xi2": S.build_xi2(2), "universal": S.build_universal_phi(2),
    }


def test_universal_sentence_structure(built):
    u = built["universal"]
    assert u.free == frozenset()
    assert 0 < depth(u) < 60
    assert parse(render(u)) == u


def test_builders_are_deterministic(built):
    assert S.build_xi2(2) == built["xi2"]
    with pytest.raises(ValueError):
        S.build_nonconvergence_phi(1)


def test_component_sentences_are_closed(built):
    for name in ("phi", "omega", "xi1", "xi2"):
        assert built[name].free == frozenset(), name
