"""Interval statistics, induced digraphs and the arithmetic graph encodings."""

# %%
from mallowslab.logic import Fresh, evaluate, render
from mallowslab.struct import (
    Interval, arith_check, arithmetic_graphs, even_size_graph_check, induced_graph, j1, k1,
    minimal_intervals, w_set,
)
from mallowslab.struct import sentences as S

p = (2, 1, 4, 7, 5, 12, 3, 9, 6, 10, 11, 8)

# %% W_k(A): positions whose image starts a run of k consecutive values inside p[A].
print("W_2([12]) =", w_set(p, range(1, 13), 2))
print("minimal intervals of I=8..12, k=2:", minimal_intervals(p, Interval(8, 12), 2))
print("J1 =", j1(p), " K1 =", k1(p))

# %% Each interval of a second family induces at most one arc between the gaps.
ical = minimal_intervals(p, Interval(8, 12), 2)
jcal = minimal_intervals(p, Interval(1, 7), 2)
g = induced_graph(p, ical, jcal)
print(g.to_text())

# %% The same arcs, read off a first-order formula (vertices are the left W-points).
arc = S.build_arc(2, "u", "v", "a", "b", "c", "d")
w = w_set(p, range(8, 13), 2)[:-1]
env = {"a": 8, "b": 12, "c": 1, "d": 7}
print([(w.index(u), w.index(v)) for u in w for v in w if evaluate(p, arc, {**env, "u": u, "v": v})])

# %% Doubling, exponential, tower and wowzer graphs on [N], and their checkers.
gs = arithmetic_graphs(20)
print("W arcs:", sorted(gs.w.arcs), " arith ok:", arith_check(*gs))
print("EvenSize for N=1..20:", "".join("1" if even_size_graph_check(*arithmetic_graphs(n)) else "0"
                                    for n in range(1, 21)))

# %% Sentence builders produce closed formulas that render and parse back.
print(render(S.build_rho()))
print(len(render(S.build_bigger(2, "a", "b", "c", "d", Fresh({"a", "b", "c", "d"})))), "characters for Bigger")
