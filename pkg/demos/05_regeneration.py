"""Regeneration times of the infinite Mallows stream and the class chain."""

# %%
from collections import Counter

from mallowslab.limit import chain_trace, class_occupancy, first_regeneration_times, tail_pattern
from mallowslab.perm import format_perm

# %% A regeneration time t is one where the first t images are exactly 1..t.
t1 = first_regeneration_times(0.5, 20_000, seed=1)
print("mean T1 at q=0.5:", t1.mean().round(3), " histogram:", sorted(Counter(t1.tolist()).items())[:6])

# %% The chain state: the depth-d class of the last closed prefix plus the undigested tail.
trace = chain_trace(0.5, 2, 14, seed=7)
print("images:", format_perm(trace.images[:14]))
for s in trace:
    print(s.n, "regen" if s.at_regeneration else "     ", s.class_label.digest.hex()[:8],
          "tail", s.tail, "->", tail_pattern(s.tail))
print("regeneration times:", trace.regeneration_times())

# %% Class occupancy at two sizes.  At d=1 all nonempty prefixes share one class.
occ = class_occupancy(0.5, 2, [30, 60], runs=500, seed=3)
for n, c in occ.items():
    print(n, [round(v / 500, 3) for _, v in c.most_common(4)])
