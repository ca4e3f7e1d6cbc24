"""First-order sentences about permutations: parsing, evaluation and EF types."""

# %%
import numpy as np

from mallowslab.logic import (
    depth, ef_equivalent, ef_type, duplicator_wins, evaluate, evaluate_batch, parse, relativize,
    render, reverse_formula,
)
from mallowslab.perm import all_perms, cycle_counts, identity, prefix_rank, reverse

# %% A permutation is a structure in two ways: a bijection R (TOOB) or two orders (TOTO).
fixed = parse("exists x. R(x,x)")
pattern = parse("exists x. exists y. exists z. (x <1 y & y <1 z & z <2 x & x <2 y)")
print(render(pattern), "depth", depth(pattern))
for p in [(1, 2, 3), (2, 3, 1), (3, 1, 2)]:
    print(p, "fixed point:", evaluate(p, fixed), " 231:", evaluate(p, pattern))

# %% The batch evaluator runs over all of S_6 at once.
perms = np.array(all_perms(6))
share = evaluate_batch(perms, fixed).mean()
print(f"share of S_6 with a fixed point: {share:.4f}")
print("agrees with cycle counts:",
      evaluate_batch(perms, fixed).tolist() == [cycle_counts(p)[0] > 0 for p in all_perms(6)])

# %% Reversal turns a sentence about p into one about its reverse.
f = parse("exists x. forall y. (x = y | y <2 x)")  # some entry holds the maximum
g = reverse_formula(f)
p = (2, 4, 1, 3)
print(render(g), evaluate(p, f) == evaluate(reverse(p), g))

# %% Relativization restricts quantifiers to positions <= y, i.e. to a prefix.
h, y = relativize(parse("forall x. exists z. x <2 z | ~(exists w. w <1 x)"))
print("relativized to", y, ":", render(h))
print(all(evaluate(p, h, {y: j}) == evaluate(prefix_rank(p, j), parse(
    "forall x. exists z. x <2 z | ~(exists w. w <1 x)")) for j in range(1, 5)))

# %% Depth-d equivalence: identities of length >= 2^d - 1 cannot be told apart, shorter ones can.
for d in (1, 2, 3):
    lengths = range(2**d - 2, 2**d + 3)
    row = [int(ef_equivalent(identity(2**d - 1), identity(m), d)) for m in lengths]
    print(f"d={d}: id_{2**d - 1} vs id_m for m in {list(lengths)}: {row}")
print("game and types agree:", duplicator_wins((1, 2), (1, 2, 3), 2) == ef_equivalent((1, 2), (1, 2, 3), 2))
print("type digest:", ef_type((2, 3, 1), 2).digest.hex()[:16])
