"""Monte Carlo estimates of satisfaction probabilities and cycle-count limits."""

# %%
import math

from mallowslab.limit import (
    ExperimentConfig, QSchedule, displacement_bound_check, estimate_sat_prob, exact_sat_prob,
    poisson_cycle_distance,
)
from mallowslab.logic import parse
from mallowslab.struct.sentences import build_rho

# %% Fixed points of a uniform permutation: the probability tends to 1 - 1/e.
fixed = parse("exists x. R(x,x)")
print("exact, n=1..8:", [round(float(exact_sat_prob(fixed, n, 1)), 4) for n in range(1, 9)])
cfg = ExperimentConfig(fixed, QSchedule.fixed(1.0), sizes=[10, 100, 1000], samples=20_000, seed=1)
for n, est in estimate_sat_prob(cfg).items():
    print(f"n={n:5d}  p_hat={est.p_hat:.4f} +/- {est.half_width_95:.4f}   (1-1/e = {1 - 1 / math.e:.4f})")

# %% Pi(1) = 1 at fixed q < 1 converges to 1 - q.
first = parse("exists x. (~(exists w. w <1 x) & ~(exists w. w <2 x))")
est = estimate_sat_prob(ExperimentConfig(first, QSchedule.fixed(0.5), [50], 20_000, seed=2))[50]
print(f"P(Pi(1)=1) at q=0.5: {est.p_hat:.4f}")

# %% rho says Pi(1) > Pi(n); it separates q > 1 from q < 1.
rho = build_rho()
for q in (0.4, 1.0, 2.0):
    e = estimate_sat_prob(ExperimentConfig(rho, QSchedule.fixed(q), [60], 5_000, seed=3))[60]
    print(f"q={q}: P(rho) ~ {e.p_hat:.3f}")

# %% The first entry of a Mallows permutation stays close to 1.
chk = displacement_bound_check(200, 0.6, 20_000, seed=4)
print(f"E|Pi(1)-1| ~ {chk.mean:.3f} vs bound {chk.bound:.3f}: {'ok' if chk else 'violated'}")

# %% Small cycle counts approach independent Poissons when b/n is small, not when b = n.
print("exact n=b=6:", round(poisson_cycle_distance(6, 6).value, 4))
d = poisson_cycle_distance(500, 3, samples=40_000, seed=5)
print(f"n=500, b=3: {d.value:.4f} +/- {d.half_width_95:.4f}")
