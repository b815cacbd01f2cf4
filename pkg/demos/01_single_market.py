#!/usr/bin/env python3
"""Anatomy of a single market run.

Draw one population of private tastes, look at its best-response curve, solve
for the cutoff equilibrium by iteration, and cross-check against the
exhaustive enumeration of every equilibrium the population supports.
"""

import numpy as np

import peertail as pt

N = 50
ALPHA = 2.0

# one population: 50 private tastes around zero, unit spread
params = pt.ModelParams(epsilon=0.0, n_agents=N)
pop = pt.draw_population(params, pt.derive_stream(master_seed=7, alpha_index=0, run_index=0))
print(f"drew {N} tastes: min={pop.min():.2f} median={np.median(pop):.2f} max={pop.max():.2f}")

# the best-response curve: if a fraction k acts, how many want to act?
print("\nbest-response curve (fraction in -> fraction out):")
for k in np.linspace(0.0, 1.0, 11):
    arrow = "  <- fixed point" if pt.response_fraction(pop, ALPHA, k) == k else ""
    print(f"  k={k:.1f} -> {pt.response_fraction(pop, ALPHA, k):.2f}{arrow}")

# iterate from the symmetric start until the acting count stops changing
out = pt.tatonnement(pop, ALPHA)
print(f"\ntatonnement from k=1/2: k_hat={out.k_hat:.3f} cutoff={out.t_hat:.3f} "
      f"({out.iterations} best-response steps, {out.stability})")

# the solver picks one equilibrium; the population may hold several
print(f"\nall equilibria at alpha={ALPHA}:")
for eq in pt.enumerate_equilibria(pop, ALPHA):
    chosen = "  <- reached by tatonnement" if eq.k_hat == out.k_hat else ""
    print(f"  k={eq.k_hat:.3f} cutoff={eq.t_hat:+.3f} ({eq.stability}){chosen}")

# every equilibrium is cutoff-type: actors are exactly the tastes above t_hat
acting = pop[pt.consume_decision(pop, ALPHA, out.k_hat)]
print(f"\ncutoff check: {acting.size} actors, all with taste > {out.t_hat:.3f}: "
      f"{bool(acting.size == 0 or acting.min() > out.t_hat)}")
