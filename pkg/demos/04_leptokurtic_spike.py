#!/usr/bin/env python3
"""Fat tails from a small taste offset.

Shift the taste distribution up by just 0.05 and the mid-transition markets
stop splitting evenly: the everybody-acts outcome dominates while the
nobody-acts outcome survives only as a rare event. The result is a unimodal
distribution with a long lower tail: enormous normalized kurtosis and
strongly negative skew, exactly the signature of day-to-day equity returns.
"""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import peertail as pt

OUT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "output")
os.makedirs(OUT, exist_ok=True)

cfg = pt.ExperimentConfig(
    master_seed=44,
    epsilon=0.05,
    n_agents=2_000,
    alpha_grid=pt.make_alpha_grid(1.0, 1.6, 0.05),
    runs_per_alpha=3_000,
    thread_hint=0,
)
print(f"sweeping {len(cfg.alpha_grid)} alphas x {cfg.runs_per_alpha} runs at epsilon=0.05 ...")
result = pt.sweep_alpha(cfg)
print(f"done in {result.wall_time_seconds:.1f}s")

alphas = [e.alpha for e in result.per_alpha]
kurt = [e.moments.kurtosis_normalized for e in result.per_alpha]
skew = [e.moments.skew_normalized for e in result.per_alpha]

fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(7, 7), sharex=True)
ax1.plot(alphas, kurt, marker="o", ms=3)
ax1.axhline(3.0, color="gray", lw=0.8, ls="--")
ax1.set_ylabel("normalized kurtosis")
ax2.plot(alphas, skew, marker="o", ms=3, color="firebrick")
ax2.axhline(0.0, color="gray", lw=0.8, ls="--")
ax2.set_ylabel("normalized skew")
ax2.set_xlabel("emulation weight alpha")
fig.tight_layout()
fig.savefig(os.path.join(OUT, "leptokurtic_spike.png"), dpi=150)
print("wrote output/leptokurtic_spike.png")

peak = result.per_alpha[int(np.argmax(kurt))]
print(f"\npeak kurtosis {max(kurt):.1f} at alpha={peak.alpha:g} "
      f"(skew {peak.moments.skew_normalized:.2f})")
low_tail = peak.distribution.k_hat < 0.5
print(f"at the peak, {low_tail.mean():.2%} of runs collapse to the low-uptake "
      f"equilibrium; everything else sits near {peak.moments.mean:.2f}")
print("rare crashes + a small offset = fat lower tail, negative skew, unimodal shape")
