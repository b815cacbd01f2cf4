"""Monte Carlo orchestration: per-run seeded streams, batches, alpha sweeps.

Every run gets its own random stream derived from ``(master_seed,
alpha_index, run_index)``, so a sweep's output is a pure function of its
configuration no matter how many workers execute it or in what order.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .equilibrium import EquilibriumOutcome, NonConvergenceError, tatonnement, verify_equilibrium
from .model import ModelParams, draw_population
from .stats import Histogram, MomentSummary, build_histogram, summarize

__all__ = [
    "DEFAULT_AGENTS",
    "DEFAULT_RUNS",
    "PAPER_SCALE_AGENTS",
    "PAPER_SCALE_RUNS",
    "DEFAULT_ALPHA_GRID",
    "ExperimentConfig",
    "RunDistribution",
    "AlphaResult",
    "SweepResult",
    "RunBatchError",
    "SweepError",
    "make_alpha_grid",
    "derive_stream",
    "run_single",
    "run_batch",
    "run_batch_from_config",
    "sweep_alpha",
]

DEFAULT_AGENTS = 2_000
DEFAULT_RUNS = 4_000
# full-size profile behind the CLI's --paper-scale flag
PAPER_SCALE_AGENTS = 10_000
PAPER_SCALE_RUNS = 20_000

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15  # SplitMix64 increment


def _mix64(x: int) -> int:
    """Stafford variant-13 finalizer (the SplitMix64 output mix), mod 2**64."""
    x &= _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def derive_stream(master_seed: int, alpha_index: int, run_index: int) -> np.random.Generator:
    """Independent, reproducible random stream for one (grid point, run) pair.

    The tuple is folded into a 128-bit Philox key with the SplitMix64
    finalizer: ``s = mix64(seed)``, then ``s = mix64(s ^ mix64(index + i *
    GOLDEN))`` absorbs each index, and the key words are squeezed as
    ``mix64(s + GOLDEN)`` and ``mix64(s + 2 * GOLDEN)``. Same tuple, same
    stream on every platform; distinct tuples give statistically independent
    Philox streams.
    """
    if alpha_index < 0 or run_index < 0:
        raise ValueError("stream indices must be nonnegative")
    s = _mix64(master_seed)
    s = _mix64(s ^ _mix64(alpha_index + _GOLDEN))
    s = _mix64(s ^ _mix64(run_index + 2 * _GOLDEN))
    key = np.array([_mix64(s + _GOLDEN), _mix64(s + 2 * _GOLDEN)], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def make_alpha_grid(lo: float, hi: float, step: float) -> tuple[float, ...]:
    """Inclusive grid ``lo, lo + step, ...`` up to ``hi`` (hit within rounding slack)."""
    if not (math.isfinite(lo) and math.isfinite(hi) and math.isfinite(step)):
        raise ValueError("grid bounds and step must be finite")
    if step <= 0.0:
        raise ValueError(f"grid step must be positive, got {step}")
    if lo < 0.0:
        raise ValueError(f"grid must be nonnegative, got lo={lo}")
    if hi < lo:
        raise ValueError(f"grid upper bound {hi} is below lower bound {lo}")
    ratio = (hi - lo) / step
    steps = round(ratio) if abs(ratio - round(ratio)) <= 1e-9 * max(1.0, abs(ratio)) else math.floor(ratio)
    return tuple(lo + i * step for i in range(steps + 1))


DEFAULT_ALPHA_GRID = make_alpha_grid(0.5, 2.0, 0.05)


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything a sweep needs; alpha comes from the grid, not the params.

    ``thread_hint`` is the worker-process count (0 means use all cores); it
    never affects results, only wall time. ``retain_populations`` keeps every
    run's taste vector in memory, which is only sensible at debugging sizes.
    """

    master_seed: int
    epsilon: float = 0.0
    n_agents: int = DEFAULT_AGENTS
    alpha_grid: tuple[float, ...] = DEFAULT_ALPHA_GRID
    runs_per_alpha: int = DEFAULT_RUNS
    bin_count: int = 100
    thread_hint: int = 0
    retain_populations: bool = False

    def __post_init__(self):
        object.__setattr__(self, "alpha_grid", tuple(float(a) for a in self.alpha_grid))
        if len(self.alpha_grid) == 0:
            raise ValueError("alpha_grid must not be empty")
        if any(not (math.isfinite(a) and a >= 0.0) for a in self.alpha_grid):
            raise ValueError("alpha_grid values must be finite and nonnegative")
        if any(b <= a for a, b in zip(self.alpha_grid, self.alpha_grid[1:])):
            raise ValueError("alpha_grid must be strictly increasing")
        if not math.isfinite(self.epsilon):
            raise ValueError(f"epsilon must be finite, got {self.epsilon}")
        if self.n_agents < 1:
            raise ValueError(f"n_agents must be >= 1, got {self.n_agents}")
        if self.runs_per_alpha < 1:
            raise ValueError(f"runs_per_alpha must be >= 1, got {self.runs_per_alpha}")
        if self.bin_count < 1:
            raise ValueError(f"bin_count must be >= 1, got {self.bin_count}")
        if self.thread_hint < 0:
            raise ValueError(f"thread_hint must be >= 0, got {self.thread_hint}")

    def model_params(self, alpha: float = 0.0) -> ModelParams:
        return ModelParams(alpha=alpha, epsilon=self.epsilon, n_agents=self.n_agents)


@dataclass
class RunDistribution:
    """All equilibrium outcomes for one alpha across a batch of runs."""

    alpha: float
    outcomes: list[EquilibriumOutcome]
    populations: list[np.ndarray] | None = None

    @property
    def k_hat(self) -> np.ndarray:
        return np.array([o.k_hat for o in self.outcomes])

    @property
    def t_hat(self) -> np.ndarray:
        return np.array([o.t_hat for o in self.outcomes])

    @property
    def iterations(self) -> np.ndarray:
        return np.array([o.iterations for o in self.outcomes])

    @property
    def stability(self) -> list[str]:
        return [o.stability for o in self.outcomes]


@dataclass
class AlphaResult:
    """One grid point's distribution with its moment summary and histogram."""

    distribution: RunDistribution
    moments: MomentSummary
    histogram: Histogram

    @property
    def alpha(self) -> float:
        return self.distribution.alpha


@dataclass
class SweepResult:
    """Per-alpha results in grid order, plus the config that produced them."""

    per_alpha: list[AlphaResult]
    config: ExperimentConfig
    wall_time_seconds: float = field(default=0.0)


class RunBatchError(RuntimeError):
    """One or more runs of a batch failed; carries (run_index, message) pairs."""

    def __init__(self, alpha: float, failures: list[tuple[int, str]]):
        self.alpha = alpha
        self.failures = failures
        shown = ", ".join(f"run {i}: {msg}" for i, msg in failures[:5])
        more = "" if len(failures) <= 5 else f" (+{len(failures) - 5} more)"
        super().__init__(f"{len(failures)} run(s) failed at alpha={alpha}: {shown}{more}")


class SweepError(RuntimeError):
    """One or more grid points of a sweep failed; carries (alpha, error) pairs."""

    def __init__(self, failures: list[tuple[float, RunBatchError]]):
        self.failures = failures
        shown = "; ".join(f"alpha={a}: {e}" for a, e in failures)
        super().__init__(f"{len(failures)} grid point(s) failed: {shown}")


def run_single(params: ModelParams, alpha: float, stream: np.random.Generator) -> EquilibriumOutcome:
    """Draw one population, solve it, and verify before the population is dropped.

    ``alpha`` is taken from the argument (``params.alpha`` is ignored), so one
    base parameter set serves a whole grid.
    """
    pop = draw_population(params, stream)
    outcome = tatonnement(pop, alpha)
    if not verify_equilibrium(pop, alpha, outcome.k_hat):
        raise NonConvergenceError(
            f"solver returned a non-equilibrium k={outcome.k_hat} at alpha={alpha}"
        )
    return outcome


def _run_range(params, alpha, master_seed, alpha_index, start, stop, retain):
    outcomes: list[EquilibriumOutcome | None] = []
    pops: list[np.ndarray] = []
    failures: list[tuple[int, str]] = []
    for run_index in range(start, stop):
        stream = derive_stream(master_seed, alpha_index, run_index)
        try:
            pop = draw_population(params, stream)
            outcome = tatonnement(pop, alpha)
            if not verify_equilibrium(pop, alpha, outcome.k_hat):
                raise NonConvergenceError(
                    f"solver returned a non-equilibrium k={outcome.k_hat}"
                )
        except Exception as exc:  # aggregated by the caller, never dropped
            failures.append((run_index, f"{type(exc).__name__}: {exc}"))
            outcomes.append(None)
            continue
        outcomes.append(outcome)
        if retain:
            pops.append(pop)
    return outcomes, (pops if retain else None), failures


def _resolve_workers(thread_hint: int) -> int:
    return thread_hint if thread_hint > 0 else (os.cpu_count() or 1)


def run_batch(
    params: ModelParams,
    alpha: float,
    runs: int,
    master_seed: int,
    alpha_index: int,
    *,
    threads: int = 1,
    retain_populations: bool = False,
) -> RunDistribution:
    """``runs`` independent runs on per-run derived streams.

    The outcome vector depends only on ``(params, alpha, runs, master_seed,
    alpha_index)``: run ``i`` always consumes ``derive_stream(master_seed,
    alpha_index, i)``, and results are reassembled in run order whatever the
    worker count. Failed runs are collected and raised together as
    :class:`RunBatchError` rather than silently dropped.
    """
    if runs < 1:
        raise ValueError(f"runs must be >= 1, got {runs}")
    workers = _resolve_workers(threads)
    if workers <= 1 or runs < 4:
        outcomes, pops, failures = _run_range(
            params, alpha, master_seed, alpha_index, 0, runs, retain_populations
        )
    else:
        chunk = max(1, -(-runs // (workers * 4)))
        bounds = [(s, min(s + chunk, runs)) for s in range(0, runs, chunk)]
        outcomes, failures = [], []
        pops = [] if retain_populations else None
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(
                _run_range,
                *zip(*[
                    (params, alpha, master_seed, alpha_index, s, e, retain_populations)
                    for s, e in bounds
                ]),
            )
            for part_outcomes, part_pops, part_failures in parts:
                outcomes.extend(part_outcomes)
                failures.extend(part_failures)
                if retain_populations:
                    pops.extend(part_pops)
    if failures:
        raise RunBatchError(alpha, failures)
    return RunDistribution(alpha=alpha, outcomes=outcomes, populations=pops)


def run_batch_from_config(config: ExperimentConfig, alpha_index: int) -> RunDistribution:
    """Batch for one grid point of ``config`` (convenience wrapper)."""
    return run_batch(
        config.model_params(),
        config.alpha_grid[alpha_index],
        config.runs_per_alpha,
        config.master_seed,
        alpha_index,
        threads=config.thread_hint,
        retain_populations=config.retain_populations,
    )


def sweep_alpha(config: ExperimentConfig) -> SweepResult:
    """Run every grid point of ``config`` and aggregate moments and histograms.

    Configuration problems surface immediately (at config construction); run
    failures at one grid point do not stop the others, but any failure makes
    the sweep raise :class:`SweepError` at the end so biased summaries can
    never be mistaken for results.
    """
    t0 = time.perf_counter()
    per_alpha: list[AlphaResult] = []
    failures: list[tuple[float, RunBatchError]] = []
    for alpha_index, alpha in enumerate(config.alpha_grid):
        try:
            dist = run_batch_from_config(config, alpha_index)
        except RunBatchError as exc:
            failures.append((alpha, exc))
            continue
        k = dist.k_hat
        per_alpha.append(
            AlphaResult(
                distribution=dist,
                moments=summarize(k),
                histogram=build_histogram(k, config.bin_count),
            )
        )
    if failures:
        raise SweepError(failures)
    return SweepResult(
        per_alpha=per_alpha,
        config=config,
        wall_time_seconds=time.perf_counter() - t0,
    )
