"""peertail: fat-tailed outcome distributions from peer-emulating agents.

Each simulated market draws a population of private tastes from
Normal(epsilon, 1), lets agents weigh their taste against an emulation bonus
``alpha * (fraction siding with them)``, and solves for the cutoff
equilibrium by synchronous best-response iteration. Repeating this across
thousands of draws and a grid of alpha values maps how the distribution of
the equilibrium fraction acting deforms from Normal-like (small alpha)
through a leptokurtic, negatively skewed transition band to a symmetric
bimodal split (large alpha).
"""

from .equilibrium import (
    BOUNDARY,
    STABLE,
    UNSTABLE,
    EquilibriumOutcome,
    EquilibriumSet,
    NonConvergenceError,
    classify_stability,
    enumerate_equilibria,
    response_fraction,
    tatonnement,
    verify_equilibrium,
)
from .experiment import (
    DEFAULT_AGENTS,
    DEFAULT_ALPHA_GRID,
    DEFAULT_RUNS,
    PAPER_SCALE_AGENTS,
    PAPER_SCALE_RUNS,
    AlphaResult,
    ExperimentConfig,
    RunBatchError,
    RunDistribution,
    SweepError,
    SweepResult,
    derive_stream,
    make_alpha_grid,
    run_batch,
    run_batch_from_config,
    run_single,
    sweep_alpha,
)
from .model import (
    ModelParams,
    consume_decision,
    decision_threshold,
    draw_population,
    utility_consume,
    utility_not_consume,
)
from .stats import (
    Histogram,
    MomentSummary,
    ZeroVarianceError,
    build_histogram,
    central_moments,
    find_modes,
    normalized_kurtosis,
    normalized_skew,
    summarize,
    two_point_kurtosis,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # model
    "ModelParams",
    "utility_consume",
    "utility_not_consume",
    "decision_threshold",
    "consume_decision",
    "draw_population",
    # equilibrium
    "STABLE",
    "UNSTABLE",
    "BOUNDARY",
    "EquilibriumOutcome",
    "EquilibriumSet",
    "NonConvergenceError",
    "response_fraction",
    "tatonnement",
    "enumerate_equilibria",
    "verify_equilibrium",
    "classify_stability",
    # stats
    "ZeroVarianceError",
    "MomentSummary",
    "Histogram",
    "central_moments",
    "normalized_kurtosis",
    "normalized_skew",
    "summarize",
    "two_point_kurtosis",
    "build_histogram",
    "find_modes",
    # experiment
    "DEFAULT_AGENTS",
    "DEFAULT_RUNS",
    "DEFAULT_ALPHA_GRID",
    "PAPER_SCALE_AGENTS",
    "PAPER_SCALE_RUNS",
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
