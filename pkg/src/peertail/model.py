"""Primitives of the peer-emulation market: parameters, payoffs, taste draws.

One run of the market is a population of ``n_agents`` agents, each holding a
private taste ``t`` drawn from Normal(epsilon, 1). An agent acting alongside a
fraction ``k`` of the population earns ``t + alpha * k``; an agent staying out
earns ``alpha * (1 - k)`` from siding with the other ``1 - k``. Populations
are plain 1-D float64 arrays throughout the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

__all__ = [
    "ModelParams",
    "utility_consume",
    "utility_not_consume",
    "decision_threshold",
    "consume_decision",
    "draw_population",
]

# Lifts a uniform draw of exactly 0.0 so the inverse Normal CDF stays finite.
_MIN_UNIFORM = 2.0**-54


@dataclass(frozen=True)
class ModelParams:
    """Parameters of one simulated market.

    alpha
        Weight on the fraction of peers taking the same action, in utils per
        unit fraction. Must be nonnegative.
    epsilon
        Mean of the private-taste distribution (its standard deviation is
        fixed at 1).
    n_agents
        Population size per run.
    """

    alpha: float = 0.0
    epsilon: float = 0.0
    n_agents: int = 2000

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and self.alpha >= 0.0):
            raise ValueError(f"alpha must be finite and >= 0, got {self.alpha}")
        if not math.isfinite(self.epsilon):
            raise ValueError(f"epsilon must be finite, got {self.epsilon}")
        if self.n_agents < 1:
            raise ValueError(f"n_agents must be >= 1, got {self.n_agents}")


def utility_consume(t, alpha, k):
    """Payoff from acting: private taste plus the emulation bonus ``alpha * k``."""
    return t + alpha * k


def utility_not_consume(alpha, k):
    """Payoff from not acting: the emulation bonus for the ``1 - k`` who sit out."""
    return alpha * (1.0 - k)


def decision_threshold(alpha, k):
    """Taste level at which acting and not acting pay the same, ``alpha * (1 - 2k)``."""
    return alpha * (1.0 - 2.0 * k)


def consume_decision(t, alpha, k):
    """True where an agent with taste ``t`` strictly prefers acting at fraction ``k``.

    Evaluated as ``t > decision_threshold(alpha, k)``, the algebraic reduction
    of ``utility_consume(t, alpha, k) > utility_not_consume(alpha, k)``. Every
    component of the package (solver, verifier, enumeration oracle) goes
    through this one expression, so their decisions agree bit for bit.
    Broadcasts over array inputs.
    """
    return t > decision_threshold(alpha, k)


def draw_population(params: ModelParams, stream: np.random.Generator) -> np.ndarray:
    """Draw the private tastes for one run: ``n_agents`` i.i.d. Normal(epsilon, 1).

    Sampling is inverse-CDF so that a given stream state pins the population
    bit for bit on any IEEE-754 platform: ``u = stream.random(n)`` (the
    documented ``(word >> 11) * 2**-53`` mapping of the bit generator's 64-bit
    output), zeros lifted to ``2**-54``, then ``epsilon + ndtri(u)``.
    """
    u = stream.random(params.n_agents)
    np.maximum(u, _MIN_UNIFORM, out=u)
    return params.epsilon + ndtri(u)
