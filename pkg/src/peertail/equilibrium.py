"""Cutoff equilibria of one population: iterative solver, exhaustive oracle,
verifier, and stability classifier.

An equilibrium is a fraction ``k = m / n`` such that exactly ``m`` agents
strictly prefer acting when a fraction ``k`` acts. Every equilibrium is of
cutoff type: the actors are precisely the agents with taste above
``alpha * (1 - 2k)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import consume_decision, decision_threshold

__all__ = [
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
]

STABLE = "stable"
UNSTABLE = "unstable"
BOUNDARY = "boundary"


class NonConvergenceError(RuntimeError):
    """Best-response iteration broke its monotonicity or step-count guarantee.

    The synchronous best-response map is nondecreasing in ``k`` and takes
    values on the finite grid ``{0, 1/n, ..., 1}``, so from any start it must
    reach a fixed point within ``n + 1`` evaluations. Seeing this error means
    a coding defect, not a property of the drawn population.
    """


@dataclass(frozen=True)
class EquilibriumOutcome:
    """One equilibrium: fraction acting, implied cutoff, solver effort, stability.

    ``t_hat`` always equals ``alpha * (1 - 2 * k_hat)`` exactly. ``iterations``
    is the number of best-response evaluations the solver spent (0 for
    equilibria produced by enumeration rather than iteration). ``stability``
    is one of :data:`STABLE`, :data:`UNSTABLE`, :data:`BOUNDARY`.
    """

    k_hat: float
    t_hat: float
    iterations: int
    stability: str


# Equilibria of one population, ordered by k_hat ascending.
EquilibriumSet = list[EquilibriumOutcome]


def response_fraction(pop: np.ndarray, alpha: float, k: float) -> float:
    """Fraction acting after one synchronous best-response step against ``k``.

    Nondecreasing in ``k``: raising ``k`` lowers the decision threshold, so no
    agent who acted before drops out.
    """
    return np.count_nonzero(consume_decision(pop, alpha, k)) / pop.size


def tatonnement(pop: np.ndarray, alpha: float) -> EquilibriumOutcome:
    """Iterate synchronous best responses from ``k = 1/2`` until ``k`` repeats.

    Successive fractions are compared as integer actor counts, so there is no
    floating-point convergence tolerance. Monotonicity of the iterate sequence
    and the ``n + 1`` step bound are checked on every call; a violation raises
    :class:`NonConvergenceError`.
    """
    n = pop.size
    if n == 0:
        raise ValueError("population is empty")
    k = 0.5
    prev_count = -1  # sentinel: the k=1/2 start is off the count grid for odd n
    direction = 0
    iterations = 0
    count = -1
    for _ in range(n + 2):
        count = int(np.count_nonzero(consume_decision(pop, alpha, k)))
        iterations += 1
        if prev_count >= 0:
            if count == prev_count:
                break
            step = count - prev_count
            if direction == 0:
                direction = 1 if step > 0 else -1
            elif step * direction < 0:
                raise NonConvergenceError(
                    "best-response iterates left their monotone path"
                )
        else:
            if 2 * count == n:  # response at 1/2 reproduced 1/2 exactly
                break
            direction = 1 if 2 * count > n else -1
        prev_count = count
        k = count / n
    else:
        raise NonConvergenceError(
            f"no fixed point within {n + 2} best-response steps"
        )
    k_hat = count / n
    return EquilibriumOutcome(
        k_hat=k_hat,
        t_hat=decision_threshold(alpha, k_hat),
        iterations=iterations,
        stability=classify_stability(pop, alpha, k_hat),
    )


def verify_equilibrium(pop: np.ndarray, alpha: float, k: float) -> bool:
    """True iff exactly ``k * n`` agents strictly prefer acting at fraction ``k``.

    ``k * n`` must be an (up to rounding noise) integer actor count.
    """
    m = k * pop.size
    m_int = round(m)
    if abs(m - m_int) > 1e-6:
        raise ValueError(f"k * n = {m} is not an integer actor count")
    return int(np.count_nonzero(consume_decision(pop, alpha, k))) == m_int


def enumerate_equilibria(pop: np.ndarray, alpha: float) -> EquilibriumSet:
    """All equilibria of one population, ordered by fraction acting.

    Candidate counts ``m = 0..n`` are screened with order statistics: with the
    tastes sorted ascending, ``m`` is an equilibrium iff the smallest of the
    top ``m`` tastes lies strictly above the threshold for ``k = m/n`` and the
    largest of the rest lies at or below it. O(n log n) overall.
    """
    n = pop.size
    if n == 0:
        raise ValueError("population is empty")
    srt = np.sort(pop)
    rev = srt[::-1]
    ks = np.arange(n + 1) / n
    theta = decision_threshold(alpha, ks)
    ok_rest = np.empty(n + 1, dtype=bool)
    ok_rest[n] = True
    ok_rest[:n] = rev <= theta[:n]  # largest non-actor at or below the cutoff
    ok_actor = np.empty(n + 1, dtype=bool)
    ok_actor[0] = True
    ok_actor[1:] = rev > theta[1:]  # smallest actor strictly above the cutoff
    outcomes = []
    for m in np.flatnonzero(ok_rest & ok_actor):
        k_hat = int(m) / n
        outcomes.append(
            EquilibriumOutcome(
                k_hat=k_hat,
                t_hat=decision_threshold(alpha, k_hat),
                iterations=0,
                stability=classify_stability(pop, alpha, k_hat),
            )
        )
    return outcomes


def classify_stability(pop: np.ndarray, alpha: float, k: float) -> str:
    """Label an equilibrium by how one-agent perturbations of ``k`` behave.

    Boundary equilibria (``k`` of 0 or 1) are labelled :data:`BOUNDARY`.
    Otherwise the best response is evaluated one agent below and one agent
    above ``k``; if either response escapes past the perturbed fraction, a
    single wavering agent snowballs and the equilibrium is :data:`UNSTABLE`,
    else :data:`STABLE`. Raises if ``k`` is not an equilibrium.
    """
    n = pop.size
    m = round(k * n)
    if not verify_equilibrium(pop, alpha, k):
        raise ValueError(f"k={k} is not an equilibrium of this population")
    if m == 0 or m == n:
        return BOUNDARY
    down = (m - 1) / n
    up = (m + 1) / n
    if response_fraction(pop, alpha, down) < down or response_fraction(pop, alpha, up) > up:
        return UNSTABLE
    return STABLE
