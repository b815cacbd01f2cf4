"""Independent oracles used by the test suite.

Everything here recomputes expected values by a different route than the
package (exact rational arithmetic, exhaustive scans, textbook asymptotics)
so that agreement is evidence, not tautology.
"""

from fractions import Fraction

import numpy as np

from peertail import verify_equilibrium


def exact_central_moments(samples):
    """Mean and central moments mu2..mu4 in exact rational arithmetic.

    Every float is a rational, so the direct-sum definition
    mu_j = (1/n) * sum((x_i - mean)**j) evaluates without rounding; only the
    final conversion back to float rounds.
    """
    xs = [Fraction(float(v)) for v in samples]
    n = len(xs)
    mean = sum(xs, Fraction(0)) / n
    d = [x - mean for x in xs]
    mu2 = sum(e * e for e in d) / n
    mu3 = sum(e * e * e for e in d) / n
    mu4 = sum(e * e * e * e for e in d) / n
    return float(mean), float(mu2), float(mu3), float(mu4)


def naive_equilibrium_counts(pop, alpha):
    """All equilibrium actor counts by brute force: verify every m in 0..n."""
    n = pop.size
    return [m for m in range(n + 1) if verify_equilibrium(pop, alpha, m / n)]


def two_point_kurtosis_band(r, n, f, z=3.0):
    """Range of f(p_hat) when p_hat is within z binomial standard errors of r.

    The empirical kurtosis of a two-point sample is exactly f(p_hat) with
    p_hat the observed mass split, so mapping the +-z band of p_hat through f
    gives the corresponding band for the kurtosis estimate (f is monotone on
    each side of 1/2, so the extrema of f over the band are at its edges or
    at 1/2).
    """
    sd = (r * (1.0 - r) / n) ** 0.5
    lo_p = max(r - z * sd, 1.0 / n)
    hi_p = min(r + z * sd, 1.0 - 1.0 / n)
    values = [f(lo_p), f(hi_p)]
    if lo_p < 0.5 < hi_p:
        values.append(f(0.5))
    return min(values), max(values)


def symmetric_skew_se(samples):
    """Plug-in standard error of normalized skew under a symmetric population.

    First-order asymptotics: g1 ~ (m3 - 3*sigma^2*(mean error)) / sigma^3, so
    Var(g1) = (lambda6 - 6*lambda4 + 9) / n with lambda_j the standardized
    j-th moment (odd moments vanish under symmetry).
    """
    x = np.asarray(samples, dtype=float)
    n = x.size
    d = x - x.mean()
    s2 = np.mean(d**2)
    lam4 = np.mean(d**4) / s2**2
    lam6 = np.mean(d**6) / s2**3
    return ((lam6 - 6.0 * lam4 + 9.0) / n) ** 0.5
