"""Moment estimation, histograms, and mode finding for run distributions.

Central moments use the population (1/n) convention throughout: the
quantities of interest are distribution-level, and at thousands of runs the
small-sample correction is negligible. Normalized kurtosis is mu4 / mu2**2
(3 for a Normal distribution, 1 for a symmetric two-point distribution);
both raw mu3 and the normalized ratio mu3 / mu2**1.5 are reported since
either convention is wanted downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
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
]


class ZeroVarianceError(ValueError):
    """Normalized moment ratios are undefined for a zero-variance sample."""


@dataclass(frozen=True)
class MomentSummary:
    """Mean, variance, and third/fourth moment diagnostics of one sample.

    For a degenerate (zero-variance) sample the normalized ratios are NaN and
    :attr:`degenerate` is True.
    """

    n_samples: int
    mean: float
    variance: float
    mu3: float
    skew_normalized: float
    kurtosis_normalized: float

    @property
    def degenerate(self) -> bool:
        return self.variance == 0.0


@dataclass(frozen=True)
class Histogram:
    """Uniform-bin histogram over [lo, hi].

    Bin ``i`` covers ``[lo + i*w, lo + (i+1)*w)`` with width ``w``; the final
    bin is closed at ``hi``. ``fractions[i]`` is ``counts[i]`` divided by the
    total sample count.
    """

    bin_count: int
    lo: float
    hi: float
    counts: np.ndarray
    fractions: np.ndarray

    @property
    def edges(self) -> np.ndarray:
        return self.lo + np.arange(self.bin_count + 1) * (self.hi - self.lo) / self.bin_count

    @property
    def centers(self) -> np.ndarray:
        return self.lo + (np.arange(self.bin_count) + 0.5) * (self.hi - self.lo) / self.bin_count


def central_moments(samples, max_order: int = 4) -> tuple[float, ...]:
    """Mean and central moments ``mu_j = mean((x - mean(x))**j)`` up to ``max_order``.

    Two-pass evaluation: the mean is removed first and the powers of the
    residuals are averaged with pairwise summation, which keeps the result
    within a few ulp of an exact-arithmetic direct sum. Returns
    ``(mean, mu2, ..., mu_max_order)``.
    """
    x = np.asarray(samples, dtype=float)
    if x.size == 0:
        raise ValueError("cannot compute moments of an empty sample")
    if not 1 <= max_order <= 4:
        raise ValueError(f"max_order must be in 1..4, got {max_order}")
    if np.all(x == x.flat[0]):  # exact zeros; mean rounding must not leak in
        return (float(x.flat[0]),) + (0.0,) * (max_order - 1)
    mean = float(np.mean(x))
    if max_order == 1:
        return (mean,)
    d = x - mean
    out = [mean]
    p = d
    for _ in range(2, max_order + 1):
        p = p * d
        out.append(float(np.mean(p)))
    return tuple(out)


def _standardized_ratios(x: np.ndarray) -> tuple[float, float]:
    """(skew, kurtosis) via standardized residuals; immune to sigma**3 underflow."""
    if np.all(x == x.flat[0]):
        raise ZeroVarianceError("moment ratios are undefined for a zero-variance sample")
    mean = float(np.mean(x))
    d = x - mean
    mu2 = float(np.mean(d * d))
    if mu2 <= 0.0:
        raise ZeroVarianceError("moment ratios are undefined for a zero-variance sample")
    if not math.isfinite(mu2):
        raise ValueError("sample variance overflows double precision")
    z = d / math.sqrt(mu2)
    z3 = z * z * z
    return float(np.mean(z3)), float(np.mean(z3 * z))


def normalized_kurtosis(samples) -> float:
    """``mu4 / mu2**2`` of the sample; raises :class:`ZeroVarianceError` if flat."""
    x = np.asarray(samples, dtype=float)
    if x.size == 0:
        raise ValueError("cannot compute moments of an empty sample")
    return _standardized_ratios(x)[1]


def normalized_skew(samples) -> float:
    """``mu3 / mu2**1.5`` of the sample; raises :class:`ZeroVarianceError` if flat."""
    x = np.asarray(samples, dtype=float)
    if x.size == 0:
        raise ValueError("cannot compute moments of an empty sample")
    return _standardized_ratios(x)[0]


def summarize(samples) -> MomentSummary:
    """Moment summary of a sample; degenerate samples get NaN ratios, not errors."""
    x = np.asarray(samples, dtype=float)
    mean, mu2, mu3, _ = central_moments(x, 4)
    if 0.0 < mu2 < math.inf:
        skew, kurt = _standardized_ratios(x)
    else:
        skew = math.nan
        kurt = math.nan
    return MomentSummary(
        n_samples=int(x.size),
        mean=mean,
        variance=mu2,
        mu3=mu3,
        skew_normalized=skew,
        kurtosis_normalized=kurt,
    )


def two_point_kurtosis(r: float) -> float:
    """Normalized kurtosis of a distribution with mass ``r`` at one point and
    ``1 - r`` at another: ``1 / (r - r**2) - 3``.

    Equals 1 at ``r = 0.5`` and stays below 3 for ``r`` in (0.211, 0.789);
    location and scale of the two points drop out. Reference curve for the
    bifurcated regime of the simulation.
    """
    if not 0.0 < r < 1.0:
        raise ValueError(f"r must lie strictly inside (0, 1), got {r}")
    return 1.0 / (r - r * r) - 3.0


def build_histogram(samples, bin_count: int) -> Histogram:
    """Histogram of values in [0, 1] over ``bin_count`` uniform bins.

    Bin membership is ``edges[i] <= x < edges[i+1]`` against the actual float
    edges ``i / bin_count``, with ``x == 1`` assigned to the last bin. Samples
    outside [0, 1] are rejected.
    """
    if bin_count < 1:
        raise ValueError(f"bin_count must be >= 1, got {bin_count}")
    x = np.asarray(samples, dtype=float)
    if x.size and (np.min(x) < 0.0 or np.max(x) > 1.0):
        raise ValueError("histogram samples must lie in [0, 1]")
    edges = np.arange(bin_count + 1) / bin_count
    idx = np.searchsorted(edges, x, side="right") - 1
    idx[idx == bin_count] = bin_count - 1
    counts = np.bincount(idx, minlength=bin_count).astype(np.int64)
    total = x.size
    fractions = counts / total if total else np.zeros(bin_count)
    return Histogram(bin_count=bin_count, lo=0.0, hi=1.0, counts=counts, fractions=fractions)


def find_modes(hist: Histogram, min_separation_bins: int = 5) -> list[float]:
    """Locations (bin centers) of the separated peaks of a smoothed histogram.

    Counts are smoothed with a 3-bin moving average (edge bins average over
    the bins that exist), weak local maxima are collected with plateaus
    collapsed to their middle bin, and candidates are kept tallest-first
    subject to being at least ``min_separation_bins`` apart and carrying a
    smoothed height above 1% of the total count. Returned sorted by location.
    """
    c = hist.counts.astype(float)
    b = hist.bin_count
    window = np.convolve(np.ones(b), np.ones(3), mode="same")
    smooth = np.convolve(c, np.ones(3), mode="same") / window

    candidates = []
    for i in range(b):
        left_ok = i == 0 or smooth[i] >= smooth[i - 1]
        right_ok = i == b - 1 or smooth[i] >= smooth[i + 1]
        if left_ok and right_ok:
            candidates.append(i)

    # collapse plateaus (runs of adjacent equal-height candidates) to their middle
    collapsed = []
    run = [candidates[0]] if candidates else []
    for i in candidates[1:]:
        if i == run[-1] + 1 and smooth[i] == smooth[run[0]]:
            run.append(i)
        else:
            collapsed.append(run[len(run) // 2])
            run = [i]
    if run:
        collapsed.append(run[len(run) // 2])

    floor = 0.01 * hist.counts.sum()
    collapsed = [i for i in collapsed if smooth[i] > floor]
    collapsed.sort(key=lambda i: (-smooth[i], i))
    kept: list[int] = []
    for i in collapsed:
        if all(abs(i - j) >= min_separation_bins for j in kept):
            kept.append(i)
    width = (hist.hi - hist.lo) / b
    return [hist.lo + (i + 0.5) * width for i in sorted(kept)]
