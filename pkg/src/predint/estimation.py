"""Confidence intervals for a Bernoulli process rate ``p``."""
from __future__ import annotations

import math

from .dist import binom_cdf, binom_sf, norm_quantile
from .interval import Interval, Kind, Target, check_alpha, clamp01, small_sample
from .moments import SampleSummary

BISECTION_TOL = 1e-12


def z_critical(alpha: float) -> float:
    """Upper ``alpha/2`` point of the standard normal."""
    return norm_quantile(1.0 - check_alpha(alpha) / 2.0)


def wald_ci(summary: SampleSummary, alpha: float = 0.05) -> Interval:
    z = z_critical(alpha)
    n, y = summary.n, summary.y
    ph = summary.p_hat
    half = z * math.sqrt(ph * (1.0 - ph) / n)
    return Interval(
        clamp01(ph - half), clamp01(ph + half), 1.0 - alpha, Kind.CONFIDENCE, Target.PARAMETER_P,
        "wald", degenerate=y in (0, n), small_sample=small_sample(n, y),
    )


def wilson_ci(summary: SampleSummary, alpha: float = 0.05) -> Interval:
    """Score interval: the set of ``q`` with ``(p_hat - q)**2 <= (z**2/n) q (1 - q)``."""
    z = z_critical(alpha)
    n, y = summary.n, summary.y
    ph = summary.p_hat
    z2 = z * z
    centre = 2.0 * n * ph + z2
    spread = z * math.sqrt(z2 + 4.0 * n * ph * (1.0 - ph))
    denom = 2.0 * (n + z2)
    lower = 0.0 if y == 0 else clamp01((centre - spread) / denom)
    upper = 1.0 if y == n else clamp01((centre + spread) / denom)
    return Interval(
        lower, upper, 1.0 - alpha, Kind.CONFIDENCE, Target.PARAMETER_P, "wilson",
        small_sample=small_sample(n, y),
    )


def _bisect_increasing(f, target: float, lo: float = 0.0, hi: float = 1.0) -> float:
    while hi - lo > BISECTION_TOL:
        mid = 0.5 * (lo + hi)
        if f(mid) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def clopper_pearson_ci(summary: SampleSummary, alpha: float = 0.05) -> Interval:
    """Equal-tailed exact interval, inverted by bisection on binomial tail sums."""
    alpha = check_alpha(alpha)
    n, y = summary.n, summary.y
    half = alpha / 2.0
    # P(Y >= y | p) rises with p; P(Y <= y | p) falls with p.
    lower = 0.0 if y == 0 else _bisect_increasing(lambda p: binom_sf(n, p, y), half)
    upper = 1.0 if y == n else _bisect_increasing(lambda p: -binom_cdf(n, p, y), -half)
    return Interval(lower, upper, 1.0 - alpha, Kind.CONFIDENCE, Target.PARAMETER_P, "clopper-pearson")
