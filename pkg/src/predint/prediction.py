"""Prediction intervals for statistics of the representative sample.

The targets are the realised proportion ``p_hat_N`` (binary measurements)
or mean ``xbar_N`` (continuous measurements) of all ``N`` individuals the
process produced, predicted from a simple random sample of ``n`` of them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DegenerateError, DomainError
from .estimation import z_critical
from .interval import Interval, Kind, Target, clamp01, small_sample
from .moments import SampleSummary


@dataclass(frozen=True)
class MeanSummary:
    """Sample size, mean and standard deviation (``n - 1`` divisor)."""

    n: int
    mean: float
    sd: float

    def __post_init__(self):
        if self.n < 2:
            raise DomainError(f"mean summary needs n >= 2, got n={self.n}")
        if not self.sd >= 0:
            raise DomainError(f"sd must be non-negative, got {self.sd}")


class Scale(str, Enum):
    TRUE_P = "true-p"
    PLUG_IN_N = "plug-in-n"
    PLUG_IN_BIG_N = "plug-in-N"


def _check_sizes(n: int, N: int) -> None:
    if N < n:
        raise DomainError(f"sample size must satisfy n <= N, got n={n}, N={N}")


def fpc_factor(n: int, N: int) -> float:
    """Finite population correction ``sqrt(1 - n/N)``."""
    _check_sizes(n, N)
    return math.sqrt((N - n) / N)


def _wald_type(summary: SampleSummary, factor: float, alpha: float, method: str) -> Interval:
    z = z_critical(alpha)
    n, y = summary.n, summary.y
    ph = summary.p_hat
    half = z * factor * math.sqrt(ph * (1.0 - ph) / n)
    return Interval(
        clamp01(ph - half), clamp01(ph + half), 1.0 - alpha, Kind.PREDICTION, Target.STATISTIC_PN,
        method, degenerate=y in (0, n), small_sample=small_sample(n, y),
    )


def wald_fpc_pi(summary: SampleSummary, N: int, alpha: float = 0.05) -> Interval:
    return _wald_type(summary, fpc_factor(summary.n, N), alpha, "wald-fpc")


def conservative_pi(summary: SampleSummary, alpha: float = 0.05) -> Interval:
    """Wald interval read as a prediction interval; needs no ``N``."""
    return _wald_type(summary, 1.0, alpha, "conservative")


def quadratic_roots(p_hat: float, c: float) -> tuple[float, float]:
    """Roots of ``(1 + c) q**2 - (2 p_hat + c) q + p_hat**2``.

    The discriminant is evaluated in the factored form
    ``c (c + 4 p_hat (1 - p_hat))`` and the smaller root from the product
    of roots, which avoids cancellation near ``c = 0`` and ``p_hat = 0``.
    """
    if c == 0.0:
        return p_hat, p_hat
    a = 1.0 + c
    disc = c * (c + 4.0 * p_hat * (1.0 - p_hat))
    if disc < 0.0:
        if disc < -1e-14:
            raise DomainError(f"negative discriminant {disc}")
        disc = 0.0
    upper = (2.0 * p_hat + c + math.sqrt(disc)) / (2.0 * a)
    lower = p_hat * p_hat / (a * upper) if upper > 0.0 else 0.0
    return clamp01(lower), clamp01(upper)


def _quadratic(summary: SampleSummary, c: float, alpha: float, method: str) -> Interval:
    lower, upper = quadratic_roots(summary.p_hat, c)
    return Interval(
        lower, upper, 1.0 - alpha, Kind.PREDICTION, Target.STATISTIC_PN, method,
        small_sample=small_sample(summary.n, summary.y),
    )


def quadratic_pi(summary: SampleSummary, N: int, alpha: float = 0.05) -> Interval:
    """Inverts ``(p_hat_n - q)**2 <= z**2 (N - n)/(n N) q (1 - q)`` for ``q = p_hat_N``."""
    n = summary.n
    _check_sizes(n, N)
    z = z_critical(alpha)
    return _quadratic(summary, z * z * (N - n) / (n * N), alpha, "quadratic")


def quadratic_pi_nfree(summary: SampleSummary, alpha: float = 0.05) -> Interval:
    z = z_critical(alpha)
    return _quadratic(summary, z * z / summary.n, alpha, "quadratic-nfree")


def mean_pi(summary: MeanSummary, N: int, alpha: float = 0.05) -> Interval:
    _check_sizes(summary.n, N)
    z = z_critical(alpha)
    half = z * fpc_factor(summary.n, N) * summary.sd / math.sqrt(summary.n)
    return Interval(
        summary.mean - half, summary.mean + half, 1.0 - alpha, Kind.PREDICTION,
        Target.STATISTIC_MEANN, "mean", degenerate=summary.sd == 0,
    )


def standardized_stat(
    p_hat_n: float,
    p_hat_N: float,
    n: int,
    N: int,
    scale: Scale | str,
    p: float | None = None,
) -> float:
    """``(p_hat_n - p_hat_N) / (sqrt((N - n)/N) sqrt(v/n))``.

    ``v`` is ``p(1-p)`` for ``true-p``, ``p_hat_n(1-p_hat_n)`` for
    ``plug-in-n`` and ``p_hat_N(1-p_hat_N)`` for ``plug-in-N``.
    """
    scale = Scale(scale)
    if not n < N:
        raise DomainError(f"standardized statistic needs n < N, got n={n}, N={N}")
    if scale is Scale.TRUE_P:
        if p is None:
            raise DomainError("scale 'true-p' requires the process rate p")
        v = p * (1.0 - p)
    elif scale is Scale.PLUG_IN_N:
        v = p_hat_n * (1.0 - p_hat_n)
    else:
        v = p_hat_N * (1.0 - p_hat_N)
    if v <= 0.0:
        raise DegenerateError(f"zero variance under scale {scale.value}")
    return (p_hat_n - p_hat_N) / (math.sqrt((N - n) / N) * math.sqrt(v / n))
