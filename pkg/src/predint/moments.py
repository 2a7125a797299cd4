"""Moments of the researcher's-sample count and proportion.

Conditioning on the representative sample is reduced to its success
count ``Y_N``; the conditional formulas depend on nothing else.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class MomentPair:
    mean: float
    variance: float

    def __post_init__(self):
        if self.variance < 0:
            raise DomainError(f"variance must be non-negative, got {self.variance}")


@dataclass(frozen=True)
class SampleSummary:
    """Sufficient statistics of a binary sample: size and success count."""

    n: int
    y: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"sample size must satisfy n >= 1, got n={self.n}")
        if not 0 <= self.y <= self.n:
            raise DomainError(f"success count must satisfy 0 <= y <= n, got y={self.y}, n={self.n}")

    @property
    def p_hat(self) -> float:
        return self.y / self.n

    def complement(self, N: int, Y_N: int) -> "SampleSummary":
        """Summary of the ``N - n`` individuals left out of the sample."""
        return SampleSummary(N - self.n, Y_N - self.y)


def _check_conditional(N: int, Y_N: int, n: int) -> None:
    if N < 2:
        raise DomainError(f"N must satisfy N >= 2, got N={N}")
    if not 0 <= Y_N <= N:
        raise DomainError(f"Y_N must satisfy 0 <= Y_N <= N, got Y_N={Y_N}")
    if not 1 <= n <= N:
        raise DomainError(f"n must satisfy 1 <= n <= N, got n={n}, N={N}")


def _fpc(N: int, n: int) -> float:
    return 1.0 - (n - 1) / (N - 1)


def conditional_moments_proportion(N: int, Y_N: int, n: int) -> MomentPair:
    """Mean and variance of the sample proportion given ``Y_N``."""
    _check_conditional(N, Y_N, n)
    p_N = Y_N / N
    if n == N:
        return MomentPair(p_N, 0.0)
    return MomentPair(p_N, _fpc(N, n) * p_N * (1.0 - p_N) / n)


def conditional_moments_count(N: int, Y_N: int, n: int) -> MomentPair:
    """Mean and variance of the sample success count given ``Y_N``.

    Scaled from the proportion moments so the two stay bit-consistent.
    """
    prop = conditional_moments_proportion(N, Y_N, n)
    return MomentPair(prop.mean * n, prop.variance * n * n)


def unconditional_moments_proportion(n: int, p: float) -> MomentPair:
    if n < 1:
        raise DomainError(f"n must satisfy n >= 1, got n={n}")
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p must lie in [0, 1], got {p}")
    return MomentPair(p, p * (1.0 - p) / n)


def var_estimate_biased(summary: SampleSummary) -> float:
    """Plug-in ``p_hat (1 - p_hat) / n``; its expectation is ``(n-1)/n`` times the true variance."""
    ph = summary.p_hat
    return ph * (1.0 - ph) / summary.n


def var_estimate_unbiased(summary: SampleSummary) -> float:
    if summary.n < 2:
        raise DomainError(f"unbiased variance estimate needs n >= 2, got n={summary.n}")
    ph = summary.p_hat
    return ph * (1.0 - ph) / (summary.n - 1)
