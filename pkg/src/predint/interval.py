from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

from .errors import DomainError


class Kind(str, Enum):
    CONFIDENCE = "confidence"
    PREDICTION = "prediction"


class Target(str, Enum):
    PARAMETER_P = "parameter_p"
    STATISTIC_PN = "statistic_pN"
    STATISTIC_MEANN = "statistic_meanN"


@dataclass(frozen=True)
class Interval:
    """A closed interval with its level and what it is meant to cover.

    ``degenerate`` marks a plug-in variance of zero (``y`` in ``{0, n}``);
    ``small_sample`` is advisory only and marks ``n*p_hat < 5`` or
    ``n*(1-p_hat) < 5`` for normal-approximation intervals.
    """

    lower: float
    upper: float
    level: float
    kind: Kind
    target: Target
    method: str
    degenerate: bool = False
    small_sample: bool = False

    def __post_init__(self):
        if not self.lower <= self.upper:
            raise DomainError(f"interval bounds out of order: {self.lower} > {self.upper}")

    @property
    def width(self) -> float:
        return self.upper - self.lower

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lower + self.upper)

    def __contains__(self, value: float) -> bool:
        return self.lower <= value <= self.upper

    def contains(self, other: "Interval") -> bool:
        return self.lower <= other.lower and other.upper <= self.upper

    def snapped(self, N: int) -> "Interval":
        """Round outward to the lattice ``{0, 1/N, ..., 1}``."""
        return replace(self, lower=math.floor(self.lower * N) / N, upper=math.ceil(self.upper * N) / N)


def check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    return alpha


def clamp01(x: float) -> float:
    return min(1.0, max(0.0, x))


def small_sample(n: int, y: int) -> bool:
    return y < 5 or n - y < 5
