"""Registry of interval methods by their command-line identifiers."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .errors import DomainError
from .estimation import clopper_pearson_ci, wald_ci, wilson_ci
from .interval import Interval, Kind, Target
from .moments import SampleSummary
from .prediction import (
    MeanSummary,
    conservative_pi,
    mean_pi,
    quadratic_pi,
    quadratic_pi_nfree,
    wald_fpc_pi,
)


@dataclass(frozen=True)
class Method:
    name: str
    kind: Kind
    target: Target
    needs_N: bool
    compute: Callable[..., Interval]

    @property
    def binary(self) -> bool:
        return self.target is not Target.STATISTIC_MEANN

    def __call__(self, summary: SampleSummary | MeanSummary, N: int | None, alpha: float) -> Interval:
        if self.needs_N:
            if N is None:
                raise DomainError(f"method {self.name!r} requires N")
            return self.compute(summary, N, alpha)
        return self.compute(summary, alpha)


CI_METHODS = {
    m.name: m
    for m in (
        Method("wald", Kind.CONFIDENCE, Target.PARAMETER_P, False, wald_ci),
        Method("wilson", Kind.CONFIDENCE, Target.PARAMETER_P, False, wilson_ci),
        Method("clopper-pearson", Kind.CONFIDENCE, Target.PARAMETER_P, False, clopper_pearson_ci),
    )
}

PI_METHODS = {
    m.name: m
    for m in (
        Method("wald-fpc", Kind.PREDICTION, Target.STATISTIC_PN, True, wald_fpc_pi),
        Method("conservative", Kind.PREDICTION, Target.STATISTIC_PN, False, conservative_pi),
        Method("quadratic", Kind.PREDICTION, Target.STATISTIC_PN, True, quadratic_pi),
        Method("quadratic-nfree", Kind.PREDICTION, Target.STATISTIC_PN, False, quadratic_pi_nfree),
        Method("mean", Kind.PREDICTION, Target.STATISTIC_MEANN, True, mean_pi),
    )
}

METHODS = {**CI_METHODS, **PI_METHODS}


def get_method(name: str) -> Method:
    try:
        return METHODS[name]
    except KeyError:
        raise DomainError(f"unknown method {name!r}; choose from {', '.join(METHODS)}") from None


@lru_cache(maxsize=1 << 16)
def binary_interval(name: str, n: int, y: int, N: int | None, alpha: float) -> Interval:
    """Cached interval for binary data; every method is a function of ``(n, y, N, alpha)`` only."""
    method = get_method(name)
    if not method.binary:
        raise DomainError(f"method {name!r} does not apply to binary data")
    return method(SampleSummary(n, y), N if method.needs_N else None, alpha)
