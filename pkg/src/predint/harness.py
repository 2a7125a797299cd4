"""Coverage studies under the process -> representative sample -> researcher's sample model.

A process generates ``N`` individuals (the representative sample); the
researcher measures a simple random sample of ``n`` of them. Confidence
intervals are judged against the process rate ``p``; prediction intervals
against the realised ``p_hat_N`` or ``xbar_N`` of that replicate.

Replicate ``r`` draws every random number from ``Rng(seed, r)``, and
results are written into per-replicate slots before any reduction, so a
study is bit-identical for any number of worker threads.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np

from .dist import (
    binom_pmf,
    binom_pmf_array,
    hyper_pmf_array,
    norm_cdf,
    sample_binomial,
    sample_hypergeometric,
    sample_srs,
)
from .errors import DegenerateError, DomainError, ResourceLimitError
from .interval import Kind, Target, check_alpha
from .methods import Method, binary_interval, get_method
from .prediction import MeanSummary, Scale, standardized_stat
from .rng import Rng

EXACT_PI_MAX_N = 500
EXACT_CI_MAX_N = 10**4
MARGINAL_MAX_N = 40


@dataclass(frozen=True)
class ProcessSpec:
    kind: str
    p: float | None = None
    mu: float | None = None
    sigma: float | None = None

    @classmethod
    def bernoulli(cls, p: float) -> "ProcessSpec":
        return cls("bernoulli", p=p)

    @classmethod
    def normal(cls, mu: float, sigma: float) -> "ProcessSpec":
        return cls("normal", mu=mu, sigma=sigma)

    def __post_init__(self):
        if self.kind == "bernoulli":
            if self.p is None or not 0.0 <= self.p <= 1.0:
                raise DomainError(f"bernoulli process needs 0 <= p <= 1, got p={self.p}")
        elif self.kind == "normal":
            if self.mu is None or not math.isfinite(self.mu):
                raise DomainError(f"normal process needs a finite mu, got {self.mu}")
            if self.sigma is None or not self.sigma > 0:
                raise DomainError(f"normal process needs sigma > 0, got sigma={self.sigma}")
        else:
            raise DomainError(f"unknown process kind {self.kind!r}")

    @property
    def binary(self) -> bool:
        return self.kind == "bernoulli"


@dataclass(frozen=True)
class StudyConfig:
    process: ProcessSpec
    N: int
    n: int
    alpha: float = 0.05
    replicates: int = 10_000
    seed: int = 0
    methods: tuple[str, ...] = ("wald-fpc",)
    snap_to_grid: bool = False
    all_targets: bool = False

    def validate(self) -> None:
        if not 1 <= self.n <= self.N:
            raise DomainError(f"sizes must satisfy 1 <= n <= N, got n={self.n}, N={self.N}")
        if self.replicates < 1:
            raise DomainError(f"replicates must be >= 1, got {self.replicates}")
        if not 0 <= self.seed < 1 << 64:
            raise DomainError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        check_alpha(self.alpha)
        if not self.methods:
            raise DomainError("at least one method is required")
        for name in self.methods:
            m = get_method(name)
            if m.binary != self.process.binary:
                raise DomainError(f"method {name!r} does not apply to a {self.process.kind} process")
            if name == "mean" and self.n < 2:
                raise DomainError("method 'mean' needs n >= 2")

    def targets_for(self, method: Method) -> list[Target]:
        if self.all_targets and method.binary:
            return [Target.PARAMETER_P, Target.STATISTIC_PN]
        return [method.target]


@dataclass(frozen=True)
class CoverageRecord:
    method: str
    target: Target
    kind: Kind
    nominal_level: float
    coverage: float
    coverage_se: float
    mean_width: float
    replicates_used: int
    degenerate_count: int = 0


@dataclass
class CoverageReport:
    config: StudyConfig
    mode: str
    records: list[CoverageRecord] = field(default_factory=list)

    def record(self, method: str, target: Target | str | None = None) -> CoverageRecord:
        for rec in self.records:
            if rec.method == method and (target is None or rec.target == Target(target)):
                return rec
        raise KeyError((method, target))


def _mc_se(c: float, R: int) -> float:
    return math.sqrt(max(c * (1.0 - c), 0.0) / R)


def _run_replicates(R: int, threads: int, work: Callable[[int, int], None]) -> None:
    """Run ``work(start, stop)`` over contiguous replicate blocks."""
    threads = max(1, int(threads))
    if threads == 1:
        work(0, R)
        return
    bounds = np.linspace(0, R, 4 * threads + 1).astype(int)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(work, int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]
        for f in futures:
            f.result()


def draw_binary(rng: Rng, p: float, N: int, n: int) -> tuple[int, int]:
    """Successes in the representative sample and in the researcher's sample.

    ``Y_N ~ Binomial(N, p)`` followed by a hypergeometric subsample gives
    the same joint law as ``N`` Bernoulli draws and an explicit SRS.
    """
    Y_N = sample_binomial(rng, N, p)
    return Y_N, sample_hypergeometric(rng, N, Y_N, n)


def simulate_study(config: StudyConfig, threads: int = 1) -> CoverageReport:
    config.validate()
    methods = [get_method(m) for m in config.methods]
    R, N, n, alpha = config.replicates, config.N, config.n, config.alpha
    n_targets = 2
    covered = np.zeros((len(methods), n_targets, R), dtype=bool)
    widths = np.zeros((len(methods), R))
    degenerate = np.zeros((len(methods), R), dtype=bool)
    proc = config.process

    def binary_block(start: int, stop: int) -> None:
        p = proc.p
        for r in range(start, stop):
            Y_N, y = draw_binary(Rng(config.seed, r), p, N, n)
            p_N = Y_N / N
            for i, m in enumerate(methods):
                iv = binary_interval(m.name, n, y, N if m.needs_N else None, alpha)
                if config.snap_to_grid and m.kind is Kind.PREDICTION:
                    iv = iv.snapped(N)
                covered[i, 0, r] = p in iv
                covered[i, 1, r] = p_N in iv
                widths[i, r] = iv.width
                degenerate[i, r] = iv.degenerate

    def normal_block(start: int, stop: int) -> None:
        for r in range(start, stop):
            rng = Rng(config.seed, r)
            x = rng.normal(proc.mu, proc.sigma, N)
            xs = x[sample_srs(rng, N, n)]
            summary = MeanSummary(n, float(xs.mean()), float(xs.std(ddof=1)))
            target = float(x.mean())
            for i, m in enumerate(methods):
                iv = m(summary, N, alpha)
                covered[i, 1, r] = target in iv
                widths[i, r] = iv.width
                degenerate[i, r] = iv.degenerate

    _run_replicates(R, threads, binary_block if proc.binary else normal_block)

    report = CoverageReport(config, "monte-carlo")
    for i, m in enumerate(methods):
        for target in config.targets_for(m):
            hits = covered[i, 0 if target is Target.PARAMETER_P else 1]
            c = float(np.count_nonzero(hits)) / R
            report.records.append(CoverageRecord(
                m.name, target, m.kind, 1.0 - alpha, c, _mc_se(c, R),
                float(np.mean(widths[i])), R, int(np.count_nonzero(degenerate[i])),
            ))
    return report


def simulate_studies(config: StudyConfig, N_values: Sequence[int], threads: int = 1) -> list[CoverageReport]:
    """One study per representative-sample size, for when ``N`` itself is uncertain."""
    configs = [replace(config, N=int(N)) for N in N_values]
    for c in configs:
        c.validate()
    return [simulate_study(c, threads) for c in configs]


# -- exact coverage -----------------------------------------------------------

def _binary_method(name: str) -> Method:
    m = get_method(name)
    if not m.binary:
        raise DomainError(f"method {name!r} has no exact binary coverage")
    return m


def exact_ci_coverage(method: str, n: int, p: float, alpha: float = 0.05, N: int | None = None) -> float:
    """Exact probability that the interval computed from ``Y ~ Binomial(n, p)`` contains ``p``.

    ``N`` is needed only by prediction methods scored against ``p``; the
    sample count is Binomial(n, p) whatever ``N`` is.
    """
    m = _binary_method(method)
    if m.needs_N and N is None:
        raise DomainError(f"method {method!r} requires N")
    if n > EXACT_CI_MAX_N:
        raise ResourceLimitError(f"exact CI coverage needs n <= {EXACT_CI_MAX_N}, got n={n}")
    pmf = binom_pmf_array(n, p)
    N = N if m.needs_N else None
    terms = [pmf[y] for y in range(n + 1) if p in binary_interval(method, n, y, N, alpha)]
    return min(1.0, math.fsum(terms))


def exact_pi_coverage(
    method: str, N: int, n: int, p: float, alpha: float = 0.05, snap_to_grid: bool = False,
) -> float:
    """Exact probability that the interval contains ``p_hat_N``.

    Sums ``Binomial(N, p)`` for ``Y_N`` against the hypergeometric law of
    the sample count given ``Y_N``.
    """
    m = _binary_method(method)
    if N > EXACT_PI_MAX_N:
        raise ResourceLimitError(f"exact PI coverage needs N <= {EXACT_PI_MAX_N}, got N={N}")
    if not 1 <= n <= N:
        raise DomainError(f"sizes must satisfy 1 <= n <= N, got n={n}, N={N}")
    lower = np.empty(n + 1)
    upper = np.empty(n + 1)
    for y in range(n + 1):
        iv = binary_interval(method, n, y, N if m.needs_N else None, alpha)
        if snap_to_grid:
            iv = iv.snapped(N)
        lower[y], upper[y] = iv.lower, iv.upper
    outer = binom_pmf_array(N, p)
    terms = []
    for k in range(N + 1):
        if outer[k] == 0.0:
            continue
        p_N = k / N
        inside = (lower <= p_N) & (p_N <= upper)
        terms.extend((outer[k] * hyper_pmf_array(N, k, n)[inside]).tolist())
    return min(1.0, math.fsum(terms))


def check_exact_limits(config: StudyConfig) -> None:
    if config.n > EXACT_CI_MAX_N:
        raise ResourceLimitError(f"exact mode needs n <= {EXACT_CI_MAX_N}, got n={config.n}")
    wants_pN = any(Target.STATISTIC_PN in config.targets_for(get_method(m)) for m in config.methods)
    if wants_pN and config.N > EXACT_PI_MAX_N:
        raise ResourceLimitError(f"exact prediction coverage needs N <= {EXACT_PI_MAX_N}, got N={config.N}")


def exact_study(config: StudyConfig) -> CoverageReport:
    """Exact counterpart of ``simulate_study`` for a Bernoulli process.

    ``mean_width`` is the expected width under Binomial(n, p) and
    ``replicates_used`` is 0, marking the row as exact.
    """
    config.validate()
    if not config.process.binary:
        raise DomainError("exact coverage is available for bernoulli processes only")
    check_exact_limits(config)
    report = CoverageReport(config, "exact")
    p, N, n, alpha = config.process.p, config.N, config.n, config.alpha
    pmf = binom_pmf_array(n, p)
    for name in config.methods:
        m = get_method(name)
        N_arg = N if m.needs_N else None
        ivs = [binary_interval(name, n, y, N_arg, alpha) for y in range(n + 1)]
        mean_width = math.fsum(pmf[y] * ivs[y].width for y in range(n + 1))
        for target in config.targets_for(m):
            if target is Target.PARAMETER_P:
                c = exact_ci_coverage(name, n, p, alpha, N)
            else:
                snap = config.snap_to_grid and m.kind is Kind.PREDICTION
                c = exact_pi_coverage(name, N, n, p, alpha, snap)
            report.records.append(CoverageRecord(name, target, m.kind, 1.0 - alpha, c, 0.0, mean_width, 0))
    return report


# -- limit diagnostics --------------------------------------------------------

@dataclass(frozen=True)
class DiagnosticRecord:
    scale: Scale
    ks_stat: float
    mean: float
    variance: float
    excluded: int
    replicates: int


def ks_distance(values: np.ndarray, cdf: Callable[[float], float] = norm_cdf) -> float:
    """Kolmogorov-Smirnov distance between the empirical law of ``values`` and ``cdf``."""
    x = np.sort(np.asarray(values, dtype=float))
    m = len(x)
    if m == 0:
        return math.nan
    F = np.array([cdf(v) for v in x.tolist()])
    i = np.arange(1, m + 1)
    return float(max(np.max(i / m - F), np.max(F - (i - 1) / m)))


def limit_diagnostic(config: StudyConfig, scale: Scale | str, threads: int = 1) -> DiagnosticRecord:
    """Simulate the standardized difference ``p_hat_n - p_hat_N`` and compare it with N(0, 1)."""
    scale = Scale(scale)
    proc = config.process
    if not proc.binary:
        raise DomainError("limit diagnostic needs a bernoulli process")
    if not 1 <= config.n < config.N:
        raise DomainError(f"limit diagnostic needs 1 <= n < N, got n={config.n}, N={config.N}")
    if config.replicates < 1:
        raise DomainError(f"replicates must be >= 1, got {config.replicates}")
    R, N, n = config.replicates, config.N, config.n
    stats = np.full(R, np.nan)

    def block(start: int, stop: int) -> None:
        for r in range(start, stop):
            Y_N, y = draw_binary(Rng(config.seed, r), proc.p, N, n)
            try:
                stats[r] = standardized_stat(y / n, Y_N / N, n, N, scale, p=proc.p)
            except DegenerateError:
                pass

    _run_replicates(R, threads, block)
    kept = stats[~np.isnan(stats)]
    excluded = R - len(kept)
    mean = float(np.mean(kept)) if len(kept) else math.nan
    variance = float(np.var(kept, ddof=1)) if len(kept) > 1 else math.nan
    return DiagnosticRecord(scale, ks_distance(kept), mean, variance, excluded, R)


def marginal_check(N: int, n: int, p: float) -> float:
    """Largest gap between the Binomial-mixed hypergeometric law of ``Y_n`` and Binomial(n, p)."""
    if N > MARGINAL_MAX_N:
        raise ResourceLimitError(f"marginal check needs N <= {MARGINAL_MAX_N}, got N={N}")
    if not 0 <= n <= N:
        raise DomainError(f"sizes must satisfy 0 <= n <= N, got n={n}, N={N}")
    outer = binom_pmf_array(N, p)
    cond = np.array([hyper_pmf_array(N, k, n) for k in range(N + 1)])
    mixed = [math.fsum((outer * cond[:, y]).tolist()) for y in range(n + 1)]
    return max(abs(mixed[y] - binom_pmf(n, p, y)) for y in range(n + 1))
