"""Exit criteria for the package; each test prints one PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v -s``.
"""
import math
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from predint import SampleSummary
from predint.cli import main
from predint.dist import binom_pmf_array
from predint.estimation import wald_ci, wilson_ci
from predint.harness import (
    ProcessSpec,
    StudyConfig,
    exact_ci_coverage,
    exact_pi_coverage,
    limit_diagnostic,
    marginal_check,
    simulate_study,
)
from predint.moments import (
    conditional_moments_count,
    conditional_moments_proportion,
    var_estimate_biased,
    var_estimate_unbiased,
)
from predint.prediction import (
    MeanSummary,
    Scale,
    conservative_pi,
    mean_pi,
    quadratic_pi,
    quadratic_pi_nfree,
    wald_fpc_pi,
)

P_GRID_19 = [k / 20 for k in range(1, 20)]


def test_1_exact_unbiasedness(criterion):
    with criterion(1, "exact unbiasedness of the variance estimators", 1.0) as c:
        worst_u = worst_b = 0.0
        for n in range(2, 31):
            summaries = [SampleSummary(n, y) for y in range(n + 1)]
            unb = np.array([var_estimate_unbiased(s) for s in summaries])
            bia = np.array([var_estimate_biased(s) for s in summaries])
            for p in P_GRID_19:
                pmf = binom_pmf_array(n, p)
                target = p * (1 - p) / n
                worst_u = max(worst_u, abs(math.fsum((pmf * unb).tolist()) - target))
                worst_b = max(worst_b, abs(math.fsum((pmf * bia).tolist()) - (n - 1) / n * target))
        c.note(f"max error unbiased {worst_u:.1e}, biased {worst_b:.1e}")
        assert worst_u <= 1e-12 and worst_b <= 1e-12


def test_2_conditional_moment_oracle(criterion):
    with criterion(2, "conditional moments match subset enumeration", 10.0) as c:
        worst = 0.0
        for N in range(2, 13):
            for n in range(1, N + 1):
                subsets = list(combinations(range(N), n))
                for Y_N in range(N + 1):
                    # the first Y_N individuals are the successes
                    counts = [sum(1 for i in s if i < Y_N) for s in subsets]
                    m = Fraction(sum(counts), len(counts))
                    v = sum((Fraction(k) - m) ** 2 for k in counts) / len(counts)
                    cnt = conditional_moments_count(N, Y_N, n)
                    prop = conditional_moments_proportion(N, Y_N, n)
                    worst = max(worst, abs(cnt.mean - float(m)), abs(cnt.variance - float(v)),
                                abs(prop.mean - float(m / n)), abs(prop.variance - float(v / n**2)))
        c.note(f"max error {worst:.1e}")
        assert worst <= 1e-10


def test_3_marginalization_identity(criterion):
    with criterion(3, "binomial mixture of hypergeometrics is binomial", 30.0) as c:
        worst = max(
            marginal_check(N, n, p)
            for N in range(1, 41)
            for n in range(0, N + 1)
            for p in (0.1, 0.25, 0.5, 0.75, 0.9)
        )
        c.note(f"max gap {worst:.1e}")
        assert worst <= 1e-10


def test_4_clopper_pearson_exactness(criterion):
    with criterion(4, "Clopper-Pearson exact coverage >= 0.95", 30.0) as c:
        worst = min(
            exact_ci_coverage("clopper-pearson", n, k / 100, 0.05)
            for n in (5, 10, 25, 50)
            for k in range(1, 100)
        )
        c.note(f"min coverage {worst:.6f}")
        assert worst >= 0.95


def test_5_wilson_quadratic_correspondence(criterion):
    with criterion(5, "N-free quadratic PI equals Wilson CI; fpc width ratio", 1.0) as c:
        cases = 0
        worst = 0.0
        for n in (9, 10, 23, 50, 100, 250, 500, 1000, 2500, 5000):
            for y in np.linspace(0, n, 10).round().astype(int).tolist():
                for alpha in (0.001, 0.01, 0.05, 0.1, 0.3):
                    s = SampleSummary(n, y)
                    a, b = quadratic_pi_nfree(s, alpha), wilson_ci(s, alpha)
                    worst = max(worst, abs(a.lower - b.lower), abs(a.upper - b.upper))
                    cases += 1
        ratio_worst = 0.0
        ratio_cases = 0
        for n, y in ((20, 7), (100, 41), (200, 83), (500, 260)):
            for N in (n + 1, 2 * n, 10 * n, 10**6):
                for alpha in (0.01, 0.05, 0.2):
                    s = SampleSummary(n, y)
                    inner, outer = wald_fpc_pi(s, N, alpha), conservative_pi(s, alpha)
                    assert outer.lower > 0 and outer.upper < 1
                    ratio_worst = max(ratio_worst, abs(inner.width / outer.width - math.sqrt(1 - n / N)))
                    ratio_cases += 1
        c.note(f"{cases} Wilson cases, max diff {worst:.1e}; {ratio_cases} fpc cases, max diff {ratio_worst:.1e}")
        assert cases >= 500
        assert worst <= 1e-12 and ratio_worst <= 1e-12


def test_6_exact_prediction_coverage(criterion):
    with criterion(6, "exact PI coverage at N=200, n=100", 60.0) as c:
        for p in (0.3, 0.4, 0.5):
            fpc = exact_pi_coverage("wald-fpc", 200, 100, p, 0.05)
            quad = exact_pi_coverage("quadratic", 200, 100, p, 0.05)
            cons = exact_pi_coverage("conservative", 200, 100, p, 0.05)
            c.note(f"p={p}: wald-fpc {fpc:.4f}, quadratic {quad:.4f}, conservative {cons:.4f}")
            assert 0.90 <= fpc <= 0.98
            assert 0.90 <= quad <= 0.98
            assert cons >= fpc


@pytest.mark.slow
def test_7_monte_carlo_prediction_coverage(criterion):
    with criterion(7, "Monte Carlo PI coverage, R=1e5", 120.0) as c:
        binary = StudyConfig(ProcessSpec.bernoulli(0.4), 10_000, 500, 0.05, 100_000, 20240101, ("wald-fpc",))
        cov = simulate_study(binary).record("wald-fpc").coverage
        normal = StudyConfig(ProcessSpec.normal(98.6, 0.7), 1000, 100, 0.05, 100_000, 20240101, ("mean",))
        mean_cov = simulate_study(normal).record("mean").coverage
        c.note(f"wald-fpc {cov:.4f}, mean {mean_cov:.4f}")
        assert abs(cov - 0.95) <= 0.01
        assert abs(mean_cov - 0.95) <= 0.015


def test_8_limiting_distributions(criterion):
    with criterion(8, "standardized statistics are close to N(0,1)", 60.0) as c:
        cfg = StudyConfig(ProcessSpec.bernoulli(0.3), 4000, 2000, replicates=10_000, seed=20240101)
        for scale in Scale:
            rec = limit_diagnostic(cfg, scale)
            c.note(f"{scale.value}: ks {rec.ks_stat:.4f}, mean {rec.mean:+.4f}, var {rec.variance:.4f}")
            assert rec.excluded == 0
            assert rec.ks_stat < 0.05
            assert abs(rec.mean) < 0.05
            assert abs(rec.variance - 1) < 0.05


def test_9_census_collapse_and_determinism(criterion, capsys):
    with criterion(9, "census collapse; seeded output identical across threads", 10.0) as c:
        for n in (1, 2, 10, 57, 400):
            for y in sorted({0, 1, n // 2, n - 1, n}):
                s = SampleSummary(n, max(0, y))
                for alpha in (0.01, 0.05, 0.5):
                    assert wald_fpc_pi(s, n, alpha).width == 0.0
                    assert quadratic_pi(s, n, alpha).width == 0.0
            if n >= 2:
                assert mean_pi(MeanSummary(n, 98.6, 0.7), n).width == 0.0
        # a census still leaves the CI for p with positive width
        assert wald_ci(SampleSummary(400, 200)).width > 0

        commands = [
            ["coverage", "--mode", "monte-carlo", "--seed", "7", "--N", "2000", "--n", "100", "--p", "0.4",
             "--replicates", "4000", "--methods", "wald,wald-fpc,quadratic,clopper-pearson", "--all-targets"],
            ["coverage", "--process", "normal", "--mu", "98.6", "--sigma", "0.7", "--seed", "7", "--N", "1000",
             "--n", "100", "--replicates", "2000", "--methods", "mean"],
            ["diagnose", "--p", "0.3", "--N", "800", "--n", "400", "--replicates", "3000", "--scale", "all",
             "--seed", "7"],
        ]
        for argv in commands:
            outputs = []
            for threads in ("1", "1", "4"):
                for fmt in ("csv",):
                    assert main(argv + ["--threads", threads, "--format", fmt]) == 0
                    outputs.append(capsys.readouterr().out)
            assert outputs[0] == outputs[1] == outputs[2]
            c.note(f"{argv[0]}: {len(outputs[0])} bytes identical x3")
