import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats

from predint import DomainError, Kind, SampleSummary, Target
from predint.dist import binom_cdf, binom_sf
from predint.estimation import clopper_pearson_ci, wald_ci, wilson_ci, z_critical

Z = 1.959963984540054
PENNY = SampleSummary(200, 83)
CI_FUNCS = [wald_ci, wilson_ci, clopper_pearson_ci]

summaries = st.integers(1, 300).flatmap(lambda n: st.builds(SampleSummary, st.just(n), st.integers(0, n)))


def test_wald_penny():
    iv = wald_ci(PENNY, 0.05)
    assert (iv.lower, iv.upper) == pytest.approx((0.3467134652660564, 0.4832865347339436), abs=1e-12)
    assert iv.kind is Kind.CONFIDENCE and iv.target is Target.PARAMETER_P
    assert iv.level == 0.95
    assert not iv.degenerate and not iv.small_sample


def test_wald_degenerate_at_zero():
    iv = wald_ci(SampleSummary(10, 0), 0.05)
    assert (iv.lower, iv.upper) == (0.0, 0.0)
    assert iv.degenerate and iv.small_sample


def test_wald_collapses_as_alpha_goes_to_one():
    s = SampleSummary(100, 50)
    widths = [wald_ci(s, a).width for a in (0.5, 0.9, 0.999, 0.999999)]
    assert all(a > b for a, b in zip(widths, widths[1:]))
    assert widths[-1] < 1e-5
    assert wald_ci(s, 0.999999).midpoint == pytest.approx(0.5)


def test_wald_clamps_to_unit_interval():
    iv = wald_ci(SampleSummary(10, 1), 0.05)
    assert iv.lower == 0.0 and iv.upper < 1


def test_wilson_at_zero():
    iv = wilson_ci(SampleSummary(10, 0), 0.05)
    assert iv.lower == 0.0
    assert iv.upper == pytest.approx(Z**2 / (10 + Z**2), abs=1e-14)
    assert iv.upper == pytest.approx(0.27753, abs=1e-5)


def test_wilson_penny_against_high_precision():
    iv = wilson_ci(PENNY, 0.05)
    assert (iv.lower, iv.upper) == pytest.approx((0.3489428544975757, 0.4842608509865596), abs=1e-12)
    assert 0.415 in iv
    assert abs(iv.midpoint - 0.5) < abs(wald_ci(PENNY).midpoint - 0.5)


def test_wilson_at_all_successes():
    iv = wilson_ci(SampleSummary(100, 100), 0.05)
    assert iv.upper == 1.0
    assert iv.lower == pytest.approx(100 / (100 + Z**2), abs=1e-13)


def test_clopper_pearson_closed_forms_at_boundary():
    lo = clopper_pearson_ci(SampleSummary(10, 0), 0.05)
    assert lo.lower == 0.0
    assert lo.upper == pytest.approx(1 - 0.025 ** (1 / 10), abs=1e-10)
    assert lo.upper == pytest.approx(0.30850, abs=1e-5)
    hi = clopper_pearson_ci(SampleSummary(10, 10), 0.05)
    assert hi.upper == 1.0
    assert hi.lower == pytest.approx(0.025 ** (1 / 10), abs=1e-10)


def test_clopper_pearson_penny():
    iv = clopper_pearson_ci(PENNY, 0.05)
    # beta-quantile values computed independently at 40 digits
    assert iv.lower == pytest.approx(0.34593366818078006, abs=1e-10)
    assert iv.upper == pytest.approx(0.48662468561680271, abs=1e-10)
    assert 0.415 in iv
    assert iv.width > wald_ci(PENNY).width


@pytest.mark.parametrize("n", [1, 5, 17, 60])
def test_clopper_pearson_matches_beta_quantiles(n):
    for y in range(n + 1):
        iv = clopper_pearson_ci(SampleSummary(n, y), 0.1)
        lo = 0.0 if y == 0 else stats.beta.ppf(0.05, y, n - y + 1)
        hi = 1.0 if y == n else stats.beta.isf(0.05, y + 1, n - y)
        assert iv.lower == pytest.approx(lo, abs=1e-9)
        assert iv.upper == pytest.approx(hi, abs=1e-9)


@pytest.mark.parametrize("n", [3, 10, 50, 200])
def test_clopper_pearson_duality(n):
    for y in range(n + 1):
        iv = clopper_pearson_ci(SampleSummary(n, y), 0.05)
        if y > 0:
            assert binom_sf(n, iv.lower, y) == pytest.approx(0.025, abs=1e-8)
        if y < n:
            assert binom_cdf(n, iv.upper, y) == pytest.approx(0.025, abs=1e-8)


@pytest.mark.parametrize("f", CI_FUNCS)
@pytest.mark.parametrize("alpha", [0.0, 1.0, -0.5, 2.0])
def test_alpha_domain(f, alpha):
    with pytest.raises(DomainError):
        f(PENNY, alpha)


@settings(max_examples=300, deadline=None)
@given(summaries, st.floats(0.001, 0.5))
def test_score_and_exact_intervals_contain_p_hat(s, alpha):
    for f in (wilson_ci, clopper_pearson_ci):
        iv = f(s, alpha)
        assert 0.0 <= iv.lower <= iv.upper <= 1.0
        assert iv.lower - 1e-12 <= s.p_hat <= iv.upper + 1e-12


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 2000), st.integers(1, 9), st.floats(0.001, 0.5))
def test_wilson_strictly_inside_for_interior_counts(n, tenths, alpha):
    y = max(1, min(n - 1, n * tenths // 10))
    if n < 2:
        return
    iv = wilson_ci(SampleSummary(n, y), alpha)
    assert 0.0 < iv.lower and iv.upper < 1.0


@pytest.mark.parametrize("n,y", [(20, 7), (100, 35), (250, 100), (40, 20)])
def test_wald_width_scales_with_root_n(n, y):
    w1 = wald_ci(SampleSummary(n, y), 0.05).width
    w4 = wald_ci(SampleSummary(4 * n, 4 * y), 0.05).width
    assert w4 / w1 == pytest.approx(0.5, abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(summaries, st.floats(0.001, 0.9), st.floats(0.001, 0.9))
def test_level_monotonicity(s, a1, a2):
    a1, a2 = sorted((a1, a2))
    for f in CI_FUNCS:
        outer, inner = f(s, a1), f(s, a2)
        assert outer.lower <= inner.lower + 1e-11
        assert inner.upper <= outer.upper + 1e-11


def test_z_critical():
    assert z_critical(0.05) == pytest.approx(Z, abs=1e-12)
    assert z_critical(0.2) == pytest.approx(1.2815515655446004, abs=1e-12)
    assert math.isclose(z_critical(0.05), -stats.norm.ppf(0.025), abs_tol=1e-12)


def test_interval_rejects_inverted_bounds():
    from predint.interval import Interval

    with pytest.raises(DomainError):
        Interval(0.6, 0.5, 0.95, Kind.CONFIDENCE, Target.PARAMETER_P, "x")


def test_interval_snapping_rounds_outward():
    iv = wald_ci(PENNY, 0.05).snapped(400)
    assert iv.lower == 138 / 400 and iv.upper == 194 / 400
    assert np.isclose(iv.lower * 400, round(iv.lower * 400))
