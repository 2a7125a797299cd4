"""Confidence intervals for a process rate and prediction intervals for
statistics of the finite collection the process produced."""

from .dist import (
    binom_cdf,
    binom_pmf,
    hyper_pmf,
    norm_cdf,
    norm_quantile,
    sample_binomial,
    sample_hypergeometric,
    sample_srs,
)
from .errors import DegenerateError, DomainError, ResourceLimitError
from .estimation import clopper_pearson_ci, wald_ci, wilson_ci
from .harness import (
    CoverageReport,
    ProcessSpec,
    StudyConfig,
    exact_ci_coverage,
    exact_pi_coverage,
    exact_study,
    limit_diagnostic,
    marginal_check,
    simulate_studies,
    simulate_study,
)
from .interval import Interval, Kind, Target
from .moments import (
    MomentPair,
    SampleSummary,
    conditional_moments_count,
    conditional_moments_proportion,
    unconditional_moments_proportion,
    var_estimate_biased,
    var_estimate_unbiased,
)
from .prediction import (
    MeanSummary,
    Scale,
    conservative_pi,
    mean_pi,
    quadratic_pi,
    quadratic_pi_nfree,
    standardized_stat,
    wald_fpc_pi,
)
from .rng import Rng

__version__ = "0.1.0"
