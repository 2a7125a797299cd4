"""Exact pmfs/cdfs, the standard normal, and samplers.

Combinatorial terms are evaluated in log space from a log-factorial table
that grows on demand up to ``LOG_FACTORIAL_CAP`` entries; beyond the cap
``math.lgamma`` is used directly.
"""
from __future__ import annotations

import math
from numbers import Integral

import numpy as np

from .errors import DomainError
from .rng import Rng

LOG_FACTORIAL_CAP = 10**6
URN_LIMIT = 10**4

_log_fact = np.zeros(1)


def set_log_factorial_cap(cap: int) -> None:
    global LOG_FACTORIAL_CAP, _log_fact
    LOG_FACTORIAL_CAP = int(cap)
    _log_fact = _log_fact[: LOG_FACTORIAL_CAP + 1]


def _ensure_table(m: int) -> bool:
    """Grow the table to cover ``m``; False if ``m`` is beyond the cap."""
    global _log_fact
    if m > LOG_FACTORIAL_CAP:
        return False
    size = len(_log_fact)
    if m >= size:
        new = min(max(m + 1, 2 * size), LOG_FACTORIAL_CAP + 1)
        ext = np.array([math.lgamma(i + 1.0) for i in range(size, new)])
        _log_fact = np.concatenate([_log_fact, ext])
    return True


def log_factorial(k):
    """log(k!) for an int or an integer array."""
    kmax = int(np.max(k)) if np.ndim(k) else int(k)
    if _ensure_table(kmax):
        return _log_fact[k] if np.ndim(k) else float(_log_fact[k])
    if np.ndim(k):
        return np.array([math.lgamma(float(v) + 1.0) for v in np.asarray(k).ravel()]).reshape(np.shape(k))
    return math.lgamma(float(k) + 1.0)


def log_comb(n, k):
    return log_factorial(n) - log_factorial(k) - log_factorial(np.subtract(n, k))


def _count(name: str, v) -> int:
    if isinstance(v, bool) or not isinstance(v, Integral) or v < 0:
        raise DomainError(f"{name} must be a non-negative integer, got {v!r}")
    return int(v)


def _prob(name: str, v) -> float:
    v = float(v)
    if not 0.0 <= v <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {v!r}")
    return v


def _check_binom(n, p, k=None):
    n = _count("n", n)
    p = _prob("p", p)
    if k is None:
        return n, p
    k = _count("k", k)
    if k > n:
        raise DomainError(f"k must satisfy k <= n, got k={k}, n={n}")
    return n, p, k


def _check_hyper(N, K, n):
    N, K, n = _count("N", N), _count("K", K), _count("n", n)
    if K > N:
        raise DomainError(f"K must satisfy K <= N, got K={K}, N={N}")
    if n > N:
        raise DomainError(f"n must satisfy n <= N, got n={n}, N={N}")
    return N, K, n


# -- binomial ---------------------------------------------------------------

def binom_pmf_array(n: int, p: float) -> np.ndarray:
    """pmf of Binomial(n, p) at k = 0..n."""
    n, p = _check_binom(n, p)
    out = np.zeros(n + 1)
    if p == 0.0:
        out[0] = 1.0
        return out
    if p == 1.0:
        out[n] = 1.0
        return out
    k = np.arange(n + 1)
    logp = log_comb(n, k) + k * math.log(p) + (n - k) * math.log1p(-p)
    return np.exp(logp)


def binom_pmf(n: int, p: float, k: int) -> float:
    n, p, k = _check_binom(n, p, k)
    if p == 0.0:
        return 1.0 if k == 0 else 0.0
    if p == 1.0:
        return 1.0 if k == n else 0.0
    logp = log_comb(n, k) + k * math.log(p) + (n - k) * math.log1p(-p)
    return min(1.0, math.exp(logp))


def binom_cdf(n: int, p: float, k: int) -> float:
    """P(Y <= k) for Y ~ Binomial(n, p)."""
    n, p, k = _check_binom(n, p, k)
    if k == n:
        return 1.0
    return min(1.0, math.fsum(binom_pmf_array(n, p)[: k + 1]))


def binom_sf(n: int, p: float, k: int) -> float:
    """P(Y >= k), summed directly over the upper tail."""
    n, p, k = _check_binom(n, p, k)
    if k == 0:
        return 1.0
    return min(1.0, math.fsum(binom_pmf_array(n, p)[k:]))


# -- hypergeometric ---------------------------------------------------------

def hyper_support(N: int, K: int, n: int) -> tuple[int, int]:
    N, K, n = _check_hyper(N, K, n)
    return max(0, n - (N - K)), min(n, K)


def hyper_pmf_array(N: int, K: int, n: int) -> np.ndarray:
    """pmf of the successes in a size-``n`` draw without replacement, y = 0..n."""
    lo, hi = hyper_support(N, K, n)
    out = np.zeros(n + 1)
    y = np.arange(lo, hi + 1)
    logp = log_comb(K, y) + log_comb(N - K, n - y) - log_comb(N, n)
    out[lo : hi + 1] = np.exp(logp)
    return out


def hyper_pmf(N: int, K: int, n: int, y: int) -> float:
    lo, hi = hyper_support(N, K, n)
    y = _count("y", y)
    if y < lo or y > hi:
        return 0.0
    logp = log_comb(K, y) + log_comb(N - K, n - y) - log_comb(N, n)
    return min(1.0, math.exp(logp))


# -- normal -----------------------------------------------------------------

_SQRT2 = math.sqrt(2.0)
_SQRT2PI = math.sqrt(2.0 * math.pi)


def norm_cdf(x: float) -> float:
    return 0.5 * math.erfc(-x / _SQRT2)


def norm_pdf(x: float) -> float:
    return math.exp(-0.5 * x * x) / _SQRT2PI


# Acklam's rational approximation, relative error ~1.2e-9 before refinement.
_A = (-3.969683028665376e01, 2.209460984245205e02, -2.759285104469687e02,
      1.383577518672690e02, -3.066479806614716e01, 2.506628277459239e00)
_B = (-5.447609879822406e01, 1.615858368580409e02, -1.556989798598866e02,
      6.680131188771972e01, -1.328068155288572e01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e00,
      -2.549671236476337e00, 4.374664141464968e00, 2.938163982698783e00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e00,
      3.754408661907416e00)
_P_LOW = 0.02425


def _acklam(q: float) -> float:
    if q < _P_LOW:
        t = math.sqrt(-2.0 * math.log(q))
        num = ((((_C[0] * t + _C[1]) * t + _C[2]) * t + _C[3]) * t + _C[4]) * t + _C[5]
        den = (((_D[0] * t + _D[1]) * t + _D[2]) * t + _D[3]) * t + 1.0
        return num / den
    t = q - 0.5
    r = t * t
    num = (((((_A[0] * r + _A[1]) * r + _A[2]) * r + _A[3]) * r + _A[4]) * r + _A[5]) * t
    den = ((((_B[0] * r + _B[1]) * r + _B[2]) * r + _B[3]) * r + _B[4]) * r + 1.0
    return num / den


def norm_quantile(q: float) -> float:
    """Inverse of ``norm_cdf`` on (0, 1).

    A rational approximation followed by one Halley step on ``norm_cdf``.
    The upper half is obtained by symmetry, where ``1 - q`` is exact.
    """
    q = float(q)
    if not 0.0 < q < 1.0:
        raise DomainError(f"quantile level must lie in (0, 1), got {q!r}")
    if q > 0.5:
        return -norm_quantile(1.0 - q)
    if q == 0.5:
        return 0.0
    x = _acklam(q)
    e = norm_cdf(x) - q
    u = e * _SQRT2PI * math.exp(0.5 * x * x)
    return x - u / (1.0 + 0.5 * x * u)


# -- samplers ---------------------------------------------------------------

def sample_binomial(rng: Rng, n: int, p: float) -> int:
    """One Binomial(n, p) draw.

    Delegates to numpy, which uses inversion when ``n * min(p, 1 - p) <= 30``
    and BTPE rejection otherwise.
    """
    n, p = _check_binom(n, p)
    if p == 0.0 or n == 0:
        return 0
    if p == 1.0:
        return n
    return int(rng.generator.binomial(n, p))


def _urn_draws(rng: Rng, N: int, K: int, n: int) -> int:
    # Reduce to the smallest equivalent urn; each reflection is undone below.
    flip_n = n > N - n
    if flip_n:
        n = N - n
    K0 = K
    flip_k = K > N - K
    if flip_k:
        K = N - K
    draws, marked = (n, K) if n <= K else (K, n)
    y = 0
    remaining = N
    for u in rng.uniforms(draws).tolist():
        if u * remaining < marked:
            y += 1
            marked -= 1
        remaining -= 1
    if flip_k:
        y = n - y
    if flip_n:
        y = K0 - y
    return y


def _pmf_inversion(rng: Rng, N: int, K: int, n: int) -> int:
    lo, hi = hyper_support(N, K, n)
    cdf = np.cumsum(hyper_pmf_array(N, K, n)[lo : hi + 1])
    idx = int(np.searchsorted(cdf, rng.uniform() * cdf[-1], side="right"))
    return lo + min(idx, hi - lo)


def sample_hypergeometric(rng: Rng, N: int, K: int, n: int) -> int:
    """Successes in a uniform size-``n`` subset of ``N`` items, ``K`` of them marked."""
    N, K, n = _check_hyper(N, K, n)
    lo, hi = hyper_support(N, K, n)
    if lo == hi:
        return lo
    if N <= URN_LIMIT:
        return _urn_draws(rng, N, K, n)
    return _pmf_inversion(rng, N, K, n)


def sample_srs(rng: Rng, N: int, n: int) -> np.ndarray:
    """Sorted 0-based indices of a simple random sample of size ``n`` from ``range(N)``."""
    N, n = _count("N", N), _count("n", n)
    if n > N:
        raise DomainError(f"n must satisfy n <= N, got n={n}, N={N}")
    if n == N:
        return np.arange(N)
    return np.sort(rng.generator.choice(N, n, replace=False))
