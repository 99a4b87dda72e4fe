"""Two-sample Welch statistics used for publisher-group comparisons.

The two-tailed p-value is computed through the regularized incomplete beta
function: for a t statistic with ``df`` degrees of freedom,

    p = I_x(df/2, 1/2)   with   x = df / (df + t^2).

``betainc_regularized`` evaluates I_x(a, b) with the standard continued
fraction (modified Lentz iteration), which converges to near machine
precision for the a, b ranges that t-tests produce.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence


class StatsError(Exception):
    """Raised for samples that are too small to test."""


class WelchResult(NamedTuple):
    t: float
    df: float
    p: float
    degenerate: bool = False


_MAX_ITER = 300
_LENTZ_TINY = 1e-300
_EPS = 1e-15


def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta function."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _LENTZ_TINY:
        d = _LENTZ_TINY
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER + 1):
        m2 = 2 * m
        # even step
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _LENTZ_TINY:
            d = _LENTZ_TINY
        c = 1.0 + aa / c
        if abs(c) < _LENTZ_TINY:
            c = _LENTZ_TINY
        d = 1.0 / d
        h *= d * c
        # odd step
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _LENTZ_TINY:
            d = _LENTZ_TINY
        c = 1.0 + aa / c
        if abs(c) < _LENTZ_TINY:
            c = _LENTZ_TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise ArithmeticError(f"incomplete beta continued fraction did not converge for a={a}, b={b}, x={x}")


def betainc_regularized(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta function I_x(a, b) for a, b > 0, x in [0, 1]."""
    if a <= 0 or b <= 0:
        raise ValueError("betainc_regularized requires a > 0 and b > 0")
    if x < 0.0 or x > 1.0:
        raise ValueError("betainc_regularized requires x in [0, 1]")
    if x == 0.0 or x == 1.0:
        return x
    ln_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b) + a * math.log(x) + b * math.log1p(-x)
    )
    front = math.exp(ln_front)
    # Use the continued fraction directly where it converges fast, else the
    # symmetry I_x(a,b) = 1 - I_{1-x}(b,a).
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def t_sf_two_tailed(t: float, df: float) -> float:
    """Two-tailed t-distribution tail probability P(|T| >= |t|)."""
    if df <= 0:
        raise ValueError("degrees of freedom must be positive")
    if t == 0.0:
        return 1.0
    x = df / (df + t * t)
    return betainc_regularized(0.5 * df, 0.5, x)


def _mean_and_var(sample: Sequence[float]) -> tuple[float, float]:
    n = len(sample)
    mean = math.fsum(sample) / n
    var = math.fsum((value - mean) ** 2 for value in sample) / (n - 1)
    return mean, var


def welch_t_test(a: Sequence[float], b: Sequence[float]) -> WelchResult:
    """Welch's two-sample, two-tailed t-test with unbiased variances.

    Degrees of freedom follow Welch-Satterthwaite. When both samples have
    zero variance the test is degenerate: equal means give (t=0, p=1),
    different means give p=0; both cases are flagged.
    """
    if len(a) < 2 or len(b) < 2:
        raise StatsError(f"welch_t_test: each sample needs >= 2 values, got {len(a)} and {len(b)}")
    mean_a, var_a = _mean_and_var(a)
    mean_b, var_b = _mean_and_var(b)
    sem_a = var_a / len(a)
    sem_b = var_b / len(b)
    total = sem_a + sem_b
    if total == 0.0:  # both variances zero (or vanishingly below float range)
        df = float(len(a) + len(b) - 2)
        if mean_a == mean_b:
            return WelchResult(t=0.0, df=df, p=1.0, degenerate=True)
        t = math.inf if mean_a > mean_b else -math.inf
        return WelchResult(t=t, df=df, p=0.0, degenerate=True)
    t = (mean_a - mean_b) / math.sqrt(total)
    # Welch-Satterthwaite with the shares normalized first, so squaring a
    # tiny standard-error term cannot underflow the denominator to zero.
    share_a = sem_a / total
    share_b = sem_b / total
    df = 1.0 / (share_a**2 / (len(a) - 1) + share_b**2 / (len(b) - 1))
    return WelchResult(t=t, df=df, p=t_sf_two_tailed(t, df), degenerate=False)


def standard_error(sample: Sequence[float]) -> float:
    """s / sqrt(n) with unbiased s; requires n >= 2."""
    if len(sample) < 2:
        raise StatsError("standard_error requires at least two values")
    _, var = _mean_and_var(sample)
    return math.sqrt(var / len(sample))


def mean(sample: Sequence[float]) -> float:
    if not sample:
        raise StatsError("mean of empty sample")
    return math.fsum(sample) / len(sample)
