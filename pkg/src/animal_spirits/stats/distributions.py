"""Tail probabilities for the normal, Student t, chi-square and F families.

The t, chi-square and F tails reduce to the regularized incomplete gamma and
beta functions, evaluated by power series and modified-Lentz continued
fractions (Numerical Recipes, ch. 6).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

EPS = 1.0e-15
TINY = 1.0e-300
MAX_ITER = 10_000

Family = Literal["normal", "student_t", "chi_square", "f"]
Tail = Literal["upper", "two_sided"]


class InvalidQueryError(ValueError):
    """Raised for unknown families/tails or non-positive degrees of freedom."""


@dataclass(frozen=True)
class TailQuery:
    family: Family
    statistic: float
    df1: float | None = None
    df2: float | None = None
    tail: Tail = "upper"


def _gamma_series(a: float, x: float) -> float:
    # lower regularized P(a, x), valid for x < a + 1
    ap = a
    term = 1.0 / a
    total = term
    for _ in range(MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * EPS:
            break
    else:
        raise ArithmeticError(f"incomplete gamma series did not converge (a={a}, x={x})")
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _gamma_cf(a: float, x: float) -> float:
    # upper regularized Q(a, x), valid for x >= a + 1
    b = x + 1.0 - a
    c = 1.0 / TINY
    d = 1.0 / b
    h = d
    for i in range(1, MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < TINY:
            d = TINY
        c = b + an / c
        if abs(c) < TINY:
            c = TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < EPS:
            break
    else:
        raise ArithmeticError(f"incomplete gamma fraction did not converge (a={a}, x={x})")
    return math.exp(-x + a * math.log(x) - math.lgamma(a)) * h


def gammainc_lower(a: float, x: float) -> float:
    """Regularized lower incomplete gamma P(a, x)."""
    if a <= 0:
        raise InvalidQueryError("shape a must be positive")
    if x < 0:
        raise InvalidQueryError("x must be non-negative")
    if x == 0.0:
        return 0.0
    if x < a + 1.0:
        return _gamma_series(a, x)
    return 1.0 - _gamma_cf(a, x)


def gammainc_upper(a: float, x: float) -> float:
    """Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x)."""
    if a <= 0:
        raise InvalidQueryError("shape a must be positive")
    if x < 0:
        raise InvalidQueryError("x must be non-negative")
    if x == 0.0:
        return 1.0
    if math.isinf(x):
        return 0.0
    if x < a + 1.0:
        return 1.0 - _gamma_series(a, x)
    return _gamma_cf(a, x)


def _beta_cf(a: float, b: float, x: float) -> float:
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < TINY:
        d = TINY
    d = 1.0 / d
    h = d
    for m in range(1, MAX_ITER):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < TINY:
            d = TINY
        c = 1.0 + aa / c
        if abs(c) < TINY:
            c = TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < TINY:
            d = TINY
        c = 1.0 + aa / c
        if abs(c) < TINY:
            c = TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < EPS:
            return h
    raise ArithmeticError(f"incomplete beta fraction did not converge (a={a}, b={b}, x={x})")


def betainc(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta I_x(a, b)."""
    if a <= 0 or b <= 0:
        raise InvalidQueryError("beta parameters must be positive")
    if not 0.0 <= x <= 1.0:
        raise InvalidQueryError("x must lie in [0, 1]")
    if x == 0.0 or x == 1.0:
        return x
    log_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + a * math.log(x) + b * math.log1p(-x)
    )
    front = math.exp(log_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_cf(a, b, x) / a
    return 1.0 - front * _beta_cf(b, a, 1.0 - x) / b


def normal_sf(z: float) -> float:
    return 0.5 * math.erfc(z / math.sqrt(2.0))


def normal_cdf(z: float) -> float:
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


def t_two_sided(t: float, df: float) -> float:
    if math.isinf(t):
        return 0.0
    t2 = t * t
    # I_{df/(df+t^2)}(df/2, 1/2); use the complement argument when t^2 is small
    if t2 < df:
        return 1.0 - betainc(0.5, df / 2.0, t2 / (df + t2))
    return betainc(df / 2.0, 0.5, df / (df + t2))


def chi2_sf(x: float, df: float) -> float:
    if x <= 0:
        return 1.0
    return gammainc_upper(df / 2.0, x / 2.0)


def f_sf(f: float, df1: float, df2: float) -> float:
    if f <= 0:
        return 1.0
    if math.isinf(f):
        return 0.0
    denom = df2 + df1 * f
    x = df2 / denom
    if x > 0.5:
        # 1 - x formed directly; subtracting from 1 loses digits for small f
        return 1.0 - betainc(df1 / 2.0, df2 / 2.0, df1 * f / denom)
    return betainc(df2 / 2.0, df1 / 2.0, x)


def _require_df(value: float | None, name: str) -> float:
    if value is None or not value > 0 or math.isnan(value):
        raise InvalidQueryError(f"{name} must be a positive number, got {value!r}")
    return float(value)


def tail_probability(q: TailQuery) -> float:
    """Upper or two-sided tail probability for ``q.statistic``.

    ``two_sided`` is defined for the symmetric families (normal, student_t)
    only; chi-square and F are one-sided by construction.
    """
    stat = float(q.statistic)
    if math.isnan(stat):
        raise InvalidQueryError("statistic is NaN")
    if q.tail not in ("upper", "two_sided"):
        raise InvalidQueryError(f"unknown tail {q.tail!r}")

    if q.family == "normal":
        if q.tail == "two_sided":
            return min(1.0, 2.0 * normal_sf(abs(stat)))
        return normal_sf(stat)
    if q.family == "student_t":
        df = _require_df(q.df1, "df1")
        p2 = t_two_sided(abs(stat), df)
        if q.tail == "two_sided":
            return p2
        return 0.5 * p2 if stat >= 0 else 1.0 - 0.5 * p2
    if q.family in ("chi_square", "f") and q.tail == "two_sided":
        raise InvalidQueryError(f"two_sided tail is undefined for {q.family}")
    if q.family == "chi_square":
        return chi2_sf(stat, _require_df(q.df1, "df1"))
    if q.family == "f":
        return f_sf(stat, _require_df(q.df1, "df1"), _require_df(q.df2, "df2"))
    raise InvalidQueryError(f"unknown family {q.family!r}")
