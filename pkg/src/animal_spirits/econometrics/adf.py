"""Augmented Dickey-Fuller unit-root test."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Literal

import numpy as np

from ..stats import normal_cdf, ols

Deterministic = Literal["none", "constant"]
LEVELS = (0.01, 0.05, 0.10)
DEFAULT_LAGS = 4

# MacKinnon (1994) approximate asymptotic p-values, one I(1) series.
# p = Phi(poly(tau)); small-p polynomial below tau_star, large-p above.
_MACKINNON = {
    "constant": dict(
        tau_min=-18.83, tau_max=2.74, tau_star=-1.61,
        small=(2.1659, 1.4412, 0.038269),
        large=(1.7339, 0.93202, -0.12745, -0.010368),
    ),
    "none": dict(
        tau_min=-19.04, tau_max=math.inf, tau_star=-1.04,
        small=(0.6344, 1.2378, 0.032496),
        large=(0.4797, 0.93557, -0.06999, 0.033066),
    ),
}


class SeriesTooShortError(ValueError):
    pass


class ConstantSeriesError(ValueError):
    pass


@dataclass(frozen=True)
class AdfResult:
    statistic: float
    deterministic: Deterministic
    lags: int
    nobs: int
    critical_values: dict[float, float]
    pvalue: float

    def reject(self, level: float) -> bool:
        return self.statistic < self.critical_values[level]

    @property
    def decisions(self) -> dict[float, bool]:
        return {lv: self.reject(lv) for lv in LEVELS}

    def to_dict(self) -> dict:
        return {
            "statistic": self.statistic,
            "deterministic": self.deterministic,
            "lags": self.lags,
            "nobs": self.nobs,
            "critical_values": {f"{int(lv * 100)}%": cv for lv, cv in self.critical_values.items()},
            "pvalue": self.pvalue,
            "reject": {f"{int(lv * 100)}%": self.reject(lv) for lv in LEVELS},
        }


@lru_cache(maxsize=1)
def _fuller_table() -> dict[tuple[str, float], list[tuple[float, float]]]:
    ref = resources.files("animal_spirits") / "data" / "adf_critical_values.csv"
    rows = [line for line in ref.read_text().splitlines() if line and not line.startswith("#")]
    table: dict[tuple[str, float], list[tuple[float, float]]] = {}
    for row in csv.DictReader(rows):
        key = (row["deterministic"], float(row["level"]))
        table.setdefault(key, []).append((float(row["n"]), float(row["value"])))
    for pts in table.values():
        pts.sort()
    return table


def critical_value(deterministic: Deterministic, nobs: int, level: float) -> float:
    """Fuller critical value, linear in n between tabulated sample sizes."""
    pts = _fuller_table()[(deterministic, level)]
    finite = [(n, v) for n, v in pts if math.isfinite(n)]
    asym = [v for n, v in pts if not math.isfinite(n)]
    if nobs <= finite[0][0]:
        return finite[0][1]
    for (n0, v0), (n1, v1) in zip(finite, finite[1:]):
        if nobs <= n1:
            return v0 + (v1 - v0) * (nobs - n0) / (n1 - n0)
    n_last, v_last = finite[-1]
    if not asym:
        return v_last
    # beyond the last finite row: linear in 1/n towards the asymptote
    return asym[0] + (v_last - asym[0]) * n_last / nobs


def mackinnon_pvalue(stat: float, deterministic: Deterministic) -> float:
    c = _MACKINNON[deterministic]
    if stat > c["tau_max"]:
        return 1.0
    if stat < c["tau_min"]:
        return 0.0
    coef = c["small"] if stat <= c["tau_star"] else c["large"]
    z = sum(b * stat**j for j, b in enumerate(coef))
    return normal_cdf(z)


def adf_test(series, deterministic: Deterministic = "constant", lags: int = DEFAULT_LAGS) -> AdfResult:
    """Regress dx_t on x_{t-1}, dx_{t-1..t-lags} and an optional constant;
    the statistic is the t-ratio on x_{t-1}."""
    if deterministic not in ("none", "constant"):
        raise ValueError(f"deterministic must be 'none' or 'constant', got {deterministic!r}")
    if lags < 0:
        raise ValueError("lags must be non-negative")
    x = np.asarray(series, dtype=float)
    if x.ndim != 1:
        raise ValueError("series must be one-dimensional")
    if not np.isfinite(x).all():
        raise ValueError("series contains missing or non-finite values")
    k = lags + 1 + (deterministic == "constant")
    if len(x) - 1 - lags <= k:
        raise SeriesTooShortError(f"series of length {len(x)} too short for {lags} lags")
    if np.ptp(x) == 0.0:
        raise ConstantSeriesError("series is constant")

    dx = np.diff(x)
    n = len(dx) - lags
    cols = {"L1.level": x[lags:-1]}
    for j in range(1, lags + 1):
        cols[f"L{j}.diff"] = dx[lags - j: len(dx) - j]
    if deterministic == "constant":
        cols["const"] = np.ones(n)
    fit = ols(np.column_stack(list(cols.values())), dx[lags:], labels=tuple(cols))
    stat = float(fit.tvalues[0])
    cvs = {lv: critical_value(deterministic, n, lv) for lv in LEVELS}
    return AdfResult(stat, deterministic, lags, n, cvs, mackinnon_pvalue(stat, deterministic))
