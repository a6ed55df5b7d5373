"""Breusch-Godfrey LM test for residual serial correlation."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..stats import TailQuery, ols, tail_probability
from .ardl import ArdlFit


@dataclass(frozen=True)
class BgRow:
    lag: int
    statistic: float
    df: int
    pvalue: float


@dataclass(frozen=True)
class BgResult:
    rows: tuple[BgRow, ...]
    nobs: int

    def to_dict(self) -> dict:
        return {
            "nobs": self.nobs,
            "rows": [{"lags": r.lag, "chi2": r.statistic, "df": r.df, "pvalue": r.pvalue} for r in self.rows],
        }


def breusch_godfrey(fit: ArdlFit, max_lag: int) -> BgResult:
    """LM = n * R^2 of resid on [design, resid_{t-1..t-p}] for p = 1..max_lag.

    Leading residual lags that fall before the sample are set to zero, so
    every auxiliary regression uses all n observations.
    """
    if max_lag < 1:
        raise ValueError("max_lag must be >= 1")
    e = fit.ols.resid
    n = len(e)
    if max_lag >= n - fit.design.shape[1]:
        raise ValueError(f"max_lag={max_lag} leaves no residual degrees of freedom (n={n})")
    rows = []
    for p in range(1, max_lag + 1):
        lags = np.zeros((n, p))
        for j in range(1, p + 1):
            lags[j:, j - 1] = e[:-j]
        aux = ols(np.column_stack([fit.design, lags]), e,
                  labels=(*fit.ols.labels, *(f"L{j}.resid" for j in range(1, p + 1))))
        lm = n * aux.r_squared
        rows.append(BgRow(p, lm, p, tail_probability(TailQuery("chi_square", lm, df1=p))))
    return BgResult(tuple(rows), n)
