"""Ordinary least squares with classical inference.

Coefficients come from a Householder QR factorisation of the design; rank is
decided on a column-pivoted QR so that collinear columns can be named.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.linalg

from .distributions import TailQuery, tail_probability

# |R_jj| <= RANK_TOL * |R_00| on the pivoted factor marks a dependent column.
RANK_TOL = 1e-10
# SSR at or below this fraction of sum(y^2) is treated as an exact fit.
DEGENERATE_SSR_TOL = (64 * np.finfo(float).eps) ** 2


class RankDeficientError(ValueError):
    def __init__(self, columns: Sequence[str]):
        self.columns = list(columns)
        super().__init__(f"design matrix is rank deficient; dependent columns: {', '.join(self.columns)}")


class NonFiniteInputError(ValueError):
    pass


class DegenerateFitError(ArithmeticError):
    """Raised when an information criterion is requested for an exact fit."""


@dataclass(frozen=True)
class DesignMatrix:
    values: np.ndarray
    labels: tuple[str, ...]

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 2:
            raise ValueError("design matrix must be two-dimensional")
        if len(self.labels) != values.shape[1]:
            raise ValueError("one label per column required")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def k(self) -> int:
        return self.values.shape[1]

    @classmethod
    def from_columns(cls, columns: dict[str, np.ndarray]) -> "DesignMatrix":
        return cls(np.column_stack(list(columns.values())), tuple(columns))


@dataclass
class OlsFit:
    labels: tuple[str, ...]
    params: np.ndarray
    bse: np.ndarray
    tvalues: np.ndarray
    pvalues: np.ndarray
    resid: np.ndarray
    fitted: np.ndarray
    ssr: float
    r_squared: float
    adj_r_squared: float
    sigma2: float  # SSR / (n - k)
    sigma2_ml: float  # SSR / n
    n: int
    k: int
    has_constant: bool
    log_likelihood: float | None
    aic: float | None
    bic: float | None
    f_statistic: float | None
    f_pvalue: float | None
    cov_params: np.ndarray = field(repr=False)

    @property
    def degenerate(self) -> bool:
        return self.log_likelihood is None

    @property
    def root_mse(self) -> float:
        return math.sqrt(self.sigma2)

    @property
    def df_resid(self) -> int:
        return self.n - self.k

    def coef(self, label: str) -> float:
        return float(self.params[self.labels.index(label)])

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "coefficients": [
                {
                    "term": lab,
                    "coef": float(b),
                    "std_err": float(s),
                    "t": float(t),
                    "p": float(p),
                }
                for lab, b, s, t, p in zip(self.labels, self.params, self.bse, self.tvalues, self.pvalues)
            ],
            "r_squared": self.r_squared,
            "adj_r_squared": self.adj_r_squared,
            "log_likelihood": self.log_likelihood,
            "aic": self.aic,
            "bic": self.bic,
            "f_statistic": self.f_statistic,
            "f_df": [self.k - 1, self.n - self.k] if self.has_constant else None,
            "f_pvalue": self.f_pvalue,
            "ssr": self.ssr,
            "root_mse": self.root_mse,
            "root_mse_ml": math.sqrt(self.sigma2_ml),
        }


def gaussian_loglike(ssr: float, n: int) -> float:
    """Concentrated Gaussian log-likelihood with the ML variance SSR/n."""
    return -0.5 * n * (math.log(2.0 * math.pi) + math.log(ssr / n) + 1.0)


def check_rank(X: np.ndarray, labels: Sequence[str]) -> None:
    _, r, piv = scipy.linalg.qr(X, mode="economic", pivoting=True)
    diag = np.abs(np.diag(r))
    if diag.size == 0 or diag[0] == 0.0:
        raise RankDeficientError(labels)
    bad = diag <= RANK_TOL * diag[0]
    if bad.any():
        raise RankDeficientError([labels[j] for j in sorted(piv[bad])])


def ols(X: DesignMatrix | np.ndarray, y: np.ndarray, labels: Sequence[str] | None = None) -> OlsFit:
    """Fit ``y = X b + u`` by least squares.

    Parameters
    ----------
    X : DesignMatrix or ndarray
        Regressors, shape (n, k). Include a column of ones for a constant.
    y : ndarray
        Response, shape (n,).
    labels : sequence of str, optional
        Column labels when ``X`` is a bare array.

    Returns
    -------
    OlsFit
        Estimates with homoskedastic standard errors. ``log_likelihood``,
        ``aic`` and ``bic`` are None for an exact fit (SSR == 0).
    """
    if isinstance(X, DesignMatrix):
        labels = X.labels
        Xv = X.values
    else:
        Xv = np.asarray(X, dtype=float)
        if Xv.ndim == 1:
            Xv = Xv[:, None]
        labels = tuple(labels) if labels is not None else tuple(f"x{j}" for j in range(Xv.shape[1]))
    y = np.asarray(y, dtype=float).ravel()
    n, k = Xv.shape
    if y.shape[0] != n:
        raise ValueError(f"response has {y.shape[0]} rows, design has {n}")
    if not (np.isfinite(Xv).all() and np.isfinite(y).all()):
        raise NonFiniteInputError("design matrix or response contains non-finite values")
    if n <= k:
        raise ValueError(f"need more observations than regressors (n={n}, k={k})")
    check_rank(Xv, labels)

    q, r = np.linalg.qr(Xv, mode="reduced")
    params = scipy.linalg.solve_triangular(r, q.T @ y)
    fitted = Xv @ params
    resid = y - fitted
    ssr = float(resid @ resid)

    has_constant = bool(np.any(np.all(Xv == Xv[0], axis=0) & (Xv[0] != 0)))
    if has_constant:
        centered = y - y.mean()
        sst = float(centered @ centered)
    else:
        sst = float(y @ y)
    r_squared = 1.0 - ssr / sst if sst > 0 else 0.0
    df_resid = n - k
    adj_r_squared = 1.0 - (1.0 - r_squared) * ((n - 1) if has_constant else n) / df_resid

    sigma2 = ssr / df_resid
    r_inv = scipy.linalg.solve_triangular(r, np.eye(k))
    cov_unscaled = r_inv @ r_inv.T
    cov = sigma2 * cov_unscaled
    bse = np.sqrt(np.diag(cov))
    with np.errstate(divide="ignore", invalid="ignore"):
        tvalues = params / bse
    pvalues = np.array([
        tail_probability(TailQuery("student_t", float(t), df1=df_resid, tail="two_sided"))
        if np.isfinite(t) else 0.0
        for t in tvalues
    ])

    degenerate = ssr <= DEGENERATE_SSR_TOL * max(float(y @ y), 1.0)
    if degenerate:
        loglike = aic = bic = None
    else:
        loglike = gaussian_loglike(ssr, n)
        aic = -2.0 * loglike + 2.0 * k
        bic = -2.0 * loglike + math.log(n) * k

    f_stat = f_p = None
    if has_constant and k > 1 and not degenerate:
        f_stat = ((sst - ssr) / (k - 1)) / sigma2
        f_p = tail_probability(TailQuery("f", f_stat, df1=k - 1, df2=df_resid))

    return OlsFit(
        labels=tuple(labels),
        params=params,
        bse=bse,
        tvalues=tvalues,
        pvalues=pvalues,
        resid=resid,
        fitted=fitted,
        ssr=ssr,
        r_squared=r_squared,
        adj_r_squared=adj_r_squared,
        sigma2=sigma2,
        sigma2_ml=ssr / n,
        n=n,
        k=k,
        has_constant=has_constant,
        log_likelihood=loglike,
        aic=aic,
        bic=bic,
        f_statistic=f_stat,
        f_pvalue=f_p,
        cov_params=cov,
    )


def information_criterion(fit: OlsFit) -> float:
    """AIC = -2 loglik + 2k, counting every mean parameter including the constant."""
    if fit.aic is None:
        raise DegenerateFitError("exact fit (SSR == 0): AIC is -inf and not reported")
    return fit.aic
