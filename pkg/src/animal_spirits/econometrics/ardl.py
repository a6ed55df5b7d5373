"""ARDL(p, q1, ..., qk) estimation and exhaustive AIC lag search."""
from __future__ import annotations

import csv
import itertools
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from ..stats import DegenerateFitError, OlsFit, RankDeficientError, information_criterion, ols


class InsufficientDataError(ValueError):
    pass


@dataclass(frozen=True)
class ArdlSpec:
    p: int
    q: tuple[int, ...]
    constant: bool = True

    def __post_init__(self):
        object.__setattr__(self, "q", tuple(int(v) for v in self.q))
        if self.p < 1:
            raise ValueError(f"ARDL needs p >= 1, got p={self.p}")
        if any(v < 0 for v in self.q):
            raise ValueError(f"distributed-lag orders must be >= 0, got {self.q}")

    @property
    def max_lag(self) -> int:
        return max((self.p, *self.q))

    @property
    def n_params(self) -> int:
        return int(self.constant) + self.p + sum(v + 1 for v in self.q)

    @property
    def orders(self) -> tuple[int, ...]:
        return (self.p, *self.q)

    def __str__(self) -> str:
        return "ARDL(" + ",".join(str(v) for v in self.orders) + ")"

    @classmethod
    def parse(cls, text: str, constant: bool = True) -> "ArdlSpec":
        parts = [int(v) for v in text.strip().removeprefix("ARDL").strip("() ").split(",")]
        return cls(parts[0], tuple(parts[1:]), constant)


@dataclass(frozen=True)
class TimeSeriesData:
    """Aligned columns: one dependent variable and ordered regressors."""

    dependent: str
    regressors: tuple[str, ...]
    columns: Mapping[str, np.ndarray]
    labels: tuple[str, ...] | None = None  # e.g. quarter labels

    def __post_init__(self):
        cols = {k: np.asarray(v, dtype=float) for k, v in self.columns.items()}
        object.__setattr__(self, "columns", cols)
        object.__setattr__(self, "regressors", tuple(self.regressors))
        for name in (self.dependent, *self.regressors):
            if name not in cols:
                raise KeyError(f"column {name!r} not in data")
        lengths = {len(cols[n]) for n in (self.dependent, *self.regressors)}
        if len(lengths) != 1:
            raise ValueError(f"columns differ in length: {sorted(lengths)}")

    def __len__(self) -> int:
        return len(self.columns[self.dependent])

    @property
    def y(self) -> np.ndarray:
        return self.columns[self.dependent]

    def x(self, j: int) -> np.ndarray:
        return self.columns[self.regressors[j]]

    def select(self, regressors: Sequence[str], dependent: str | None = None) -> "TimeSeriesData":
        return TimeSeriesData(dependent or self.dependent, tuple(regressors), self.columns, self.labels)

    @classmethod
    def from_csv(cls, path: str | Path, dependent: str, regressors: Sequence[str],
                 label_column: str | None = "quarter") -> "TimeSeriesData":
        with Path(path).open(newline="") as fh:
            rows = list(csv.DictReader(fh))
        if not rows:
            raise InsufficientDataError(f"{path}: no rows")
        cols: dict[str, np.ndarray] = {}
        for name in (dependent, *regressors):
            if name not in rows[0]:
                raise KeyError(f"{path}: column {name!r} missing")
            try:
                cols[name] = np.array([float(r[name]) for r in rows])
            except ValueError:
                raise ValueError(f"{path}: column {name!r} has empty or non-numeric values") from None
        labels = tuple(r[label_column] for r in rows) if label_column and label_column in rows[0] else None
        return cls(dependent, tuple(regressors), cols, labels)


def lag(x: np.ndarray, k: int, start: int) -> np.ndarray:
    """x_{t-k} for t = start..len(x)-1."""
    return x[start - k: len(x) - k]


def level_design(data: TimeSeriesData, spec: ArdlSpec, holdout: int) -> tuple[np.ndarray, np.ndarray, tuple[str, ...]]:
    if len(spec.q) != len(data.regressors):
        raise ValueError(f"{spec} has {len(spec.q)} distributed lags for {len(data.regressors)} regressors")
    if holdout < spec.max_lag:
        raise ValueError(f"holdout {holdout} < largest lag {spec.max_lag} in {spec}")
    cols: dict[str, np.ndarray] = {}
    y = data.y
    for i in range(1, spec.p + 1):
        cols[f"L{i}.{data.dependent}"] = lag(y, i, holdout)
    for j, qj in enumerate(spec.q):
        x = data.x(j)
        for l in range(qj + 1):
            cols[f"L{l}.{data.regressors[j]}"] = lag(x, l, holdout)
    if spec.constant:
        cols["const"] = np.ones(len(y) - holdout)
    return y[holdout:], np.column_stack(list(cols.values())), tuple(cols)


@dataclass
class ArdlFit:
    spec: ArdlSpec
    holdout: int
    dependent: str
    regressors: tuple[str, ...]
    ols: OlsFit
    design: np.ndarray = field(repr=False)
    response: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return self.ols.n

    @property
    def aic(self) -> float:
        return information_criterion(self.ols)

    def to_dict(self) -> dict:
        return {
            "spec": str(self.spec),
            "orders": {"p": self.spec.p, **{f"q[{r}]": q for r, q in zip(self.regressors, self.spec.q)}},
            "dependent": self.dependent,
            "regressors": list(self.regressors),
            "holdout": self.holdout,
            **self.ols.to_dict(),
        }


def fit_ardl(data: TimeSeriesData, spec: ArdlSpec, holdout: int | None = None) -> ArdlFit:
    """Least-squares ARDL fit on observations ``holdout..N-1``.

    The first ``holdout`` observations are dropped whatever the spec, so
    candidates from one grid share the estimation sample.
    """
    holdout = spec.max_lag if holdout is None else holdout
    n_est = len(data) - holdout
    if n_est <= spec.n_params:
        raise InsufficientDataError(
            f"{spec}: {n_est} usable observations for {spec.n_params} parameters")
    y, X, labels = level_design(data, spec, holdout)
    if not (np.isfinite(y).all() and np.isfinite(X).all()):
        raise ValueError("missing values inside the estimation window")
    fit = ols(X, y, labels=labels)
    return ArdlFit(spec, holdout, data.dependent, data.regressors, fit, X, y)


@dataclass(frozen=True)
class LagGrid:
    p_range: tuple[int, ...]
    q_ranges: tuple[tuple[int, ...], ...]
    constant: bool = True

    def __post_init__(self):
        object.__setattr__(self, "p_range", tuple(self.p_range))
        object.__setattr__(self, "q_ranges", tuple(tuple(r) for r in self.q_ranges))
        if not self.p_range or any(not r for r in self.q_ranges):
            raise ValueError("lag grid is empty")

    @classmethod
    def full(cls, max_p: int, max_q: int, n_regressors: int, constant: bool = True) -> "LagGrid":
        """p in 1..max_p and every q in 0..max_q."""
        return cls(tuple(range(1, max_p + 1)), tuple(tuple(range(max_q + 1)) for _ in range(n_regressors)), constant)

    @property
    def holdout(self) -> int:
        return max((*self.p_range, *(v for r in self.q_ranges for v in r)))

    def __len__(self) -> int:
        size = len(self.p_range)
        for r in self.q_ranges:
            size *= len(r)
        return size

    def __iter__(self) -> Iterable[ArdlSpec]:
        for p, *qs in itertools.product(self.p_range, *self.q_ranges):
            yield ArdlSpec(p, tuple(qs), self.constant)


@dataclass
class GridResult:
    best_spec: ArdlSpec
    best_fit: ArdlFit
    ranking: list[tuple[ArdlSpec, float]]  # ascending AIC
    failures: list[tuple[ArdlSpec, str]]
    holdout: int
    n_candidates: int
    fits: dict[ArdlSpec, ArdlFit] = field(default_factory=dict, repr=False)

    def to_dict(self) -> dict:
        return {
            "candidates": self.n_candidates,
            "estimated": len(self.ranking),
            "holdout": self.holdout,
            "nobs": self.best_fit.n,
            "selected": str(self.best_spec),
            "selected_aic": self.best_fit.aic,
            "ranking": [
                {"rank": i, "spec": str(s), "aic": a, "n_params": s.n_params,
                 "nobs": self.fits[s].n if s in self.fits else None}
                for i, (s, a) in enumerate(self.ranking, start=1)
            ],
            "failures": [{"spec": str(s), "error": e} for s, e in self.failures],
        }


def _rank_key(spec: ArdlSpec, aic: float) -> tuple:
    return (aic, spec.n_params, spec.orders)


def grid_search(data: TimeSeriesData, grid: LagGrid) -> GridResult:
    """Fit every grid cell on the common sample and pick the minimum AIC.

    Ties go to the spec with fewer parameters, then to the lexicographically
    smallest lag orders. Cells whose fit fails are reported, not fatal.
    """
    holdout = grid.holdout
    fits: dict[ArdlSpec, ArdlFit] = {}
    failures: list[tuple[ArdlSpec, str]] = []
    for spec in grid:
        try:
            fit = fit_ardl(data, spec, holdout)
            fit.aic
        except (RankDeficientError, DegenerateFitError, InsufficientDataError, ValueError) as exc:
            failures.append((spec, str(exc)))
            continue
        fits[spec] = fit
    if not fits:
        reasons = "; ".join(f"{s}: {e}" for s, e in failures[:3])
        raise InsufficientDataError(f"no grid candidate could be estimated ({reasons})")
    ranking = sorted(((s, f.aic) for s, f in fits.items()), key=lambda sa: _rank_key(*sa))
    best = ranking[0][0]
    return GridResult(best, fits[best], ranking, failures, holdout, len(grid), fits)
