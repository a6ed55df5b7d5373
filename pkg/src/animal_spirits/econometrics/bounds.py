"""Pesaran-Shin-Smith bounds test for a levels relationship (case III)."""
from __future__ import annotations

import csv
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Literal

import numpy as np

from ..stats import OlsFit, TailQuery, ols, tail_probability
from .ardl import ArdlFit, TimeSeriesData, lag

Decision = Literal["reject", "inconclusive", "fail_to_reject"]
LEVELS = (0.10, 0.05, 0.01)


class UnsupportedBoundsError(ValueError):
    pass


@dataclass(frozen=True)
class BoundPair:
    lower: float  # I(0)
    upper: float  # I(1)
    lower_text: str
    upper_text: str


@dataclass(frozen=True)
class BoundsTable:
    # (case, k, level, stat) -> bounds
    entries: dict[tuple[str, int, float, str], BoundPair]
    source: str

    def get(self, case: str, k: int, level: float, stat: str) -> BoundPair:
        try:
            return self.entries[(case, k, level, stat)]
        except KeyError:
            ks = sorted({key[1] for key in self.entries if key[0] == case})
            raise UnsupportedBoundsError(
                f"no case {case} bounds for k={k} at {level:.0%} ({stat}); table covers k in {ks}") from None

    @classmethod
    def load(cls, path: str | Path | None = None) -> "BoundsTable":
        """Read the CSV table (columns case,k,n_band,level,stat,lower,upper).

        ``None`` loads the bundled finite-sample table.
        """
        if path is None:
            ref = resources.files("animal_spirits") / "data" / "bounds_critical_values.csv"
            text, source = ref.read_text(), "bundled:bounds_critical_values.csv"
        else:
            text, source = Path(path).read_text(), str(path)
        rows = [line for line in text.splitlines() if line.strip() and not line.startswith("#")]
        entries = {}
        for row in csv.DictReader(rows):
            key = (row["case"].strip(), int(row["k"]), float(row["level"]), row["stat"].strip())
            lo, hi = row["lower"].strip(), row["upper"].strip()
            entries[key] = BoundPair(float(lo), float(hi), lo, hi)
        return cls(entries, source)


@dataclass(frozen=True)
class BoundsResult:
    f_statistic: float
    t_statistic: float
    case: str
    k: int
    bounds: dict[float, dict[str, BoundPair]]  # level -> {"F": pair, "t": pair}
    level: float
    decision: Decision
    f_df: tuple[int, int] | None = None

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "k": self.k,
            "F": self.f_statistic,
            "t": self.t_statistic,
            "f_df": list(self.f_df) if self.f_df else None,
            "critical_values": {
                f"{int(round(lv * 100))}%": {
                    stat: {"I0": pair.lower, "I1": pair.upper, "printed": f"[{pair.lower_text}, {pair.upper_text}]"}
                    for stat, pair in by_stat.items()
                }
                for lv, by_stat in self.bounds.items()
            },
            "per_level": {
                f"{int(round(lv * 100))}%": {
                    "F": _position(self.f_statistic, by_stat["F"], upper_tail=True),
                    "t": _position(self.t_statistic, by_stat["t"], upper_tail=False),
                }
                for lv, by_stat in self.bounds.items()
            },
            "level": self.level,
            "decision": self.decision,
            "decision_text": DECISION_TEXT[self.decision],
        }


DECISION_TEXT = {
    "reject": "Reject H0 (levels relationship)",
    "inconclusive": "Inconclusive",
    "fail_to_reject": "Do not reject H0 (No levels relationship)",
}


def _position(stat: float, pair: BoundPair, upper_tail: bool) -> str:
    # where the statistic sits relative to the band, oriented so "beyond I(1)" is evidence against H0
    s, lo, hi = (stat, pair.lower, pair.upper) if upper_tail else (-stat, -pair.lower, -pair.upper)
    if s < lo:
        return "inside I(0)"
    if s > hi:
        return "beyond I(1)"
    return "between"


def bounds_decision(f_stat: float, t_stat: float, k: int, level: float = 0.05,
                    table: BoundsTable | None = None, case: str = "III") -> BoundsResult:
    """Compare F and t against the bound pairs.

    fail_to_reject when both statistics lie inside their I(0) bound at 10%;
    reject when both lie beyond their I(1) bound at ``level``; otherwise
    inconclusive.
    """
    table = table or BoundsTable.load()
    bounds = {lv: {s: table.get(case, k, lv, s) for s in ("F", "t")} for lv in LEVELS}
    if level not in bounds:
        raise UnsupportedBoundsError(f"level must be one of {LEVELS}")
    b10, bl = bounds[0.10], bounds[level]
    if f_stat < b10["F"].lower and t_stat > b10["t"].lower:
        decision: Decision = "fail_to_reject"
    elif f_stat > bl["F"].upper and t_stat < bl["t"].upper:
        decision = "reject"
    else:
        decision = "inconclusive"
    return BoundsResult(f_stat, t_stat, case, k, bounds, level, decision)


@dataclass
class EcForm:
    """Conditional error-correction regression implied by an ARDL fit."""

    fit: OlsFit
    response: np.ndarray  # dy_t
    lagged_level: np.ndarray  # y_{t-1}
    level_terms: tuple[str, ...]

    def implied_levels(self) -> np.ndarray:
        """Fitted y_t = fitted dy_t + y_{t-1}."""
        return self.fit.fitted + self.lagged_level


def ec_design(data: TimeSeriesData, fit: ArdlFit) -> tuple[np.ndarray, np.ndarray, tuple[str, ...], tuple[str, ...], np.ndarray]:
    """Design of dy_t on y_{t-1}, the regressor levels, lagged differences and constant.

    A regressor with q >= 1 enters in levels at t-1 with dx_t..dx_{t-q+1};
    with q = 0 it enters at t (x_{t-1} plus dx_t would add a free parameter).
    """
    spec, h = fit.spec, fit.holdout
    y = data.y
    dy = np.diff(y, prepend=np.nan)
    cols: dict[str, np.ndarray] = {f"L1.{data.dependent}": lag(y, 1, h)}
    level_terms = [f"L1.{data.dependent}"]
    for j, qj in enumerate(spec.q):
        x, name = data.x(j), data.regressors[j]
        key = f"L1.{name}" if qj >= 1 else f"L0.{name}"
        cols[key] = lag(x, 1 if qj >= 1 else 0, h)
        level_terms.append(key)
    for i in range(1, spec.p):
        cols[f"L{i}D.{data.dependent}"] = lag(dy, i, h)
    for j, qj in enumerate(spec.q):
        x, name = data.x(j), data.regressors[j]
        dx = np.diff(x, prepend=np.nan)
        for s in range(qj):
            cols[f"L{s}D.{name}"] = lag(dx, s, h)
    if spec.constant:
        cols["const"] = np.ones(len(y) - h)
    return dy[h:], np.column_stack(list(cols.values())), tuple(cols), tuple(level_terms), lag(y, 1, h)


def ec_regression(data: TimeSeriesData, fit: ArdlFit) -> EcForm:
    dy, X, labels, level_terms, ylag = ec_design(data, fit)
    return EcForm(ols(X, dy, labels=labels), dy, ylag, level_terms)


def bounds_test(fit: ArdlFit, data: TimeSeriesData, level: float = 0.05,
                table: BoundsTable | None = None) -> tuple[BoundsResult, EcForm]:
    """Bounds test on the error-correction form of ``fit`` (case III).

    F is the Wald statistic for joint nullity of the level coefficients; t is
    the t-ratio on y_{t-1}.
    """
    if not fit.spec.constant:
        raise UnsupportedBoundsError("case III bounds test needs the ARDL fitted with a constant")
    if data.regressors != fit.regressors or data.dependent != fit.dependent:
        raise ValueError("data columns do not match the fitted ARDL")
    k = len(fit.spec.q)
    table = table or BoundsTable.load()
    table.get("III", k, 0.10, "F")  # fail fast on unsupported k

    ec = ec_regression(data, fit)
    dy, X, labels, level_terms, _ = ec_design(data, fit)
    keep = [i for i, lab in enumerate(labels) if lab not in level_terms]
    restricted = ols(X[:, keep], dy, labels=[labels[i] for i in keep])
    m = len(level_terms)
    df_resid = ec.fit.n - ec.fit.k
    f_stat = ((restricted.ssr - ec.fit.ssr) / m) / (ec.fit.ssr / df_resid)
    t_stat = float(ec.fit.tvalues[labels.index(level_terms[0])])
    res = bounds_decision(f_stat, t_stat, k, level, table)
    res = BoundsResult(res.f_statistic, res.t_statistic, res.case, res.k, res.bounds, res.level,
                       res.decision, (m, df_resid))
    return res, ec


def f_pvalue(result: BoundsResult) -> float | None:
    """Ordinary F-distribution tail of the Wald statistic (not the bounds distribution)."""
    if result.f_df is None:
        return None
    return tail_probability(TailQuery("f", result.f_statistic, *result.f_df))
