"""Behavioural New Keynesian model with heuristic switching.

Per period the model solves

    AD      y  = a1*Ey + (1-a1)*y_lag - a2*(i - Epi) + e_d
    AS      pi = b1*Epi + (1-b1)*pi_lag + b2*y + e_s
    Taylor  i  = max(c1*(pi - pi*) + c2*y + c3*i_lag + u, -iota)

jointly in (y, pi, i). Expectations are a population-weighted mix of a
steady-state rule and a naive extrapolative rule. Two schemes set the weights:

* ``degrauwe`` -- separate fundamentalist/extrapolator shares for output and
  inflation, chosen by a logit on geometrically discounted squared forecast
  errors (fitness).
* ``proano`` -- one persistence weight shared by both targets, a logit on the
  gap between the actual policy rate and the unconstrained Taylor rate.

Shocks are drawn from ``numpy.random.default_rng(seed)`` (PCG64) as three
consecutive blocks of ``T`` standard normals (demand, supply, policy), each
scaled by its standard deviation.
"""
from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass, fields
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .params import ModelParams


class SingularSystemError(ArithmeticError):
    pass


class WindowError(IndexError):
    pass


class DivergenceError(ArithmeticError):
    """The simulated path left the range of finite floats."""


class ExpectationScheme(str, enum.Enum):
    DEGRAUWE_JI = "degrauwe"
    PROANO_LOJAK = "proano"

    @classmethod
    def parse(cls, value: "str | ExpectationScheme") -> "ExpectationScheme":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown expectation scheme {value!r}; use 'degrauwe' or 'proano'") from None


@dataclass(frozen=True)
class ShockDraws:
    demand: np.ndarray
    supply: np.ndarray
    policy: np.ndarray

    def __len__(self) -> int:
        return len(self.demand)


@dataclass(frozen=True)
class HeuristicState:
    """Fitness (negated discounted MSE) of each rule, per forecast target."""

    u_fund_output: float = 0.0
    u_extr_output: float = 0.0
    u_fund_inflation: float = 0.0
    u_extr_inflation: float = 0.0


class AgentFractions(NamedTuple):
    frac_fund: float
    frac_extr: float


class PersistenceWeights(NamedTuple):
    w_persist: float
    w_steady: float


class PeriodSolution(NamedTuple):
    y: float
    pi: float
    i: float
    zlb: bool
    i_taylor: float


def draw_shocks(params: ModelParams) -> ShockDraws:
    rng = np.random.default_rng(params.seed)
    z = rng.standard_normal((3, params.T))
    return ShockDraws(
        demand=params.sigma_demand * z[0],
        supply=params.sigma_supply * z[1],
        policy=params.sigma_policy * z[2],
    )


def update_fitness(prev_fitness: float, latest_sq_error: float, rho: float) -> float:
    """One step of U_t = rho*U_{t-1} - (1-rho)*e^2.

    Starting from 0 this equals -sum_k (1-rho)*rho**k * e_{t-k}^2.
    """
    return rho * prev_fitness - (1.0 - rho) * latest_sq_error


def _logistic_pair(z: float) -> tuple[float, float]:
    # (logistic(z), 1 - logistic(z)) summing to exactly 1.0: the larger share
    # is computed first so the complement 1 - big is exact (Sterbenz).
    big = 1.0 / (1.0 + math.exp(-abs(z)))
    small = 1.0 - big
    return (big, small) if z >= 0 else (small, big)


def heuristic_fractions(u_fund: float, u_extr: float, gamma: float) -> AgentFractions:
    """Logit shares of fundamentalists and extrapolators from their fitness."""
    frac_fund, frac_extr = _logistic_pair(gamma * (u_fund - u_extr))
    return AgentFractions(frac_fund, frac_extr)


def degrauwe_expectation(x_prev: float, x_ss: float, fractions: AgentFractions) -> float:
    return fractions.frac_fund * x_ss + fractions.frac_extr * x_prev


def animal_spirit_index(frac_extr_output: float, y_prev: float) -> float:
    if y_prev > 0:
        return 2.0 * frac_extr_output - 1.0
    if y_prev < 0:
        return 1.0 - 2.0 * frac_extr_output
    return 0.0


def extrapolator_index(frac_extr_inflation: float, pi_prev: float) -> float:
    if pi_prev > 0:
        return frac_extr_inflation
    if pi_prev < 0:
        return -frac_extr_inflation
    return 0.0


def proano_weights(i_actual: float, i_taylor: float, mu: float) -> PersistenceWeights:
    w_persist, w_steady = _logistic_pair(mu * (i_actual - i_taylor))
    return PersistenceWeights(w_persist, w_steady)


def proano_animal_spirit(w_persist: float) -> float:
    # w_persist - w_steady with w_steady = 1 - w_persist
    return 2.0 * w_persist - 1.0


def taylor_rate(params: ModelParams, pi_t: float, y_t: float, i_prev: float, u_t: float) -> tuple[float, bool]:
    """Policy rate with the floor at -iota, and whether the floor binds."""
    shadow = params.c1 * (pi_t - params.pi_star) + params.c2 * y_t + params.c3 * i_prev + u_t
    if shadow < -params.iota:
        return -params.iota, True
    return shadow, False


def solve_period(
    params: ModelParams,
    y_prev: float,
    pi_prev: float,
    i_prev: float,
    exp_y: float,
    exp_pi: float,
    e_demand: float,
    e_supply: float,
    u_policy: float,
) -> PeriodSolution:
    """Solve AD, AS and the Taylor rule simultaneously for one period.

    The unconstrained 3x3 system is solved by elimination; if the implied
    rate is below -iota, the rate is fixed at the floor and (y, pi) re-solved
    from AD and AS. ``i_taylor`` is the unclamped Taylor expression evaluated
    at the returned (y, pi).
    """
    p = params
    a = p.a1 * exp_y + (1.0 - p.a1) * y_prev + p.a2 * exp_pi + e_demand  # y = a - a2*i
    b = p.b1 * exp_pi + (1.0 - p.b1) * pi_prev + e_supply  # pi = b + b2*y
    c = -p.c1 * p.pi_star + p.c3 * i_prev + u_policy  # i = c1*pi + c2*y + c
    slope = p.c1 * p.b2 + p.c2
    denom = 1.0 + p.a2 * slope
    if denom == 0.0:
        raise SingularSystemError("1 + a2*(c2 + c1*b2) == 0: period system is singular")

    y = (a - p.a2 * (p.c1 * b + c)) / denom
    pi = b + p.b2 * y
    i = p.c1 * pi + p.c2 * y + c
    if i >= -p.iota:
        return PeriodSolution(y, pi, i, False, i)

    i = -p.iota
    y = a - p.a2 * i
    pi = b + p.b2 * y
    i_taylor = p.c1 * pi + p.c2 * y + c
    return PeriodSolution(y, pi, i, True, i_taylor)


@dataclass
class SimPath:
    scheme: ExpectationScheme
    output_gap: np.ndarray
    inflation: np.ndarray
    interest_rate: np.ndarray
    taylor_rate: np.ndarray
    zlb_binding: np.ndarray
    animal_spirit: np.ndarray
    extrapolator_index: np.ndarray
    frac_fund_output: np.ndarray
    frac_extr_output: np.ndarray
    frac_fund_inflation: np.ndarray
    frac_extr_inflation: np.ndarray
    # degrauwe only
    u_fund_output: np.ndarray | None = None
    u_extr_output: np.ndarray | None = None
    u_fund_inflation: np.ndarray | None = None
    u_extr_inflation: np.ndarray | None = None
    # proano only: realised weights after observing the policy gap
    w_persist: np.ndarray | None = None
    w_steady: np.ndarray | None = None
    start: int = 0

    def __len__(self) -> int:
        return len(self.output_gap)

    def series(self) -> dict[str, np.ndarray]:
        out = {}
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, np.ndarray):
                out[f.name] = value
        return out

    def to_csv(self, path: str | Path | None = None) -> str:
        """Write one row per period; returns the CSV text.

        Floats are written with ``repr`` so values round-trip exactly.
        """
        cols = self.series()
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["period", *cols])
        for t in range(len(self)):
            row: list[object] = [self.start + t]
            for name, arr in cols.items():
                v = arr[t]
                row.append(int(v) if arr.dtype == bool else repr(float(v)))
            w.writerow(row)
        text = buf.getvalue()
        if path is not None:
            Path(path).write_text(text)
        return text


def _empty(T: int) -> np.ndarray:
    return np.zeros(T, dtype=float)


def simulate(params: ModelParams, scheme: ExpectationScheme | str = ExpectationScheme.DEGRAUWE_JI,
             shocks: ShockDraws | None = None) -> SimPath:
    """Run the model for ``params.T`` periods from the steady state.

    Pre-sample values of y, pi and i are zero. Expectations at t use
    information dated t-1 or earlier; fitness and weights are updated from
    realised values.
    """
    scheme = ExpectationScheme.parse(scheme)
    if shocks is None:
        shocks = draw_shocks(params)
    if len(shocks) != params.T:
        raise ValueError(f"shock length {len(shocks)} != T={params.T}")
    try:
        if scheme is ExpectationScheme.DEGRAUWE_JI:
            path = _simulate_degrauwe(params, shocks)
        else:
            path = _simulate_proano(params, shocks)
    except OverflowError as exc:
        raise DivergenceError(f"simulation overflowed to non-finite values ({scheme.value} scheme)") from exc
    for name in ("output_gap", "inflation", "interest_rate"):
        bad = np.flatnonzero(~np.isfinite(getattr(path, name)))
        if bad.size:
            raise DivergenceError(f"{name} is non-finite from period {bad[0]} on ({scheme.value} scheme)")
    return path


def _simulate_degrauwe(p: ModelParams, shocks: ShockDraws) -> SimPath:
    T = p.T
    y, pi, i, it, s_idx, c_idx = (_empty(T) for _ in range(6))
    zlb = np.zeros(T, dtype=bool)
    ff_y, fe_y, ff_pi, fe_pi = (_empty(T) for _ in range(4))
    uf_y, ue_y, uf_pi, ue_pi = (_empty(T) for _ in range(4))

    def lag(x: np.ndarray, t: int, j: int) -> float:
        return float(x[t - j]) if t - j >= 0 else 0.0

    state = HeuristicState()
    for t in range(T):
        # score the forecasts made at t-2 for t-1
        y1, y3 = lag(y, t, 1), lag(y, t, 3)
        pi1, pi3 = lag(pi, t, 1), lag(pi, t, 3)
        state = HeuristicState(
            update_fitness(state.u_fund_output, (y1 - 0.0) ** 2, p.rho),
            update_fitness(state.u_extr_output, (y1 - y3) ** 2, p.rho),
            update_fitness(state.u_fund_inflation, (pi1 - p.pi_star) ** 2, p.rho),
            update_fitness(state.u_extr_inflation, (pi1 - pi3) ** 2, p.rho),
        )
        fr_y = heuristic_fractions(state.u_fund_output, state.u_extr_output, p.gamma)
        fr_pi = heuristic_fractions(state.u_fund_inflation, state.u_extr_inflation, p.gamma)
        exp_y = degrauwe_expectation(y1, 0.0, fr_y)
        exp_pi = degrauwe_expectation(pi1, p.pi_star, fr_pi)

        sol = solve_period(p, y1, pi1, lag(i, t, 1), exp_y, exp_pi,
                           shocks.demand[t], shocks.supply[t], shocks.policy[t])
        y[t], pi[t], i[t], zlb[t], it[t] = sol.y, sol.pi, sol.i, sol.zlb, sol.i_taylor
        s_idx[t] = animal_spirit_index(fr_y.frac_extr, y1)
        c_idx[t] = extrapolator_index(fr_pi.frac_extr, pi1)
        ff_y[t], fe_y[t] = fr_y
        ff_pi[t], fe_pi[t] = fr_pi
        uf_y[t], ue_y[t] = state.u_fund_output, state.u_extr_output
        uf_pi[t], ue_pi[t] = state.u_fund_inflation, state.u_extr_inflation

    return SimPath(
        scheme=ExpectationScheme.DEGRAUWE_JI,
        output_gap=y, inflation=pi, interest_rate=i, taylor_rate=it, zlb_binding=zlb,
        animal_spirit=s_idx, extrapolator_index=c_idx,
        frac_fund_output=ff_y, frac_extr_output=fe_y,
        frac_fund_inflation=ff_pi, frac_extr_inflation=fe_pi,
        u_fund_output=uf_y, u_extr_output=ue_y,
        u_fund_inflation=uf_pi, u_extr_inflation=ue_pi,
    )


def _simulate_proano(p: ModelParams, shocks: ShockDraws) -> SimPath:
    T = p.T
    y, pi, i, it, a_idx, c_idx = (_empty(T) for _ in range(6))
    zlb = np.zeros(T, dtype=bool)
    f_steady, f_persist, wp, ws = (_empty(T) for _ in range(4))

    w = PersistenceWeights(0.5, 0.5)
    y1 = pi1 = i1 = 0.0
    for t in range(T):
        exp_y = w.w_persist * y1 + w.w_steady * 0.0
        exp_pi = w.w_persist * pi1 + w.w_steady * p.pi_star
        sol = solve_period(p, y1, pi1, i1, exp_y, exp_pi,
                           shocks.demand[t], shocks.supply[t], shocks.policy[t])
        y[t], pi[t], i[t], zlb[t], it[t] = sol.y, sol.pi, sol.i, sol.zlb, sol.i_taylor
        f_steady[t], f_persist[t] = w.w_steady, w.w_persist
        c_idx[t] = extrapolator_index(w.w_persist, pi1)

        w = proano_weights(sol.i, sol.i_taylor, p.mu)
        wp[t], ws[t] = w
        a_idx[t] = proano_animal_spirit(w.w_persist)
        y1, pi1, i1 = sol.y, sol.pi, sol.i

    return SimPath(
        scheme=ExpectationScheme.PROANO_LOJAK,
        output_gap=y, inflation=pi, interest_rate=i, taylor_rate=it, zlb_binding=zlb,
        animal_spirit=a_idx, extrapolator_index=c_idx,
        frac_fund_output=f_steady, frac_extr_output=f_persist,
        frac_fund_inflation=f_steady.copy(), frac_extr_inflation=f_persist.copy(),
        w_persist=wp, w_steady=ws,
    )


def slice_window(path: SimPath, start: int, length: int) -> SimPath:
    """Contiguous segment ``[start, start + length)`` of a path."""
    if start < 0 or length < 0 or start + length > len(path):
        raise WindowError(f"window [{start}, {start + length}) outside path of length {len(path)}")
    kw = {}
    for f in fields(path):
        value = getattr(path, f.name)
        kw[f.name] = value[start:start + length].copy() if isinstance(value, np.ndarray) else value
    kw["start"] = path.start + start
    return SimPath(**kw)
