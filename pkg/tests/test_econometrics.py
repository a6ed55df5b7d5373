import itertools

import numpy as np
import pandas as pd
import pytest
import statsmodels.api as sm
from hypothesis import given, settings
from hypothesis import strategies as st
from statsmodels.stats.diagnostic import acorr_breusch_godfrey
from statsmodels.tsa.ardl import UECM
from statsmodels.tsa.stattools import adfuller

from animal_spirits.econometrics import (
    ArdlSpec,
    BoundsTable,
    ConstantSeriesError,
    LagGrid,
    SeriesTooShortError,
    TimeSeriesData,
    UnsupportedBoundsError,
    adf_test,
    bounds_decision,
    bounds_test,
    breusch_godfrey,
    critical_value,
    ec_regression,
    fit_ardl,
    grid_search,
    mackinnon_pvalue,
)


def ardl_data(seed, n=104, k=2, phi=0.0):
    """y_t = 0.5 y_{t-1} + 0.3 x1_{t-1} - 0.2 x2_t + u_t with AR(phi) errors."""
    rng = np.random.default_rng(seed)
    xs = rng.normal(size=(k, n))
    e = rng.normal(size=n)
    u = np.zeros(n)
    y = np.zeros(n)
    for t in range(n):
        u[t] = (phi * u[t - 1] if t else 0.0) + e[t]
        y[t] = (0.5 * y[t - 1] + 0.3 * xs[0, t - 1] if t else 0.0) + (-0.2 * xs[1, t] if k > 1 else 0.0) + u[t]
    cols = {"y": y, **{f"x{j + 1}": xs[j] for j in range(k)}}
    return TimeSeriesData("y", tuple(f"x{j + 1}" for j in range(k)), cols)


# ---- ADF

@pytest.mark.parametrize("det,reg", [("constant", "c"), ("none", "n")])
@pytest.mark.parametrize("seed", range(5))
def test_adf_against_statsmodels(det, reg, seed):
    x = np.cumsum(np.random.default_rng(seed).normal(size=150)) * 0.3 + np.random.default_rng(seed + 9).normal(size=150)
    ours = adf_test(x, det, lags=4)
    ref = adfuller(x, maxlag=4, regression=reg, autolag=None)
    assert ours.statistic == pytest.approx(ref[0], rel=1e-10)
    assert ours.pvalue == pytest.approx(ref[1], rel=1e-8)
    assert ours.nobs == ref[3]


def test_adf_critical_values_anchor():
    assert round(critical_value("constant", 103, 0.01), 3) == -3.509
    assert round(critical_value("constant", 103, 0.05), 3) == -2.890
    assert critical_value("constant", 100, 0.01) == -3.51
    assert critical_value("constant", 10**9, 0.05) == pytest.approx(-2.86, abs=1e-6)


def test_adf_printed_decisions():
    assert -7.127 < critical_value("constant", 99, 0.01)
    assert mackinnon_pvalue(-3.166, "constant") == pytest.approx(0.0220, abs=1e-4)
    assert mackinnon_pvalue(-1.697, "constant") == pytest.approx(0.4328, abs=5e-4)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from(["constant", "none"]))
def test_adf_decisions_nested(seed, det):
    x = np.cumsum(np.random.default_rng(seed).normal(size=120)) * 0.2 + np.random.default_rng(seed).normal(size=120)
    r = adf_test(x, det, 2)
    if r.reject(0.01):
        assert r.reject(0.05)
    if r.reject(0.05):
        assert r.reject(0.10)
    cv = r.critical_values
    assert cv[0.01] < cv[0.05] < cv[0.10]


def test_adf_errors():
    with pytest.raises(SeriesTooShortError):
        adf_test(np.arange(8.0), lags=4)
    with pytest.raises(ConstantSeriesError):
        adf_test(np.ones(50))


def test_adf_size_and_power_small():
    rng = np.random.default_rng(2024)
    rw = sum(adf_test(np.cumsum(rng.normal(size=200)), lags=4).reject(0.05) for _ in range(100))
    ar = 0
    for _ in range(100):
        e, x = rng.normal(size=200), np.zeros(200)
        for t in range(1, 200):
            x[t] = 0.5 * x[t - 1] + e[t]
        ar += adf_test(x, lags=4).reject(0.05)
    assert rw <= 15 and ar >= 80


# ---- ARDL

def test_holdout_sets_sample():
    fit = fit_ardl(ardl_data(0), ArdlSpec(3, (0, 4)), holdout=7)
    assert fit.n == 97


def test_noise_free_dgp_recovered():
    rng = np.random.default_rng(1)
    x = rng.normal(size=80)
    y = np.zeros(80)
    for t in range(1, 80):
        y[t] = 0.5 * y[t - 1] + 0.2 * x[t]
    fit = fit_ardl(TimeSeriesData("y", ("x",), {"y": y, "x": x}), ArdlSpec(1, (0,)))
    assert abs(fit.ols.coef("L1.y") - 0.5) < 1e-8
    assert abs(fit.ols.coef("L0.x") - 0.2) < 1e-8


def test_spec_validation():
    with pytest.raises(ValueError):
        ArdlSpec(0, (1,))
    with pytest.raises(ValueError):
        ArdlSpec(1, (-1,))
    assert str(ArdlSpec.parse("3,0,4")) == "ARDL(3,0,4)"
    assert ArdlSpec.parse("ARDL(2,1)") == ArdlSpec(2, (1,))


def test_ardl_against_statsmodels_ols():
    data = ardl_data(3)
    spec = ArdlSpec(2, (1, 0))
    fit = fit_ardl(data, spec, holdout=7)
    y, x1, x2 = data.y, data.x(0), data.x(1)
    t = np.arange(7, 104)
    X = np.column_stack([y[t - 1], y[t - 2], x1[t], x1[t - 1], x2[t], np.ones(97)])
    ref = sm.OLS(y[t], X).fit()
    np.testing.assert_allclose(fit.ols.params, ref.params, rtol=1e-10)
    assert fit.aic == pytest.approx(ref.aic, rel=1e-12)


def test_grid_counts():
    assert len(LagGrid.full(7, 7, 2)) == 448
    assert len(LagGrid.full(7, 7, 1)) == 56
    assert LagGrid.full(7, 7, 2).holdout == 7


def test_grid_common_sample_and_global_minimum():
    data = ardl_data(5)
    grid = LagGrid.full(4, 3, 2)
    result = grid_search(data, grid)
    assert result.n_candidates == len(result.ranking) == 64
    assert {f.n for f in result.fits.values()} == {104 - 4}
    # independent enumeration with statsmodels
    best = None
    for p, q1, q2 in itertools.product(range(1, 5), range(4), range(4)):
        t = np.arange(4, 104)
        cols = [data.y[t - i] for i in range(1, p + 1)]
        cols += [data.x(0)[t - i] for i in range(q1 + 1)] + [data.x(1)[t - i] for i in range(q2 + 1)]
        aic = sm.OLS(data.y[t], np.column_stack(cols + [np.ones(100)])).fit().aic
        if best is None or aic < best[0]:
            best = (aic, ArdlSpec(p, (q1, q2)))
    assert result.best_spec == best[1]
    assert result.best_fit.aic == pytest.approx(best[0], rel=1e-12)


def test_single_cell_grid():
    data = ardl_data(6)
    result = grid_search(data, LagGrid((2,), ((1,), (0,))))
    assert result.best_spec == ArdlSpec(2, (1, 0))


def test_ranking_independent_of_grid_order():
    data = ardl_data(8)
    forward = grid_search(data, LagGrid((1, 2, 3), ((0, 1, 2), (0, 1))))
    backward = grid_search(data, LagGrid((3, 2, 1), ((2, 1, 0), (1, 0))))
    assert forward.ranking == backward.ranking
    aics = [a for _, a in forward.ranking]
    assert aics == sorted(aics)


def test_collinear_cells_reported_not_fatal():
    data = ardl_data(8)
    cols = dict(data.columns)
    cols["x2"] = np.roll(cols["x1"], 1)  # x2_t = x1_{t-1}: collinear whenever q1 >= 1
    result = grid_search(TimeSeriesData("y", ("x1", "x2"), cols), LagGrid((1, 2), ((0, 1), (0, 1))))
    assert len(result.failures) == 4 and len(result.ranking) == 4
    assert all(s.q[0] == 0 for s, _ in result.ranking)
    assert "rank deficient" in result.failures[0][1]


# ---- EC form and bounds test

@pytest.mark.parametrize("seed", range(10))
def test_ec_identity(seed):
    rng = np.random.default_rng(seed)
    data = ardl_data(seed)
    spec = ArdlSpec(int(rng.integers(1, 5)), (int(rng.integers(0, 4)), int(rng.integers(0, 4))))
    fit = fit_ardl(data, spec, holdout=5)
    ec = ec_regression(data, fit)
    assert np.abs(ec.implied_levels() - fit.ols.fitted).max() < 1e-8
    assert abs(ec.fit.ssr - fit.ols.ssr) < 1e-8


def test_bounds_f_against_statsmodels():
    data = ardl_data(11)
    fit = fit_ardl(data, ArdlSpec(2, (2, 1)))
    res, _ = bounds_test(fit, data)
    df = pd.DataFrame({"x1": data.x(0), "x2": data.x(1)})
    ref = UECM(pd.Series(data.y), 2, df, {"x1": 2, "x2": 1}, trend="c").fit().bounds_test(case=3)
    assert res.f_statistic == pytest.approx(ref.stat, rel=1e-10)


def test_bounds_table_values_verbatim():
    table = BoundsTable.load()
    f10, t10 = table.get("III", 2, 0.10, "F"), table.get("III", 2, 0.10, "t")
    assert (f10.lower_text, f10.upper_text) == ("3.178", "4.182")
    assert (t10.lower_text, t10.upper_text) == ("-2.547", "-3.199")
    k1 = table.get("III", 1, 0.10, "F")
    assert (k1.lower_text, k1.upper_text) == ("4.062", "4.834")


def test_bounds_decision_examples():
    res = bounds_decision(2.288, -2.423, k=2)
    assert res.decision == "fail_to_reject"
    assert res.to_dict()["decision_text"] == "Do not reject H0 (No levels relationship)"
    assert bounds_decision(2.288, -2.423, k=1).decision == "fail_to_reject"
    assert bounds_decision(9.0, -5.0, k=2).decision == "reject"
    assert bounds_decision(4.5, -3.0, k=2).decision == "inconclusive"
    assert bounds_decision(2.0, -3.0, k=2).decision == "inconclusive"


def test_bounds_errors():
    with pytest.raises(UnsupportedBoundsError):
        bounds_decision(2.0, -2.0, k=3)
    data = ardl_data(2)
    fit = fit_ardl(data, ArdlSpec(1, (1, 1), constant=False))
    with pytest.raises(UnsupportedBoundsError):
        bounds_test(fit, data)


@pytest.mark.parametrize("scale", [1e-3, 0.5, 7.0, 1e4])
def test_bounds_scale_invariant(scale):
    data = ardl_data(4)
    fit = fit_ardl(data, ArdlSpec(2, (1, 2)))
    base, _ = bounds_test(fit, data)
    cols = dict(data.columns)
    cols["x1"] = cols["x1"] * scale
    scaled_data = TimeSeriesData("y", data.regressors, cols)
    scaled, _ = bounds_test(fit_ardl(scaled_data, ArdlSpec(2, (1, 2))), scaled_data)
    assert abs(scaled.f_statistic - base.f_statistic) < 1e-8
    assert abs(scaled.t_statistic - base.t_statistic) < 1e-8
    assert scaled.decision == base.decision


# ---- Breusch-Godfrey

@pytest.mark.parametrize("seed", range(5))
def test_bg_against_statsmodels(seed):
    data = ardl_data(seed, phi=0.3)
    fit = fit_ardl(data, ArdlSpec(2, (1, 1)))
    ours = breusch_godfrey(fit, 4)
    ref_model = sm.OLS(fit.response, fit.design).fit()
    for row in ours.rows:
        lm, p, _, _ = acorr_breusch_godfrey(ref_model, nlags=row.lag)
        assert row.statistic == pytest.approx(lm, rel=1e-9)
        assert row.pvalue == pytest.approx(p, rel=1e-8)
    assert ours.nobs == fit.n


def test_bg_preconditions():
    fit = fit_ardl(ardl_data(1), ArdlSpec(1, (0, 0)))
    with pytest.raises(ValueError):
        breusch_godfrey(fit, 0)
    with pytest.raises(ValueError):
        breusch_godfrey(fit, fit.n)


def test_bg_size_and_power():
    size = power = 0
    for seed in range(200):
        fit = fit_ardl(ardl_data(seed, k=1), ArdlSpec(1, (1,)))
        size += breusch_godfrey(fit, 1).rows[0].pvalue > 0.05
        fit = fit_ardl(ardl_data(seed, k=1, phi=0.8), ArdlSpec(1, (1,)))
        power += breusch_godfrey(fit, 1).rows[0].pvalue < 0.05
    assert size >= 180
    assert power >= 190
