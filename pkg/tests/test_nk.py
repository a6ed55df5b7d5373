import math
from types import SimpleNamespace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from animal_spirits.nk import (
    AgentFractions,
    ConfigError,
    ExpectationScheme,
    ModelParams,
    ShockDraws,
    SingularSystemError,
    WindowError,
    animal_spirit_index,
    degrauwe_expectation,
    draw_shocks,
    extrapolator_index,
    heuristic_fractions,
    proano_animal_spirit,
    proano_weights,
    simulate,
    slice_window,
    solve_period,
    taylor_rate,
    update_fitness,
)

DEFAULTS = ModelParams()
SCHEMES = list(ExpectationScheme)
finite = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False)


# ---- parameters

def test_default_parameter_values():
    p = DEFAULTS
    assert (p.a1, p.a2, p.b1, p.b2) == (0.5, 0.2, 0.5, 0.05)
    assert (p.c1, p.c2, p.c3) == (1.5, 0.5, 0.5)
    assert (p.gamma, p.rho, p.mu, p.iota, p.pi_star) == (2.0, 0.5, 10.0, 0.01, 0.0)
    assert p.sigma_demand == p.sigma_supply == p.sigma_policy == 0.5


@pytest.mark.parametrize("field,value", [("rho", 1.5), ("gamma", -1), ("sigma_demand", -0.1), ("T", 0)])
def test_invalid_parameters_name_the_field(field, value):
    with pytest.raises(ConfigError) as err:
        DEFAULTS.with_overrides(**{field: value})
    assert err.value.field == field


def test_unknown_key_rejected():
    with pytest.raises(ConfigError):
        ModelParams.from_mapping({"a1": 0.5, "alpha": 1})


def test_params_file_round_trip(tmp_path):
    f = tmp_path / "p.yaml"
    f.write_text("model:\n  c3: 0.25\n  sigma_policy: 0.01\n")
    p = ModelParams.from_file(f)
    assert p.c3 == 0.25 and p.sigma_policy == 0.01 and p.a1 == 0.5
    assert p.digest() != DEFAULTS.digest()
    assert ModelParams.from_mapping(p.to_dict()) == p


def test_missing_params_file_names_path(tmp_path):
    with pytest.raises(ConfigError, match="nope.yaml"):
        ModelParams.from_file(tmp_path / "nope.yaml")


# ---- shocks

def test_zero_scale_shocks_are_zero():
    s = draw_shocks(DEFAULTS.with_overrides(sigma_demand=0, sigma_supply=0, sigma_policy=0, T=10))
    for x in (s.demand, s.supply, s.policy):
        assert x.shape == (10,) and not x.any()


def test_shocks_deterministic():
    a, b = draw_shocks(DEFAULTS), draw_shocks(DEFAULTS)
    for x, y in zip((a.demand, a.supply, a.policy), (b.demand, b.supply, b.policy)):
        assert np.array_equal(x, y)


def test_shock_scale_large_sample():
    s = draw_shocks(DEFAULTS.with_overrides(T=100_000))
    for x in (s.demand, s.supply, s.policy):
        assert abs(x.std() / 0.5 - 1) < 0.01


# ---- heuristics

def test_update_fitness_examples():
    assert update_fitness(0.0, 0.04, 0.5) == pytest.approx(-0.02, abs=1e-15)
    assert update_fitness(-0.02, 0.01, 0.5) == pytest.approx(-0.015, abs=1e-15)
    assert update_fitness(-0.02, 0.01, 0.5) == pytest.approx(-0.5 * (0.01 + 0.5 * 0.04), abs=1e-15)
    assert update_fitness(-0.37, 0.0, 0.5) == 0.5 * -0.37


def test_fitness_recursion_matches_direct_sum():
    rng = np.random.default_rng(7)
    rho = 0.5
    for _ in range(50):
        e2 = rng.random(300) ** 2
        u = 0.0
        for v in e2:
            u = update_fitness(u, v, rho)
        direct = -sum((1 - rho) * rho**k * e2[-1 - k] for k in range(200))
        assert abs(u - direct) < 1e-10


def test_heuristic_fraction_examples():
    assert heuristic_fractions(-0.3, -0.3, 2.0) == (0.5, 0.5)
    f = heuristic_fractions(-0.1, -0.2, 2.0)
    assert f.frac_fund == pytest.approx(1 / (1 + math.exp(-0.2)), abs=1e-15)
    assert f.frac_fund == pytest.approx(0.549834, abs=1e-6)
    assert heuristic_fractions(-5.0, 0.0, 0.0) == (0.5, 0.5)


@given(finite, finite, st.floats(min_value=0, max_value=1e3))
def test_fractions_sum_to_one_exactly(uf, ue, gamma):
    f = heuristic_fractions(uf, ue, gamma)
    assert f.frac_fund + f.frac_extr == 1.0
    assert 0.0 <= f.frac_fund <= 1.0


def test_expectation_examples():
    assert degrauwe_expectation(0.3, 0.0, AgentFractions(0.0, 1.0)) == 0.3
    assert degrauwe_expectation(0.3, 0.0, AgentFractions(1.0, 0.0)) == 0.0
    assert degrauwe_expectation(0.4, 0.0, AgentFractions(0.75, 0.25)) == pytest.approx(0.1, abs=1e-15)


def test_sign_indices():
    assert animal_spirit_index(0.75, 0.1) == 0.5
    assert animal_spirit_index(0.75, -0.1) == -0.5
    assert animal_spirit_index(0.5, 0.1) == animal_spirit_index(0.5, -0.1) == 0.0
    assert extrapolator_index(0.6, 0.02) == 0.6
    assert extrapolator_index(0.6, -0.02) == -0.6
    assert extrapolator_index(0.6, 0.0) == 0.0


def test_proano_weights_examples():
    assert proano_weights(0.03, 0.03, 10.0) == (0.5, 0.5)
    w = proano_weights(0.1, 0.0, 10.0)
    assert w.w_persist == pytest.approx(math.e / (1 + math.e), abs=1e-15)
    assert w.w_persist == pytest.approx(0.731059, abs=1e-6)
    assert proano_weights(-0.1, 0.0, 10.0).w_persist == pytest.approx(0.268941, abs=1e-6)
    assert proano_animal_spirit(0.5) == 0.0
    assert proano_animal_spirit(math.e / (1 + math.e)) == pytest.approx(0.462117, abs=1e-6)
    assert proano_animal_spirit(0.25) == -0.5


@given(st.floats(min_value=-5, max_value=5), st.floats(min_value=0, max_value=100))
def test_proano_symmetry(gap, mu):
    a, b = proano_weights(gap, 0.0, mu), proano_weights(-gap, 0.0, mu)
    assert a.w_persist == b.w_steady and a.w_steady == b.w_persist


def test_zero_intensity_erases_selection():
    assert proano_weights(3.0, -2.0, 0.0) == (0.5, 0.5)


def test_taylor_examples():
    assert taylor_rate(DEFAULTS, 0.0, 0.0, 0.0, 0.0) == (0.0, False)
    rate, bound = taylor_rate(DEFAULTS, 0.02, 0.01, 0.005, 0.0)
    assert rate == pytest.approx(0.0375, abs=1e-15) and not bound
    assert taylor_rate(DEFAULTS, 0.0, 0.0, 0.0, -1.0) == (-0.01, True)


# ---- period solve

def test_solve_steady_state():
    assert solve_period(DEFAULTS, 0, 0, 0, 0, 0, 0, 0, 0) == (0.0, 0.0, 0.0, False, 0.0)


def test_solve_demand_shock_hand_elimination():
    s = solve_period(DEFAULTS, 0, 0, 0, 0, 0, 0.01, 0, 0)
    slope = DEFAULTS.c1 * DEFAULTS.b2 + DEFAULTS.c2
    y = 0.01 / (1 + DEFAULTS.a2 * slope)
    assert s.y == pytest.approx(y, abs=1e-15)
    assert s.pi == pytest.approx(DEFAULTS.b2 * y, abs=1e-15)
    assert s.i == pytest.approx(slope * y, abs=1e-15)
    assert (round(s.y, 7), round(s.pi, 8), round(s.i, 7)) == (0.0089686, 0.00044843, 0.0051570)
    assert not s.zlb


def test_solve_zlb_branch():
    p = DEFAULTS
    s = solve_period(p, 0, 0, 0, 0, 0, 0, 0, -1.0)
    assert s.zlb and s.i == -p.iota
    assert s.y == pytest.approx(p.a2 * p.iota, abs=1e-15)  # AD with i = -iota
    assert s.pi == pytest.approx(p.b2 * s.y, abs=1e-15)
    assert s.i_taylor < -p.iota


def _residuals(p, args, s):
    y1, pi1, i1, ey, epi, ed, es, u = args
    ad = s.y - (p.a1 * ey + (1 - p.a1) * y1 - p.a2 * (s.i - epi) + ed)
    as_ = s.pi - (p.b1 * epi + (1 - p.b1) * pi1 + p.b2 * s.y + es)
    tr = s.i - (p.c1 * (s.pi - p.pi_star) + p.c2 * s.y + p.c3 * i1 + u)
    return ad, as_, tr


def test_solve_back_substitution_random():
    rng = np.random.default_rng(11)
    seen = {True: 0, False: 0}
    for _ in range(2000):
        p = DEFAULTS.with_overrides(a1=rng.uniform(0, 1), a2=rng.uniform(0, 1), b1=rng.uniform(0, 1),
                                  b2=rng.uniform(0, 0.5), c1=rng.uniform(1, 3), c2=rng.uniform(0, 1),
                                  c3=rng.uniform(0, 1))
        args = tuple(rng.normal(0, 0.02, 8))
        s = solve_period(p, *args)
        ad, as_, tr = _residuals(p, args, s)
        assert abs(ad) < 1e-12 and abs(as_) < 1e-12
        if s.zlb:
            assert s.i == -p.iota and s.i_taylor < -p.iota
        else:
            assert abs(tr) < 1e-12 and s.i >= -p.iota
        seen[s.zlb] += 1
    assert seen[True] and seen[False]


def test_singular_system():
    # validation forbids a2 < 0, so bypass it with a bare attribute bag
    p = SimpleNamespace(**{**DEFAULTS.to_dict(), "a2": -1.0, "c2": 1.0, "b2": 0.0})
    with pytest.raises(SingularSystemError):
        solve_period(p, 0, 0, 0, 0, 0, 0, 0, 0)


# ---- simulation

@pytest.mark.parametrize("scheme", SCHEMES)
def test_zero_shock_steady_state(scheme):
    p = DEFAULTS.with_overrides(sigma_demand=0, sigma_supply=0, sigma_policy=0)
    path = simulate(p, scheme)
    for x in (path.output_gap, path.inflation, path.interest_rate, path.animal_spirit, path.extrapolator_index):
        assert not x.any()
    for x in (path.frac_fund_output, path.frac_extr_output, path.frac_fund_inflation, path.frac_extr_inflation):
        assert (x == 0.5).all()


@pytest.mark.parametrize("scheme", SCHEMES)
@pytest.mark.parametrize("params", [DEFAULTS, DEFAULTS.with_overrides(sigma_demand=0.005, sigma_supply=0.005,
                                                                  sigma_policy=0.005)])
def test_simulation_invariants(scheme, params):
    path = simulate(params, scheme)
    assert len(path) == 2000
    assert (path.interest_rate >= -params.iota).all()
    assert (np.abs(path.animal_spirit) <= 1).all() and (np.abs(path.extrapolator_index) <= 1).all()
    assert (path.frac_fund_output + path.frac_extr_output == 1.0).all()
    assert (path.frac_fund_inflation + path.frac_extr_inflation == 1.0).all()
    # zlb flag iff the unconstrained rate fell below the floor
    assert np.array_equal(path.zlb_binding, path.taylor_rate < -params.iota)


@pytest.mark.parametrize("scheme", SCHEMES)
def test_simulation_deterministic(scheme):
    a, b = simulate(DEFAULTS, scheme), simulate(DEFAULTS, scheme)
    assert a.to_csv() == b.to_csv()


def test_proano_index_matches_realised_weights():
    p = DEFAULTS.with_overrides(sigma_demand=0.005, sigma_supply=0.005, sigma_policy=0.005)
    path = simulate(p, "proano")
    assert np.array_equal(path.animal_spirit, 2 * path.w_persist - 1)
    gap_w = [proano_weights(i, it, p.mu).w_persist for i, it in zip(path.interest_rate, path.taylor_rate)]
    assert np.array_equal(path.w_persist, gap_w)


def test_external_shocks_used():
    p = DEFAULTS.with_overrides(T=5)
    z = np.zeros(5)
    shocks = ShockDraws(np.array([0.01, 0, 0, 0, 0]), z, z)
    path = simulate(p, "degrauwe", shocks)
    assert path.output_gap[0] == pytest.approx(0.0089686, abs=1e-7)
    with pytest.raises(ValueError):
        simulate(p.with_overrides(T=6), "degrauwe", shocks)


def test_unknown_scheme():
    with pytest.raises(ValueError):
        ExpectationScheme.parse("rational")


def test_slice_window():
    path = simulate(DEFAULTS.with_overrides(sigma_demand=0.005, sigma_supply=0.005, sigma_policy=0.005), "degrauwe")
    w = slice_window(path, 1000, 104)
    assert len(w) == 104 and w.start == 1000
    assert np.array_equal(w.animal_spirit, path.animal_spirit[1000:1104])
    assert slice_window(path, 0, 2000).to_csv() == path.to_csv()
    small = simulate(DEFAULTS.with_overrides(T=100), "degrauwe")
    with pytest.raises(WindowError):
        slice_window(small, 99, 5)


def test_csv_columns():
    text = simulate(DEFAULTS.with_overrides(T=3), "degrauwe").to_csv()
    header = text.splitlines()[0].split(",")
    for col in ("period", "output_gap", "inflation", "interest_rate", "animal_spirit", "extrapolator_index",
                "frac_fund_output", "frac_extr_output", "frac_fund_inflation", "frac_extr_inflation"):
        assert col in header
    assert len(text.splitlines()) == 4


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=2**31), st.sampled_from(SCHEMES))
def test_indices_bounded_any_seed(seed, scheme):
    path = simulate(DEFAULTS.with_overrides(T=300, seed=seed, sigma_demand=0.005, sigma_supply=0.005,
                                          sigma_policy=0.005), scheme)
    assert (np.abs(path.animal_spirit) <= 1).all() and (np.abs(path.extrapolator_index) <= 1).all()
