from .model import (
    AgentFractions,
    DivergenceError,
    ExpectationScheme,
    HeuristicState,
    PeriodSolution,
    PersistenceWeights,
    ShockDraws,
    SimPath,
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
from .params import ConfigError, ModelParams

__all__ = [
    "AgentFractions",
    "ConfigError",
    "DivergenceError",
    "ExpectationScheme",
    "HeuristicState",
    "ModelParams",
    "PeriodSolution",
    "PersistenceWeights",
    "ShockDraws",
    "SimPath",
    "SingularSystemError",
    "WindowError",
    "animal_spirit_index",
    "degrauwe_expectation",
    "draw_shocks",
    "extrapolator_index",
    "heuristic_fractions",
    "proano_animal_spirit",
    "proano_weights",
    "simulate",
    "slice_window",
    "solve_period",
    "taylor_rate",
    "update_fitness",
]
