from .adf import (
    AdfResult,
    ConstantSeriesError,
    SeriesTooShortError,
    adf_test,
    critical_value,
    mackinnon_pvalue,
)
from .ardl import (
    ArdlFit,
    ArdlSpec,
    GridResult,
    InsufficientDataError,
    LagGrid,
    TimeSeriesData,
    fit_ardl,
    grid_search,
    level_design,
)
from .bg import BgResult, BgRow, breusch_godfrey
from .bounds import (
    BoundPair,
    BoundsResult,
    BoundsTable,
    EcForm,
    UnsupportedBoundsError,
    bounds_decision,
    bounds_test,
    ec_regression,
)

__all__ = [
    "AdfResult",
    "ConstantSeriesError",
    "SeriesTooShortError",
    "adf_test",
    "critical_value",
    "mackinnon_pvalue",
    "ArdlFit",
    "ArdlSpec",
    "GridResult",
    "InsufficientDataError",
    "LagGrid",
    "TimeSeriesData",
    "fit_ardl",
    "grid_search",
    "level_design",
    "BgResult",
    "BgRow",
    "breusch_godfrey",
    "BoundPair",
    "BoundsResult",
    "BoundsTable",
    "EcForm",
    "UnsupportedBoundsError",
    "bounds_decision",
    "bounds_test",
    "ec_regression",
]
