from .distributions import (
    InvalidQueryError,
    TailQuery,
    betainc,
    chi2_sf,
    f_sf,
    gammainc_lower,
    gammainc_upper,
    normal_cdf,
    normal_sf,
    t_two_sided,
    tail_probability,
)
from .ols import (
    DegenerateFitError,
    DesignMatrix,
    NonFiniteInputError,
    OlsFit,
    RankDeficientError,
    gaussian_loglike,
    information_criterion,
    ols,
)

__all__ = [
    "InvalidQueryError",
    "TailQuery",
    "betainc",
    "chi2_sf",
    "f_sf",
    "gammainc_lower",
    "gammainc_upper",
    "normal_cdf",
    "normal_sf",
    "t_two_sided",
    "tail_probability",
    "DegenerateFitError",
    "DesignMatrix",
    "NonFiniteInputError",
    "OlsFit",
    "RankDeficientError",
    "gaussian_loglike",
    "information_criterion",
    "ols",
]
