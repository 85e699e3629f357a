"""Fitting heavy-tailed count models to claim-frequency data.

The package fits the discrete generalised Pareto and negative binomial
distributions to samples of nonnegative counts by maximum likelihood, with
frequency-based initial values, simulated-annealing optimization, bootstrap
standard errors, and AIC/BIC model comparison.  The ``claimcounts`` command
line exposes the same pipeline on CSV inputs.
"""

from .bootstrap import BootstrapConfig, BootstrapResult, bootstrap_se
from .data import (
    DescriptiveStats,
    FrequencyTable,
    aggregate,
    describe,
    expand,
    parse_any_csv,
    parse_counts_csv,
    parse_frequency_csv,
    table_to_csv,
    tabulate,
)
from .distributions import (
    CountSample,
    DgpParams,
    NbParams,
    dgp_cdf,
    dgp_loglik,
    dgp_pmf,
    dgp_quantile,
    dgp_sample,
    dgp_score,
    dgp_survival,
    nb_loglik,
    nb_pmf,
    nb_sample,
)
from .errors import (
    ClaimCountsError,
    DegenerateSampleError,
    IncomparableModelsError,
    InfeasibleError,
    InsufficientDataError,
    InsufficientReplicatesError,
    NoRootError,
    NumericError,
    ParameterError,
    ParseError,
    SupportError,
    UnderdispersionError,
    UnknownGroupError,
)
from .fitting import FitConfig, FitResult, fit_dgp, fit_nb, profile_loglik_r
from .initial import LeadingFrequencies, leading_frequencies, solve_init
from .selection import ComparisonReport, ModelScore, compare, score_model
from .special import digamma

__version__ = "0.1.0"

__all__ = [
    "BootstrapConfig",
    "BootstrapResult",
    "ClaimCountsError",
    "ComparisonReport",
    "CountSample",
    "DegenerateSampleError",
    "DescriptiveStats",
    "DgpParams",
    "FitConfig",
    "FitResult",
    "FrequencyTable",
    "IncomparableModelsError",
    "InfeasibleError",
    "InsufficientDataError",
    "InsufficientReplicatesError",
    "LeadingFrequencies",
    "ModelScore",
    "NbParams",
    "NoRootError",
    "NumericError",
    "ParameterError",
    "ParseError",
    "SupportError",
    "UnderdispersionError",
    "UnknownGroupError",
    "aggregate",
    "bootstrap_se",
    "compare",
    "describe",
    "dgp_cdf",
    "dgp_loglik",
    "dgp_pmf",
    "dgp_quantile",
    "dgp_sample",
    "dgp_score",
    "dgp_survival",
    "digamma",
    "expand",
    "fit_dgp",
    "fit_nb",
    "leading_frequencies",
    "nb_loglik",
    "nb_pmf",
    "nb_sample",
    "parse_any_csv",
    "parse_counts_csv",
    "parse_frequency_csv",
    "profile_loglik_r",
    "score_model",
    "solve_init",
    "table_to_csv",
    "tabulate",
]
