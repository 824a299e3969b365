"""Generalized odd median-based unit Rayleigh distributions and friends.

A numpy/scipy toolkit for distributions on the open unit interval: density,
distribution, survival, hazard, quantile and moment evaluation for both
GO-MBUR versions plus beta, Kumaraswamy, Topp-Leone, unit-Lindley and the
original MBUR; maximum-likelihood fitting with information criteria and
standard errors; goodness-of-fit statistics; Monte Carlo and quadrature
verification oracles; and a CLI for the same workflows.
"""

__version__ = "1.0.0"

from .analysis import ComparisonRow, ComparisonTable, compare, emit_plot_data
from .data import (
    BUILTIN_DATASETS,
    DataError,
    Dataset,
    DescriptiveStats,
    FLOOD_DATA,
    describe,
    load_dataset,
)
from .distributions import (
    FAMILIES,
    BetaParams,
    DistributionModel,
    GomburV1Params,
    GomburV2Params,
    HazardScanResult,
    KumaraswamyParams,
    MburParams,
    ParameterError,
    ToppLeoneParams,
    UnitLindleyParams,
    beta,
    cdf,
    family_param_names,
    gombur_v1,
    gombur_v2,
    hazard,
    hazard_scan,
    kumaraswamy,
    log_pdf,
    make_model,
    mbur,
    param_names,
    param_values,
    pdf,
    quantile,
    raw_moment,
    reversed_hazard,
    sample,
    survival,
    topp_leone,
    unit_lindley,
)
from .estimation import (
    FitResult,
    OptimizerConfig,
    SingularHessianError,
    closed_form_unit_lindley_mle,
    fit_mle,
    information_criteria,
    negative_log_likelihood,
    observed_information,
    score_outer_product,
)
from .gof import (
    GofReport,
    anderson_darling,
    cramer_von_mises,
    ecdf,
    gof_report,
    ks_pvalue,
    ks_statistic,
)
from .oracle import (
    MedianSimConfig,
    ToleranceNotMetError,
    finite_diff,
    quadrature_unit,
    rayleigh_median_sample,
)
from .specfun import (
    Accuracy,
    DomainError,
    IterationLimitError,
    betareg,
    betareg_complement,
    betareg_inv,
    kolmogorov_sf,
    log_beta,
    log_gamma,
)

__all__ = [
    "__version__",
    # specfun
    "Accuracy", "DomainError", "IterationLimitError", "log_gamma",
    "log_beta", "betareg", "betareg_complement", "betareg_inv",
    "kolmogorov_sf",
    # distributions
    "FAMILIES", "ParameterError", "DistributionModel", "GomburV1Params",
    "GomburV2Params", "MburParams", "BetaParams", "KumaraswamyParams",
    "ToppLeoneParams", "UnitLindleyParams", "HazardScanResult",
    "gombur_v1", "gombur_v2", "mbur", "beta", "kumaraswamy", "topp_leone",
    "unit_lindley", "make_model", "family_param_names", "param_names",
    "param_values", "pdf", "log_pdf", "cdf", "survival", "hazard",
    "reversed_hazard", "quantile", "raw_moment", "sample", "hazard_scan",
    # data
    "DataError", "Dataset", "DescriptiveStats", "FLOOD_DATA",
    "BUILTIN_DATASETS", "load_dataset", "describe",
    # estimation
    "SingularHessianError", "OptimizerConfig", "FitResult",
    "negative_log_likelihood", "fit_mle", "observed_information",
    "score_outer_product", "information_criteria",
    "closed_form_unit_lindley_mle",
    # gof
    "GofReport", "ecdf", "ks_statistic", "ks_pvalue", "anderson_darling",
    "cramer_von_mises", "gof_report",
    # oracle
    "MedianSimConfig", "ToleranceNotMetError", "rayleigh_median_sample",
    "quadrature_unit", "finite_diff",
    # analysis
    "ComparisonRow", "ComparisonTable", "compare", "emit_plot_data",
]
