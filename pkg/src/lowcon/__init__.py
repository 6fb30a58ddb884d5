"""Subsampling toolkit for measurement-constrained linear regression.

Given a full matrix of predictors whose responses are expensive to reveal,
the samplers here choose which r rows to label. The flagship method matches
a low-correlation Latin hypercube design to the sample, keeping the
condition number of the subsample information matrix small, which bounds the
worst-case estimation error when the postulated linear model is wrong. Five
standard baselines (uniform, three leverage-score variants, and
extreme-point selection) share the same interface, and an experiment harness
reproduces the simulation grid, toy study, and real-data EMSE protocols at
desk scale.
"""

from .datagen import (
    MisspecTerm,
    beta_layout,
    calibrate_constant,
    covariance_matrix,
    gen_predictors,
    gen_response,
    make_misspec,
    misspec_value,
    misspec_values,
    toy_example,
)
from .designs import (
    Box,
    DesignMatrix,
    generate_lhd,
    generate_olhd,
    lhd_levels,
    max_abs_correlation,
    rescale_design,
)
from .estimators import (
    FitResult,
    HuberFit,
    MseReport,
    WorstCase,
    condition_perturbation_ratio,
    fit_huber_m,
    fit_sls,
    mse_decompose,
    design_mse_bound,
    trace_inv_bound,
    weyl_kappa_bound,
    worst_case_mse,
)
from .exceptions import (
    AssumptionViolated,
    ColumnMissing,
    ConfigError,
    ConstantColumn,
    DataError,
    DegenerateBox,
    DegenerateSample,
    DimensionTooSmall,
    EmptyAfterFiltering,
    Exhausted,
    InfeasibleDesign,
    LowconError,
    RankDeficient,
)
from .harness import (
    Dataset,
    DiagnoseEntry,
    ExperimentConfig,
    HiddenResponses,
    ResultRow,
    SimulationResult,
    derived_rng,
    diagnose,
    ingest_csv,
    load_config,
    run_emse,
    run_simulation,
    toy_config,
    write_result_csv,
)
from .linalg import condition_number, least_squares, leverage_scores, singular_values
from .neighbors import PointIndex, build_index, nearest
from .samplers import (
    ScalingSpec,
    SelectionDiagnostics,
    SubsampleSelection,
    blev,
    iboss,
    levunw,
    lowcon,
    scale_to_cube,
    slev,
    theta_box,
    unif,
)

__version__ = "0.1.0"

__all__ = [
    "AssumptionViolated",
    "Box",
    "ColumnMissing",
    "ConfigError",
    "ConstantColumn",
    "DataError",
    "Dataset",
    "DegenerateBox",
    "DegenerateSample",
    "DesignMatrix",
    "DiagnoseEntry",
    "DimensionTooSmall",
    "EmptyAfterFiltering",
    "ExperimentConfig",
    "Exhausted",
    "FitResult",
    "HiddenResponses",
    "HuberFit",
    "InfeasibleDesign",
    "LowconError",
    "MisspecTerm",
    "MseReport",
    "PointIndex",
    "RankDeficient",
    "ResultRow",
    "ScalingSpec",
    "SelectionDiagnostics",
    "SimulationResult",
    "SubsampleSelection",
    "WorstCase",
    "beta_layout",
    "blev",
    "build_index",
    "calibrate_constant",
    "condition_number",
    "condition_perturbation_ratio",
    "covariance_matrix",
    "derived_rng",
    "diagnose",
    "fit_huber_m",
    "fit_sls",
    "gen_predictors",
    "gen_response",
    "generate_lhd",
    "generate_olhd",
    "iboss",
    "ingest_csv",
    "least_squares",
    "leverage_scores",
    "levunw",
    "lhd_levels",
    "load_config",
    "lowcon",
    "make_misspec",
    "max_abs_correlation",
    "misspec_value",
    "misspec_values",
    "mse_decompose",
    "nearest",
    "rescale_design",
    "run_emse",
    "run_simulation",
    "scale_to_cube",
    "singular_values",
    "slev",
    "design_mse_bound",
    "theta_box",
    "toy_config",
    "toy_example",
    "trace_inv_bound",
    "unif",
    "weyl_kappa_bound",
    "worst_case_mse",
    "write_result_csv",
]
