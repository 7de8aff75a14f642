"""Fractional calculus of nth-level derivatives.

The package splits into an exact layer and a numeric layer.  The exact
layer (specparams, powerlaw) does parameter bookkeeping, operator
classification, and symbolic application of integrals and derivatives
on finite power sums, where the fundamental theorems can be checked to
coefficient precision.  The numeric layer (mlf, gridops, relax,
volterra, fitting) evaluates Mittag-Leffler functions, discretizes the
weakly singular integrals on graded grids, solves the relaxation
equation in closed form and by iteration, tests complete monotonicity,
and fits decay data.  The cli module fronts all of it.
"""

from .errors import (
    DerivativeLeavesAlgebraError,
    EvaluationAtZeroUndefinedError,
    InvalidSpecError,
    NlfracError,
    NonConvergenceError,
    ParameterOutOfRangeError,
)
from .fitting import (
    FitProblem,
    FitResult,
    fit_relaxation,
    fit_report_tail,
    model_values,
    parameter_names,
)
from .gridops import (
    GradedGrid,
    SampledFunction,
    default_grading_exponent,
    derivative_grid,
    laplace_numeric,
    nth_level_derivative_grid,
    quadrature_matrix,
    read_xy,
    rl_integral_grid,
    write_csv,
)
from .mlf import (
    CMWeightedParams,
    MLQuery,
    eval_ml,
    eval_ml_asymptotic_leading,
    eval_ml_info,
    eval_ml_many,
    eval_weighted,
    eval_weighted_many,
    is_cm_params,
    reciprocal_gamma,
)
from .powerlaw import (
    PowerSum,
    nth_level_derivative,
    projector_apply,
    rl_integral,
    weak_derivative,
)
from .relax import (
    AsymptoticForm,
    CMReport,
    LaplaceCheck,
    RelaxationProblem,
    RelaxationSolution,
    asymptotic_form,
    closed_form_laplace,
    cm_numeric_check,
    cm_verdict,
    evaluate_solution,
    evaluate_solution_many,
    laplace_verify,
    solve_homogeneous,
    solve_relaxation,
)
from .specparams import (
    DerivativeSpec,
    LaplaceForm,
    ProjectorCoeffs,
    RegionLabel,
    SpecClass,
    SpecKind,
    ValidationReport,
    classify,
    kernel_basis,
    laplace_form,
    reduce_spec,
    require_valid,
    surviving_directions,
    triangle_region,
    validate,
)
from .volterra import (
    PicardResult,
    VolterraProblem,
    make_rhs,
    picard_solve,
    residual,
)

__version__ = "0.1.0"

__all__ = [
    "AsymptoticForm",
    "CMReport",
    "CMWeightedParams",
    "DerivativeLeavesAlgebraError",
    "DerivativeSpec",
    "EvaluationAtZeroUndefinedError",
    "FitProblem",
    "FitResult",
    "GradedGrid",
    "InvalidSpecError",
    "LaplaceCheck",
    "LaplaceForm",
    "MLQuery",
    "NlfracError",
    "NonConvergenceError",
    "ParameterOutOfRangeError",
    "PicardResult",
    "PowerSum",
    "ProjectorCoeffs",
    "RegionLabel",
    "RelaxationProblem",
    "RelaxationSolution",
    "SampledFunction",
    "SpecClass",
    "SpecKind",
    "ValidationReport",
    "VolterraProblem",
    "asymptotic_form",
    "classify",
    "closed_form_laplace",
    "cm_numeric_check",
    "cm_verdict",
    "default_grading_exponent",
    "derivative_grid",
    "eval_ml",
    "eval_ml_asymptotic_leading",
    "eval_ml_info",
    "eval_ml_many",
    "eval_weighted",
    "eval_weighted_many",
    "evaluate_solution",
    "evaluate_solution_many",
    "fit_relaxation",
    "fit_report_tail",
    "is_cm_params",
    "kernel_basis",
    "laplace_form",
    "laplace_numeric",
    "laplace_verify",
    "make_rhs",
    "model_values",
    "nth_level_derivative",
    "nth_level_derivative_grid",
    "parameter_names",
    "picard_solve",
    "projector_apply",
    "quadrature_matrix",
    "read_xy",
    "reciprocal_gamma",
    "reduce_spec",
    "require_valid",
    "residual",
    "rl_integral",
    "rl_integral_grid",
    "solve_homogeneous",
    "solve_relaxation",
    "surviving_directions",
    "triangle_region",
    "validate",
    "weak_derivative",
    "write_csv",
    "__version__",
]
