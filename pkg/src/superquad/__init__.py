"""Eigenvalue bounds and sharp constants for superquadratic matrix functions."""

from .bounds import (
    BoundReport,
    PositiveMapCD,
    SandwichReport,
    combine_pair_bound,
    concave_bound_S,
    convex_bound_T,
    cor_midpoint_convex,
    cor_power_convex,
    cor_power_mean_reverse,
    cor_sum_lower,
    dilation_block_bound,
    dilation_pair,
    phi_bound,
    subadditivity_sandwich,
)
from .constants import (
    GammaResult,
    gamma_constant,
    kantorovich_abs_power,
    kantorovich_power,
    secant_coeffs,
    solve_t0,
)
from .functions import (
    ScalarFunctionModel,
    jensen_gap_scalar,
    make_function,
    parse_function,
    superquadratic_gap,
)
from .harness import (
    ComparisonRecord,
    SuiteConfig,
    SuiteReport,
    check_power_mean,
    check_vector_jensen,
    compare_estimates,
    random_pd_pair_invertible_diff,
    random_psd,
    random_unital_map,
    replay_counterexample,
    run_suite,
)
from .linalg import (
    OrderVerdict,
    SpectralDecomposition,
    SpectralRange,
    Tolerance,
    apply_scalar_function,
    congruence_orthogonal,
    conjugating_orthogonal,
    eig_order_leq,
    eigh_desc,
    loewner_leq,
    matrix_abs,
    spectral_range,
    sqrt_psd,
    symmetrize,
)
from .reproduce import reproduce_report

__version__ = "0.1.0"

__all__ = [
    "BoundReport", "PositiveMapCD", "SandwichReport", "GammaResult",
    "ScalarFunctionModel", "SuiteConfig", "SuiteReport", "ComparisonRecord",
    "OrderVerdict", "SpectralDecomposition", "SpectralRange", "Tolerance",
    "combine_pair_bound", "concave_bound_S", "convex_bound_T",
    "cor_midpoint_convex", "cor_power_convex", "cor_power_mean_reverse",
    "cor_sum_lower", "dilation_block_bound", "dilation_pair", "phi_bound",
    "subadditivity_sandwich", "gamma_constant", "kantorovich_abs_power",
    "kantorovich_power", "secant_coeffs", "solve_t0", "jensen_gap_scalar",
    "make_function", "parse_function", "superquadratic_gap",
    "check_power_mean", "check_vector_jensen", "compare_estimates",
    "random_pd_pair_invertible_diff", "random_psd", "random_unital_map",
    "replay_counterexample", "run_suite", "apply_scalar_function",
    "congruence_orthogonal", "conjugating_orthogonal", "eig_order_leq",
    "eigh_desc", "loewner_leq", "matrix_abs", "spectral_range", "sqrt_psd",
    "symmetrize", "reproduce_report",
]
