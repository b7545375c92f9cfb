"""Hermite-spectral toolkit for the quantum harmonic oscillator.

Evaluation kernels for the normalized eigenbasis, singular-weight quadrature,
antiderivative expansions with closed-form norms, the spectral decomposition
and propagator, and a verification harness that scans every identity and
smoothing bound the library claims.
"""

from .antideriv import (
    merge_identity_check,
    merge_identity_exact,
    norm_sq_even_closed,
    norm_sq_even_quadrature,
    norm_sq_even_recursive,
    norm_sq_odd_closed,
    norm_sq_odd_expansion,
    norm_sq_odd_quadrature,
    norm_sq_odd_recursive,
    norm_table,
    partial_binomial_sum,
    partial_binomial_sum_exact,
    x_even,
    x_even_at_zero_normalized,
    x_even_at_zero_sq,
    x_odd,
)
from .errors import CapabilityError, ToleranceError
from .hermite import (
    HermiteBasis,
    LaguerreParams,
    binom_general,
    binom_general_exact,
    binom_reflection_residual,
    eval_h,
    eval_h_all,
    eval_h_scaled_all,
    eval_hermite_poly,
    eval_laguerre,
    gamma_duplication_residual,
    half_line_integral_even,
    half_line_integral_odd,
    laguerre_exp_integral,
    verify_laguerre_hermite_relation,
)
from .quadrature import (
    QuadratureRule,
    circle_directions,
    gauss_hermite,
    gauss_legendre,
    gauss_legendre_panels,
    integrate_cyl_2d,
    integrate_radial_3d,
    radial_rule_absorbing,
    radial_rule_panels,
    sphere_directions,
    truncation_radius,
)
from .spectral import (
    EigenLevel,
    KernelQuery,
    SpectralState,
    bessel_sobolev_norm,
    coefficients_from_function,
    collapse_trace_norm,
    eigen_level,
    enumerate_multiindices,
    evaluate_phi,
    evaluate_state,
    evaluate_state_grid,
    fourier_transform_state,
    hermite_sobolev_norm,
    kernel_diagonal,
    kernel_diagonal_ratio,
    level_gram,
    make_state,
    oscillator_energy_sq,
    parity_decompose,
    project,
    projection_kernel,
    propagate,
    random_state,
    state_from_json,
    state_norm_sq,
    state_to_json,
    time_avg_weighted,
)
from .verify import (
    DEFAULT_BOUNDS,
    DEFAULT_TOLERANCES,
    ESTIMATE_IDS,
    EstimateReport,
    RunManifest,
    ScanConfig,
    check_antideriv_norms,
    check_appendix_identities,
    check_even_3d,
    check_hermite_sobolev,
    check_kato,
    check_kernel_bound,
    check_morawetz_2d,
    check_odd_identity,
    check_operator_norms,
    check_collapse_9d,
    check_radial_3d_identity,
    clear_caches,
    emit_table,
    manifest_from_json_bytes,
    manifest_to_json_bytes,
    negative_control_divergence,
    operator_norm_singular_kernel,
)

__version__ = "0.1.0"

__all__ = [
    "CapabilityError",
    "DEFAULT_BOUNDS",
    "DEFAULT_TOLERANCES",
    "ESTIMATE_IDS",
    "EigenLevel",
    "EstimateReport",
    "HermiteBasis",
    "KernelQuery",
    "LaguerreParams",
    "QuadratureRule",
    "RunManifest",
    "ScanConfig",
    "SpectralState",
    "ToleranceError",
    "bessel_sobolev_norm",
    "binom_general",
    "binom_general_exact",
    "binom_reflection_residual",
    "check_antideriv_norms",
    "check_appendix_identities",
    "check_collapse_9d",
    "check_even_3d",
    "check_hermite_sobolev",
    "check_kato",
    "check_kernel_bound",
    "check_morawetz_2d",
    "check_odd_identity",
    "check_operator_norms",
    "check_radial_3d_identity",
    "circle_directions",
    "clear_caches",
    "coefficients_from_function",
    "collapse_trace_norm",
    "eigen_level",
    "emit_table",
    "enumerate_multiindices",
    "eval_h",
    "eval_h_all",
    "eval_h_scaled_all",
    "eval_hermite_poly",
    "eval_laguerre",
    "evaluate_phi",
    "evaluate_state",
    "evaluate_state_grid",
    "fourier_transform_state",
    "gamma_duplication_residual",
    "gauss_hermite",
    "gauss_legendre",
    "gauss_legendre_panels",
    "half_line_integral_even",
    "half_line_integral_odd",
    "hermite_sobolev_norm",
    "integrate_cyl_2d",
    "integrate_radial_3d",
    "kernel_diagonal",
    "kernel_diagonal_ratio",
    "laguerre_exp_integral",
    "level_gram",
    "make_state",
    "manifest_from_json_bytes",
    "manifest_to_json_bytes",
    "merge_identity_check",
    "merge_identity_exact",
    "negative_control_divergence",
    "norm_sq_even_closed",
    "norm_sq_even_quadrature",
    "norm_sq_even_recursive",
    "norm_sq_odd_closed",
    "norm_sq_odd_expansion",
    "norm_sq_odd_quadrature",
    "norm_sq_odd_recursive",
    "norm_table",
    "operator_norm_singular_kernel",
    "oscillator_energy_sq",
    "parity_decompose",
    "partial_binomial_sum",
    "partial_binomial_sum_exact",
    "project",
    "projection_kernel",
    "propagate",
    "radial_rule_absorbing",
    "radial_rule_panels",
    "random_state",
    "sphere_directions",
    "state_from_json",
    "state_norm_sq",
    "state_to_json",
    "time_avg_weighted",
    "truncation_radius",
    "verify_laguerre_hermite_relation",
    "x_even",
    "x_even_at_zero_normalized",
    "x_even_at_zero_sq",
    "x_odd",
]
