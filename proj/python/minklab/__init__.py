"""Curvature laboratory for space-like graphs over star-shaped domains.

The heavy lifting lives in the compiled ``_core`` extension; this package
re-exports its public names.
"""

from ._core import (
    BoundaryGeometry,
    CurvatureField,
    EllipticityReport,
    GammaReport,
    GardingFlags,
    GradFlag,
    GraphSurface,
    IdentityReport,
    LoadedSurface,
    MQValues,
    PFieldConvex,
    PFieldGraph,
    PinchingMargins,
    PolarGrid,
    ReferenceConstants,
    SolveReport,
    SolverConfig,
    StabilityReport,
    StarDomain,
    SweepMember,
    SweepRow,
    binomial,
    boundary_geometry,
    cap_balance_pointwise,
    cmc_residual,
    curvature_field,
    domain_sweep,
    dump_surface,
    elem_sym_matrix,
    elem_sym_matrix_values,
    elem_sym_values,
    eval_cap_balance,
    eval_fundamental,
    eval_heintze_karcher,
    eval_hk_deficit,
    eval_soap_bubble,
    flat_surface,
    gamma_k_report,
    garding_membership,
    gauss_map_identity,
    hyperboloid_cap,
    load_surface,
    minkowski_inner,
    newton_maclaurin_margin,
    newton_solve,
    newton_tensor,
    p_field_convex,
    p_field_graph,
    pinching_margins,
    pointwise_ellipticity,
    quotient_derivative,
    radial_exact,
    reference_constants,
    stability_report,
    sweep_csv,
    trace_free_identity_check,
    version,
)

__version__ = version()

__all__ = [
    "BoundaryGeometry",
    "CurvatureField",
    "EllipticityReport",
    "GammaReport",
    "GardingFlags",
    "GradFlag",
    "GraphSurface",
    "IdentityReport",
    "LoadedSurface",
    "MQValues",
    "PFieldConvex",
    "PFieldGraph",
    "PinchingMargins",
    "PolarGrid",
    "ReferenceConstants",
    "SolveReport",
    "SolverConfig",
    "StabilityReport",
    "StarDomain",
    "SweepMember",
    "SweepRow",
    "binomial",
    "boundary_geometry",
    "cap_balance_pointwise",
    "cmc_residual",
    "curvature_field",
    "domain_sweep",
    "dump_surface",
    "elem_sym_matrix",
    "elem_sym_matrix_values",
    "elem_sym_values",
    "eval_cap_balance",
    "eval_fundamental",
    "eval_heintze_karcher",
    "eval_hk_deficit",
    "eval_soap_bubble",
    "flat_surface",
    "gamma_k_report",
    "garding_membership",
    "gauss_map_identity",
    "hyperboloid_cap",
    "load_surface",
    "minkowski_inner",
    "newton_maclaurin_margin",
    "newton_solve",
    "newton_tensor",
    "p_field_convex",
    "p_field_graph",
    "pinching_margins",
    "pointwise_ellipticity",
    "quotient_derivative",
    "radial_exact",
    "reference_constants",
    "stability_report",
    "sweep_csv",
    "trace_free_identity_check",
    "version",
]
