"""Sobolev-type constants and diameter bounds for compact Kähler manifolds
with positive Ricci curvature, with exact and numerical checks."""

from ._core import (
    CatalogError,
    DomainError,
    SolverError,
    bonnet_myers_bound,
    boundary_exponent,
    build_named_expression,
    chain_24m_check,
    chain_epsilon_threshold,
    closed_form_200,
    closed_form_24m,
    expression_catalog,
    family_bound,
    identity_catalog,
    kahler_beckner_constant,
    kahler_sobolev_constant,
    log_sobolev_constant,
    optimal_k_for_p,
    optimize_family,
    prop_p_margin,
    proposition_c_constant,
    rayleigh_ratio,
    replay_chain,
    riemannian_sobolev_constant,
    run_cli,
    run_model_suite,
    sin_power_integral,
    solve_max_diameter,
    verify_identity,
    wallis_factor,
)

__version__ = "0.1.0"
