"""Pseudospectral simulator and diagnostics for the defocusing NLS on R^d x T."""

from ._core import (  # noqa: F401
    ComplexField,
    ConfigError,
    CylinderGrid,
    DomainError,
    FracSign,
    NormSeries,
    PowerLawFit,
    QuadratureScheme,
    SimConfig,
    SpaceTag,
    TorusDirection,
    Trajectory,
    TrajectoryFlag,
    __version__,
    boundary_shell_mass_fraction,
    c_of_s,
    dispersive_ratio,
    energy,
    evolve,
    extract_scattering_state,
    field,
    fit_decay,
    frac_laplacian_fourier,
    frac_laplacian_resolvent,
    gaussian_packet,
    h1_norm,
    j_equation_residual,
    j_operator,
    j_operator_conjugated,
    lightcone_mass,
    make_grid,
    make_quadrature,
    mass,
    mixed_norm,
    nonlinear_phase_step,
    propagate_free,
    propagate_torus,
    pullback,
    pullback_increments,
    resolvent_apply,
    run_config,
    sigma_norm,
    spectral_ball_mass,
    spectral_tail_fraction,
    step_strang,
    transform,
    witness_envelope_integral,
    witness_integral,
    witness_integrand,
)
