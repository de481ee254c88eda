"""Covert-communication scaling toolkit: python surface of the C++ core."""

from covertlab._core import (  # noqa: F401
    GGammaMoments,
    InputLaw,
    IntegrabilityReport,
    KeyLengthReport,
    NoiseModel,
    RandomStream,
    ScalingResult,
    SimulationReport,
    TiltedNoise,
    charfn_factorization_residual,
    default_t_grid,
    digamma,
    entropy_gap_taylor,
    gamma_achievability,
    gg_scaling_upper,
    ggamma_moments,
    ggamma_scaling_upper,
    integrability_check,
    kl_taylor,
    log_gamma,
    make_tilted,
    psi,
    psi_general_upper,
    psi_quadrature,
    reports_to_csv,
    resolvability_bound,
    run_experiment,
    sample_input,
    scaling_constant,
    solve_gamma_converse,
    sufficient_key_length,
    sweep,
    synthesize_input,
    trigamma,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
