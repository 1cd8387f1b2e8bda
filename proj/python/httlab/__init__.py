from ._httlab import (
    ConfigError,
    NumericalError,
    classify_unfolding,
    coefficients,
    degenerate_point_12,
    derivatives,
    equilibrium,
    estimate_period,
    hopf_alpha,
    hopf_hopf,
    htt_point,
    integrate_reduced,
    lyapunov_max,
    neutral_curve,
    nf_equilibria,
    nf_vector_field,
    simulate_pde,
)

__all__ = [
    "ConfigError",
    "NumericalError",
    "classify_unfolding",
    "coefficients",
    "degenerate_point_12",
    "derivatives",
    "equilibrium",
    "estimate_period",
    "hopf_alpha",
    "hopf_hopf",
    "htt_point",
    "integrate_reduced",
    "lyapunov_max",
    "neutral_curve",
    "nf_equilibria",
    "nf_vector_field",
    "simulate_pde",
]
