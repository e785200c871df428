"""Spectral solver and norm-growth probes for u_tt = u_xx + beta u_xxxx + u_xxxxxx + (u^2)_xx."""

from ._core import (
    Instability,
    InvalidSpec,
    NoContraction,
    SupportOverflow,
    bilinear_ratio_sweep,
    bracket,
    check_weighted_convolution,
    cubic_bracket_integral,
    gamma,
    gaussian_band_data,
    hs_norm,
    illposed_sweep,
    kernel_K,
    linear_evolve,
    multiplier,
    picard_solve,
    rho,
    run_checks,
    step_oracle_solve,
    symbol_equivalence_ratio,
)

__all__ = [
    "Instability",
    "InvalidSpec",
    "NoContraction",
    "SupportOverflow",
    "bilinear_ratio_sweep",
    "bracket",
    "check_weighted_convolution",
    "cubic_bracket_integral",
    "gamma",
    "gaussian_band_data",
    "hs_norm",
    "illposed_sweep",
    "kernel_K",
    "linear_evolve",
    "multiplier",
    "picard_solve",
    "rho",
    "run_checks",
    "step_oracle_solve",
    "symbol_equivalence_ratio",
]
