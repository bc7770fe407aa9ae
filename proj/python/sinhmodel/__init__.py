"""Large-N asymptotics of sinh-type log-gas partition functions."""

from ._sinhmodel import (
    CRITERION_COUNT,
    BoundaryFunctions,
    ModelParams,
    NumericalFailure,
    Potential,
    Support,
    density_infinite,
    endpoints_N,
    endpoints_infinite,
    free_energy_leading,
    gaussian_asymptotic_residual,
    gaussian_logZ_asymptotic,
    gaussian_logZ_exact,
    kernel_S,
    kernel_sN,
    logZ_quadrature,
    logZ_ratio_mc,
    main_expansion,
    matched_gaussian,
    mellin_M_log,
    run_criterion,
)

__all__ = [
    "CRITERION_COUNT",
    "BoundaryFunctions",
    "ModelParams",
    "NumericalFailure",
    "Potential",
    "Support",
    "density_infinite",
    "endpoints_N",
    "endpoints_infinite",
    "free_energy_leading",
    "gaussian_asymptotic_residual",
    "gaussian_logZ_asymptotic",
    "gaussian_logZ_exact",
    "kernel_S",
    "kernel_sN",
    "logZ_quadrature",
    "logZ_ratio_mc",
    "main_expansion",
    "matched_gaussian",
    "mellin_M_log",
    "run_criterion",
]
