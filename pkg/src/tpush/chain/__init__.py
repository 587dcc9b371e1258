"""The interpolation t-Push TASEP: exact kernels, stationarity, lumping and densities."""

from .dynamics import (
    ChainSpec,
    FullKernel,
    Kernel,
    bell_denominator,
    bell_numerators,
    bell_probs,
    full_kernel,
    is_restricted,
    kernel_at,
    p_frak,
    q_frak,
    step1_kernel,
    step1_paths,
    step2_kernel,
    step2_paths,
)
from .stationary import (
    DensityTable,
    Report,
    coarse_spec,
    densities,
    fstar_source,
    lump_check,
    sample_points,
    stationary_distribution,
    stationary_masses,
    verify_stationary,
)

__all__ = [
    "DensityTable",
    "Report",
    "coarse_spec",
    "densities",
    "fstar_source",
    "lump_check",
    "sample_points",
    "stationary_distribution",
    "stationary_masses",
    "verify_stationary",
    "ChainSpec",
    "FullKernel",
    "Kernel",
    "bell_denominator",
    "bell_numerators",
    "bell_probs",
    "full_kernel",
    "is_restricted",
    "kernel_at",
    "p_frak",
    "q_frak",
    "step1_kernel",
    "step1_paths",
    "step2_kernel",
    "step2_paths",
]
