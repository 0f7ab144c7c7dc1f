"""Whole-interval integrator for driven quantum dynamics.

The heavy lifting lives in the compiled extension; this package re-exports
its public surface.
"""

from ._globalprop import (  # noqa: F401
    ConfigError,
    DivergenceError,
    NumericalError,
    SolveSummary,
    TimeGrid,
    benchmark_signal,
    convergence_factor,
    cumulative_integral,
    eigen_energies,
    forward_dft,
    reference_example,
    resonance_frequencies,
    simpson_cumulative,
    solve_example,
    spectral_derivative,
)

__all__ = [
    "ConfigError",
    "DivergenceError",
    "NumericalError",
    "SolveSummary",
    "TimeGrid",
    "benchmark_signal",
    "convergence_factor",
    "cumulative_integral",
    "eigen_energies",
    "forward_dft",
    "reference_example",
    "resonance_frequencies",
    "simpson_cumulative",
    "solve_example",
    "spectral_derivative",
]

__version__ = "0.1.0"
