"""Harmonic oscillator driven through zero stiffness into the inverted regime.

Modules
-------
specfun
    Fractional-order Bessel functions, complex log-gamma, terminating 2F1.
mode
    Frequency profiles and the exact classical mode.
moments
    Second moments, mean energy, energy ratios and fluctuations.
spectra
    Energy distribution of the inverted oscillator after a sudden jump.
oracle
    Independent ODE integrator and quadrature used for cross-checks.
"""

from . import mode, moments, oracle, specfun, spectra
from .errors import (
    CapExceededError,
    ConvergenceError,
    DomainError,
    PoleError,
    PreconditionError,
    QuadratureError,
    StepUnderflowError,
)

__version__ = "0.1.0"

__all__ = [
    "specfun",
    "mode",
    "moments",
    "spectra",
    "oracle",
    "DomainError",
    "PoleError",
    "CapExceededError",
    "PreconditionError",
    "ConvergenceError",
    "StepUnderflowError",
    "QuadratureError",
]
