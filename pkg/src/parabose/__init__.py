"""Generalized para-Bose squeezed and coherent states.

Closed-form state construction, moments and uncertainty relations for
time-dependent quadratic Hamiltonians over the Wigner-Heisenberg algebra,
each quantity cross-checked against a truncated-Fock-space integration
oracle.  See the README for the CLI and the verification suite.
"""

from .errors import (
    ConfigError,
    DomainError,
    IntegrationError,
    ParaBoseError,
    QuadratureError,
    TruncationError,
)
from .fock import AlgebraParams, FockVector
from .schedules import (
    CoefficientSchedule,
    constant_schedule,
    load_schedule_csv,
    sinusoidal_schedule,
    tabulated_schedule,
)
from .dynamics import MotionIntegral, StateParams, StateTrajectory
from .states import CsSpec, SvsSpec
from .observables import Moments
from .oscillator import OscillatorConfig

__all__ = [
    "AlgebraParams",
    "FockVector",
    "CoefficientSchedule",
    "constant_schedule",
    "sinusoidal_schedule",
    "tabulated_schedule",
    "load_schedule_csv",
    "MotionIntegral",
    "StateParams",
    "StateTrajectory",
    "SvsSpec",
    "CsSpec",
    "Moments",
    "OscillatorConfig",
    "ParaBoseError",
    "DomainError",
    "ConfigError",
    "TruncationError",
    "IntegrationError",
    "QuadratureError",
]

__version__ = "0.1.0"
