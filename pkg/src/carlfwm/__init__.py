"""Collective-recoil four-wave mixing: parameter mapping and N-particle simulation."""

from carlfwm.physical import (
    AtomicSpecies,
    Cavity,
    Diagnostic,
    PhysicalSystem,
    PumpField,
    Sample,
    Transition,
    builtin_cs_example,
    validate,
)
from carlfwm.params import ScaledParameters, derive_parameters
from carlfwm.dynamics import RunConfig, SimState, TimeSeries, init_quiet_start, integrate, simulate
from carlfwm.analysis import (
    detect_saturation,
    fit_growth_rate,
    linear_growth_rate,
    scan_sigma,
)

__version__ = "0.1.0"

__all__ = [
    "AtomicSpecies",
    "Cavity",
    "Diagnostic",
    "PhysicalSystem",
    "PumpField",
    "RunConfig",
    "Sample",
    "ScaledParameters",
    "SimState",
    "TimeSeries",
    "Transition",
    "builtin_cs_example",
    "derive_parameters",
    "detect_saturation",
    "fit_growth_rate",
    "init_quiet_start",
    "integrate",
    "simulate",
    "linear_growth_rate",
    "scan_sigma",
    "validate",
]
