"""Spatial multi-strain epidemic fronts.

Thin wrapper over the C++ core. The main entry points:

- ``compute_sequence(strains, s0)``: which strains spread, in what order,
  how fast, and what susceptible level each leaves behind.
- ``simulate(strains, s0, ...)``: integrate the reaction-diffusion system.
- ``verify(strains, s0, ...)``: simulate and compare measured front speeds
  and depletion levels against the predicted cascade.
- ``sweep(trait1, trait2, s0_min, s0_max)``: regime map over the initial
  susceptible level for a two-strain family.

Strain indices in results are 1-based, matching the CLI and file formats.
"""

from ._core import (
    ContractError,
    NumericalError,
    ParamError,
    StrainParams,
    __version__,
    asymptotic_value,
    basic_reproduction_number,
    compute_sequence,
    depleted_level,
    simulate,
    speed,
    sweep,
    verify,
)

__all__ = [
    "ContractError",
    "NumericalError",
    "ParamError",
    "StrainParams",
    "__version__",
    "asymptotic_value",
    "basic_reproduction_number",
    "compute_sequence",
    "depleted_level",
    "simulate",
    "speed",
    "sweep",
    "verify",
]
