"""Photonic heat engine fuelled by correlated atom pairs.

Subpackages: ``atoms`` (two-qubit fuel states), ``reservoir`` (effective
reservoir coefficients), ``cavity`` (Fock-space dynamics), ``engine``
(cycle thermodynamics) and ``sweep`` (scans and CLI).
"""
from .atoms import AtomPairState, PureFamilyParams, bell_states, build_pure_family, concurrence
from .engine import CycleResult, efficiency_closed_form, effective_temperature, field_entropy, run_cycle
from .reservoir import (
    InteractionParams,
    ReservoirCoefficients,
    detuning_envelope,
    operating_regime,
    reservoir_coefficients,
    reservoir_temperature,
)

__version__ = "0.1.0"

__all__ = [
    "AtomPairState", "CycleResult", "InteractionParams", "PureFamilyParams", "ReservoirCoefficients",
    "bell_states", "build_pure_family", "concurrence", "detuning_envelope", "efficiency_closed_form",
    "effective_temperature", "field_entropy", "operating_regime", "reservoir_coefficients",
    "reservoir_temperature", "run_cycle",
]
