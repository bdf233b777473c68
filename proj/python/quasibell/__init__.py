"""Teleportation over quasi Bell channels."""

from ._core import (
    CLASSICAL_FIDELITY,
    DegenerateStateError,
    Exposure,
    Family,
    NoiseKind,
    analytic_average_fidelity,
    apply_noise,
    average_fidelity,
    concurrence,
    family_name,
    general_state,
    min_fidelity,
    parse_family,
    partial_trace,
    quasi_bell_state,
    report,
    sweep,
    teleportation_fidelity,
    tensor,
    verify,
)

__all__ = [
    "CLASSICAL_FIDELITY",
    "DegenerateStateError",
    "Exposure",
    "Family",
    "NoiseKind",
    "analytic_average_fidelity",
    "apply_noise",
    "average_fidelity",
    "concurrence",
    "family_name",
    "general_state",
    "min_fidelity",
    "parse_family",
    "partial_trace",
    "quasi_bell_state",
    "report",
    "sweep",
    "teleportation_fidelity",
    "tensor",
    "verify",
]
