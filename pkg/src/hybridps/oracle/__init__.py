"""Independent truncated Fock-space reference implementation."""

from .fock import (
    DEFAULT_CUTOFF,
    FockState,
    evolve_output_state,
    oracle_cq_function,
    oracle_internal_photon_number,
    oracle_phase_sensitivity,
    oracle_qfi_ideal,
    oracle_qfi_lossy,
)

__all__ = [
    "DEFAULT_CUTOFF",
    "FockState",
    "evolve_output_state",
    "oracle_cq_function",
    "oracle_internal_photon_number",
    "oracle_phase_sensitivity",
    "oracle_qfi_ideal",
    "oracle_qfi_lossy",
]
