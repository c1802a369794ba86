"""Parameters, coefficient tables and generating-function exponents."""

from .coefficients import (
    CoeffSetDetection,
    CoeffSetPhotonNumber,
    CoeffSetQfiIdeal,
    CoeffSetQfiLossy,
    coeffs_detection,
    coeffs_photon_number,
    coeffs_qfi_ideal,
    coeffs_qfi_lossy,
)
from .exponents import (
    build_Z0,
    build_Z1,
    build_Z2,
    build_Z3,
    derive_Z0,
    derive_Z1,
    derive_Z2,
    derive_Z3,
)
from .params import PARAM_FIELDS, Params, scheme_params
from .typo_ledger import TYPO_LEDGER

__all__ = [
    "PARAM_FIELDS",
    "TYPO_LEDGER",
    "CoeffSetDetection",
    "CoeffSetPhotonNumber",
    "CoeffSetQfiIdeal",
    "CoeffSetQfiLossy",
    "Params",
    "build_Z0",
    "build_Z1",
    "build_Z2",
    "build_Z3",
    "coeffs_detection",
    "coeffs_photon_number",
    "coeffs_qfi_ideal",
    "coeffs_qfi_lossy",
    "derive_Z0",
    "derive_Z1",
    "derive_Z2",
    "derive_Z3",
    "scheme_params",
]
