"""Closed-form coefficient tables for the generating-function exponents.

All functions accept ``jet=True`` to return :class:`PhaseJet` values that
carry exact derivatives with respect to ``phi``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..series.jet import expi

__all__ = [
    "CoeffSetDetection",
    "CoeffSetQfiIdeal",
    "CoeffSetQfiLossy",
    "CoeffSetPhotonNumber",
    "coeffs_detection",
    "coeffs_qfi_ideal",
    "coeffs_qfi_lossy",
    "coeffs_photon_number",
]


@dataclass(frozen=True)
class CoeffSetDetection:
    X1: complex
    X2: complex
    X3: complex
    X4: complex


@dataclass(frozen=True)
class CoeffSetQfiIdeal:
    y1: complex
    y2: complex
    y3: complex
    y4: complex
    y5: complex
    y6: complex


@dataclass(frozen=True)
class CoeffSetQfiLossy:
    X1: complex
    X2: complex
    X3: complex
    X4: complex
    X5: complex
    X6: complex


@dataclass(frozen=True)
class CoeffSetPhotonNumber:
    f1: complex
    f2: complex
    f3: complex
    f4: complex
    f5: complex
    f6: complex
    f7: complex
    f8: complex
    f9: complex
    f10: complex
    f11: complex


def _common(p):
    return math.sinh(p.g), math.cosh(p.g), expi(p.theta)


def coeffs_detection(p, loss="T", jet=False):
    """X1..X4 of the detection exponent; ``loss`` picks ``T`` or ``eta``."""
    L = p.T if loss == "T" else p.eta
    sh, ch, eth = _common(p)
    eph = expi(p.phi, jet)
    rt = math.sqrt(p.tau * L)
    rr = math.sqrt(1.0 - p.tau)
    return CoeffSetDetection(
        X1=-1j * eph * eth * rt * rr * sh * ch,
        X2=eph * rt * ch - 1j * eth * rr * sh,
        X3=1j * rr * ch - eph * eth * rt * sh,
        X4=complex((1.0 - p.tau + p.tau * L) * sh * sh),
    )


def coeffs_qfi_ideal(p, jet=False):
    """y1..y6 as used by the reference transcription of the ideal-QFI exponent."""
    sh, ch, eth = _common(p)
    emph = expi(p.phi, jet).conjugate()
    emth = eth.conjugate()
    rt = math.sqrt(p.tau)
    rr = math.sqrt(1.0 - p.tau)
    return CoeffSetQfiIdeal(
        y1=emph * ch,
        y2=-emph * emth * sh,
        y3=emph * rt * ch,
        y4=1j * emth * rr * sh,
        y5=complex(-1j * rr * ch),
        y6=-emph * emth * rt * sh,
    )


def coeffs_qfi_lossy(p, jet=False):
    """X1..X6 of the lossy-QFI exponent (loss transmittance ``eta``)."""
    d = coeffs_detection(p, loss="eta", jet=jet)
    sh, ch, eth = _common(p)
    eph = expi(p.phi, jet)
    return CoeffSetQfiLossy(
        X1=d.X1,
        X2=d.X2,
        X3=d.X3,
        X4=d.X4,
        X5=eph * math.sqrt(p.tau * p.eta) * sh * sh,
        X6=-1j * eth * math.sqrt(1.0 - p.tau) * sh * ch,
    )


def coeffs_photon_number(p, jet=False):
    """f1..f11 of the internal photon-number exponent.

    ``f11`` (the coefficient of ``beta`` on both b-mode variables) is the
    mean of ``b`` per unit ``beta`` after the OPA, i.e. ``cosh g``.
    """
    sh, ch, eth = _common(p)
    eph = expi(p.phi, jet)
    T = p.T
    rT = math.sqrt(T)
    rr = math.sqrt(1.0 - p.tau)
    return CoeffSetPhotonNumber(
        f1=complex(math.sqrt(p.tau) * T * sh * sh),
        f2=-1j * eph * eth * rT * rr * sh * ch,
        f3=complex(1j * rr * sh * sh),
        f4=-eph * eth * math.sqrt(p.tau * T) * sh * ch,
        f5=complex(T * sh * sh),
        f6=-eph * eth * rT * sh * ch,
        f7=complex(sh * sh),
        f8=eph * rT * ch,
        f9=-eth * sh,
        f10=-eph * eth * rT * sh,
        f11=complex(ch),
    )
