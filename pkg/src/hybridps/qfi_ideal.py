"""Quantum Fisher information of the ideal (lossless) equivalent model.

The probe after the phase shifter is ``|psi> = N1 A^m U_phi S_g |alpha, beta>``
with ``A = sqrt(tau) a + i sqrt(1-tau) b`` (the output subtraction moved in
front of the beam splitter).  With ``D(x1, y1, x2, y2)`` the mixed
derivative of ``exp(Z1)`` of orders ``(m, m)`` in ``(s, t)`` and
``(x1, y1, x2, y2)`` in ``(c, d, p, h)``:

    <psi'|psi'> = N1^2 D1111 - i N1 N1' D1100 + i N1 N1' D0011 + N1'^2 D0000
    <psi'|psi>  = -i N1^2 D1100 + N1 N1' D0000
    F = 4 (<psi'|psi'> - |<psi'|psi>|^2)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._checks import as_real
from .errors import AnnihilatedStateError, ConsistencyError, UsageError
from .model.exponents import build_Z1
from .series.truncated import series_exp, taylor_derivative

__all__ = ["QfiResult", "qfi_ideal", "qcrb"]

NORM_FLOOR = 1e-14


@dataclass(frozen=True)
class QfiResult:
    F: float
    qcrb: float
    braket_check: float


def qcrb(F, v=1):
    """Quantum Cramer-Rao bound ``1/sqrt(v F)`` for ``v`` repetitions."""
    if not F > 0:
        raise UsageError(f"QCRB needs F > 0, got {F}")
    if v < 1:
        raise UsageError("v must be >= 1")
    return 1.0 / math.sqrt(v * F)


def qfi_ideal(p, v=1):
    expz = series_exp(build_Z1(p, jet=True))
    m = p.m

    def D(x1, y1, x2, y2):
        return taylor_derivative(expz, {"s": m, "t": m, "c": x1, "d": y1, "p": x2, "h": y2})

    d0 = D(0, 0, 0, 0)
    norm = as_real(d0.value, "normalizer")
    if not norm > NORM_FLOOR:
        raise AnnihilatedStateError()
    n1 = norm**-0.5
    dn1 = -0.5 * norm**-1.5 * as_real(d0.deriv, "normalizer derivative")
    d1100 = D(1, 1, 0, 0).value
    d0011 = D(0, 0, 1, 1).value
    d1111 = D(1, 1, 1, 1).value

    dd = n1 * n1 * d1111 - 1j * n1 * dn1 * d1100 + 1j * n1 * dn1 * d0011 + dn1 * dn1 * norm
    dpsi_psi = -1j * n1 * n1 * d1100 + n1 * dn1 * norm
    psi_dpsi = 1j * n1 * n1 * d0011 + n1 * dn1 * norm
    if abs(psi_dpsi - dpsi_psi.conjugate()) > 1e-8 * max(1.0, abs(psi_dpsi)):
        raise ConsistencyError("overlap <psi|psi'> is not the conjugate of <psi'|psi>")

    F = 4.0 * (as_real(dd, "<psi'|psi'>") - abs(dpsi_psi) ** 2)
    if F < 0:
        if F < -1e-10 * max(1.0, abs(dd.real)):
            raise ConsistencyError(f"negative Fisher information {F:.3e}")
        F = 0.0
    bound = qcrb(F, v) if F > 0 else math.inf
    return QfiResult(F=F, qcrb=bound, braket_check=abs(dpsi_psi.real))
