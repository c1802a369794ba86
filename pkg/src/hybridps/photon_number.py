"""Mean photon number inside the equivalent interferometer and the SQL/HL benchmarks."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._checks import as_real
from .errors import AnnihilatedStateError, ConsistencyError
from .model.exponents import build_Z3
from .series.truncated import series_exp, taylor_derivative

__all__ = ["PhotonNumberResult", "internal_photon_number"]

NORM_FLOOR = 1e-14


@dataclass(frozen=True)
class PhotonNumberResult:
    n_total: float
    sql: float
    hl: float


def internal_photon_number(p):
    """``<n_a + n_b>`` of ``N3 A^m U_phi B_T S_g |alpha, beta, 0>``.

    Evaluated at the phase stored in ``p``.
    """
    m = p.m
    expz = series_exp(build_Z3(p))

    def Q(l1, l2, l3, l4):
        return taylor_derivative(expz, {"s": m, "t": m, "l1": l1, "l2": l2, "l3": l3, "l4": l4})

    norm = as_real(Q(0, 0, 0, 0), "photon-number normalizer")
    if not norm > NORM_FLOOR:
        raise AnnihilatedStateError()
    n = as_real((Q(1, 1, 0, 0) + Q(0, 0, 1, 1)) / norm, "N_T")
    if n < 0:
        if n < -1e-10:
            raise ConsistencyError(f"negative photon number {n:.3e}")
        n = 0.0
    if n == 0:
        return PhotonNumberResult(n_total=0.0, sql=math.inf, hl=math.inf)
    return PhotonNumberResult(n_total=n, sql=1.0 / math.sqrt(n), hl=1.0 / n)
