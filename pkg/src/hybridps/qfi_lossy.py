"""Fisher information under photon loss on mode a (purified-loss bound).

Loss of transmittance ``eta`` is purified into an environment with the
Kraus family ``Pi_l(phi) = sqrt((1-eta)^l / l!) e^{i phi (n - lambda l)} eta^{n/2} a^l``.
The extended-system Fisher information ``C_Q(lambda)`` upper-bounds the
true one and its minimum over ``lambda`` is reported as ``F_L``.

With the effective generators ``H1 = A n^2 + B n`` and ``H2 = C n`` the
bound is an explicit quadratic in ``mu = 1 + lambda``.  Writing ``V`` for the
photon-number variance, ``K`` for the phase/number cross term and ``Q0``
for the pure-state part of the normalized probe ``N2 O |psi_S>``:

    C_Q / 4 = Q0 + C^2 V + C K + B <n>
    F_L     = 4 (Q0 + V + K) - (1-eta) (2V + K)^2 / ((1-eta) V + eta <n>)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._checks import as_real
from .errors import AnnihilatedStateError, ConsistencyError
from .model.exponents import Z2_VARS, build_Z2
from .optimize import grid_golden_minimize
from .series.truncated import TruncatedSeries, extract_from_prefactored, series_exp

__all__ = [
    "KrausCoeffs",
    "LossyBlocks",
    "LAMBDA_WINDOW",
    "kraus_coeffs",
    "lossy_building_blocks",
    "cq_of_lambda",
    "qfi_lossy",
    "minimize_cq",
]

NORM_FLOOR = 1e-14
LAMBDA_WINDOW = (-2.0, 1.0)
CONSISTENCY_RTOL = 1e-6


@dataclass(frozen=True)
class KrausCoeffs:
    A: float
    B: float
    C: float


@dataclass(frozen=True)
class LossyBlocks:
    """Normalized expectation values in the probe ``N2 O |psi_S>``.

    ``n2`` is ``N2^2``; every other field already includes that factor, so
    for example ``na`` is the mean photon number of mode a in the probe.
    """

    n2: float
    dOdag_dO: complex
    Odag_dO: complex
    dOdag_na_O: complex
    na: float
    na2: float

    @property
    def variance(self):
        return self.na2 - self.na**2

    @property
    def pure_part(self):
        return (self.dOdag_dO - abs(self.Odag_dO) ** 2).real

    @property
    def cross(self):
        # i(<dO^dag n O> - c.c.) + i <n> (<O^dag dO> - c.c.)
        return -2.0 * self.dOdag_na_O.imag - 2.0 * self.na * self.Odag_dO.imag


def kraus_coeffs(eta, lam):
    c = 1.0 - (1.0 + lam) * (1.0 - eta)
    return KrausCoeffs(A=c * c, B=(1.0 + lam) ** 2 * eta * (1.0 - eta), C=c)


def lossy_building_blocks(p):
    m = p.m
    z = build_Z2(p)
    expz = series_exp(z)
    V, caps = z.variables, z.caps

    def P(kx, ly, prefactor=None):
        pre = TruncatedSeries.monomial(V, caps, prefactor or {})
        return extract_from_prefactored(pre, z, {"s": m, "t": m, "x": kx, "y": ly}, expz=expz)

    norm = as_real(P(0, 0), "lossy normalizer")
    if not norm > NORM_FLOOR:
        raise AnnihilatedStateError()
    n2 = 1.0 / norm
    amp = math.sqrt(p.tau * p.eta)
    eph = complex(math.cos(p.phi), math.sin(p.phi))
    dd = p.tau * p.eta * P(1, 1, {"s": 1, "t": 1}) * n2
    od = 1j * eph * amp * P(0, 1, {"s": 1}) * n2
    dno = -1j * eph.conjugate() * amp * P(2, 1, {"t": 1}) * n2
    na = as_real(P(1, 1) * n2, "<n_a>")
    na2 = as_real((P(2, 2) + P(1, 1)) * n2, "<n_a^2>")
    return LossyBlocks(
        n2=n2,
        dOdag_dO=complex(as_real(dd, "<dO^dag dO>")),
        Odag_dO=complex(od),
        dOdag_na_O=complex(dno),
        na=na,
        na2=na2,
    )


def _cq(blocks, eta, lam):
    k = kraus_coeffs(eta, lam)
    return 4.0 * (blocks.pure_part + k.A * blocks.variance + k.C * blocks.cross + k.B * blocks.na)


def cq_of_lambda(p, lam, blocks=None):
    """Extended-system Fisher information for Kraus parameter ``lam``."""
    if blocks is None:
        blocks = lossy_building_blocks(p)
    return _cq(blocks, p.eta, lam)


def _closed_form(blocks, eta):
    V, K, na = blocks.variance, blocks.cross, blocks.na
    base = 4.0 * (blocks.pure_part + V + K)
    denom = (1.0 - eta) * V + eta * na
    if eta >= 1.0 or denom <= 0.0:
        return base
    return base - (1.0 - eta) * (2.0 * V + K) ** 2 / denom


def minimize_cq(p, blocks=None):
    """Numerical ``min_lambda C_Q``; returns ``(lambda_star, C_Q_min)``."""
    if blocks is None:
        blocks = lossy_building_blocks(p)
    return grid_golden_minimize(lambda lam: _cq(blocks, p.eta, lam), *LAMBDA_WINDOW)


def qfi_lossy(p, check=True):
    """Loss-optimized Fisher information ``F_L``.

    The closed form is returned; with ``check`` a numerical minimization
    over ``lambda`` must agree to ``CONSISTENCY_RTOL``.
    """
    blocks = lossy_building_blocks(p)
    F = _closed_form(blocks, p.eta)
    if check:
        _, numeric = minimize_cq(p, blocks)
        if abs(numeric - F) > CONSISTENCY_RTOL * max(abs(F), 1e-9):
            raise ConsistencyError(f"closed-form F_L={F!r} disagrees with numerical minimum {numeric!r}")
    if F < 0:
        if F < -1e-10:
            raise ConsistencyError(f"negative lossy Fisher information {F:.3e}")
        F = 0.0
    return F
