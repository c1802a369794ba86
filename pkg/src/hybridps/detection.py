"""Homodyne phase sensitivity of the photon-subtracted output mode.

Normal-ordered moments ``<a^dag^k a^l>`` of the subtracted state are
ratios of mixed derivatives of ``exp(Z0)``:

    <a^dag^k a^l> = G(m+k, m+l) / G(m, m),   G(k, l) = d^{k+l} exp(Z0) / dt^k ds^l |_0

The quadrature is ``X = (a + a^dag)/sqrt(2)`` and the sensitivity follows
from error propagation, ``dphi = sqrt(Var X) / |d<X>/dphi|``.  The phase
derivative is exact: the exponent is built over :class:`PhaseJet` scalars.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._checks import as_real
from .errors import AnnihilatedStateError, ConsistencyError
from .model.exponents import build_Z0
from .series.jet import PhaseJet
from .series.truncated import series_exp, taylor_derivative

__all__ = ["HomodyneResult", "subtracted_moment", "homodyne_stats", "phase_sensitivity"]

# G(m, m) at or below this is treated as an annihilated state
NORM_FLOOR = 1e-14


@dataclass(frozen=True)
class HomodyneResult:
    mean_X: float
    dmean_dphi: float
    var_X: float
    delta_phi: float
    norm_Gmm: float


def _G(expz, k, l):
    return taylor_derivative(expz, {"t": k, "s": l})


def _normalizer(expz, m):
    gmm = _G(expz, m, m)
    value = gmm.value if isinstance(gmm, PhaseJet) else gmm
    norm = as_real(value, "G(m,m)")
    if not norm > NORM_FLOOR:
        raise AnnihilatedStateError()
    return gmm, norm


def subtracted_moment(p, k, l):
    """``<a^dag^k a^l>`` of the normalized, photon-subtracted output state."""
    if k < 0 or l < 0:
        raise ValueError("k and l must be nonnegative")
    cap = p.m + max(k, l)
    expz = series_exp(build_Z0(p, caps=(cap, cap)))
    gmm, _ = _normalizer(expz, p.m)
    return complex(_G(expz, p.m + k, p.m + l) / gmm)


def homodyne_stats(p):
    """Mean, phase slope and variance of the output quadrature."""
    m = p.m
    expz = series_exp(build_Z0(p, jet=True))
    gmm, norm = _normalizer(expz, m)
    mean_a = _G(expz, m, m + 1) / gmm
    mean_adag = _G(expz, m + 1, m) / gmm
    mean = (mean_a + mean_adag) * (1.0 / math.sqrt(2.0))
    second = (_G(expz, m, m + 2) + _G(expz, m + 2, m) + 2.0 * _G(expz, m + 1, m + 1)) / gmm
    mean_x = as_real(mean.value, "<X>")
    dmean = as_real(mean.deriv, "d<X>/dphi")
    x2 = 0.5 * (as_real(second.value, "<X^2>") + 1.0)
    var = x2 - mean_x * mean_x
    if var < 0:
        if var < -1e-10 * max(1.0, x2):
            raise ConsistencyError(f"negative quadrature variance {var:.3e}")
        var = 0.0
    scale = 1.0 + abs(mean_x)
    if abs(dmean) <= 64 * 2.220446049250313e-16 * scale:
        delta = math.inf
    else:
        delta = math.sqrt(var) / abs(dmean)
    return HomodyneResult(mean_X=mean_x, dmean_dphi=dmean, var_X=var, delta_phi=delta, norm_Gmm=norm)


def phase_sensitivity(p):
    """Homodyne phase sensitivity; ``math.inf`` at stationary points of ``<X>``."""
    return homodyne_stats(p).delta_phi
