"""Physical parameter record."""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

from ..errors import UsageError

__all__ = ["Params", "PARAM_FIELDS", "scheme_params"]


@dataclass(frozen=True)
class Params:
    """One configuration of the interferometer.

    alpha, beta : real coherent amplitudes injected into modes a and b
    g, theta    : OPA gain and phase (``xi = g e^{i theta}``)
    phi         : unknown phase on mode a
    tau         : variable beam-splitter transmittance
    T           : loss transmittance on the detection path
    eta         : loss transmittance used by the lossy Fisher information
    m           : number of photons subtracted from output mode a
    """

    alpha: float = 1.0
    beta: float = 0.0
    g: float = 1.0
    theta: float = math.pi
    phi: float = math.pi / 2
    tau: float = 0.5
    T: float = 1.0
    eta: float = 1.0
    m: int = 0

    def __post_init__(self):
        for name in ("alpha", "beta", "g", "theta", "phi", "tau", "T", "eta"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise UsageError(f"{name}: expected a real number, got {value!r}")
            if not math.isfinite(value):
                raise UsageError(f"{name}: must be finite")
            object.__setattr__(self, name, float(value))
        for name in ("alpha", "beta", "g"):
            if getattr(self, name) < 0:
                raise UsageError(f"{name}: must be >= 0")
        for name in ("tau", "T", "eta"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise UsageError(f"{name}: must lie in [0, 1]")
        m = self.m
        if isinstance(m, bool) or not isinstance(m, int):
            if isinstance(m, float) and m.is_integer():
                m = int(m)
            else:
                raise UsageError(f"m: expected a nonnegative integer, got {m!r}")
        if m < 0:
            raise UsageError("m: must be >= 0")
        object.__setattr__(self, "m", m)

    @property
    def xi(self):
        return self.g * complex(math.cos(self.theta), math.sin(self.theta))

    @property
    def scheme(self):
        if self.alpha > 0 and self.beta == 0:
            return "A"
        if self.alpha == 0 and self.beta > 0:
            return "B"
        return None

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

    def as_dict(self):
        return dataclasses.asdict(self)


PARAM_FIELDS = tuple(f.name for f in dataclasses.fields(Params))


def scheme_params(scheme, amplitude=1.0, **kwargs):
    """Params for scheme A (coherent light in mode a) or B (in mode b)."""
    scheme = scheme.upper()
    if scheme == "A":
        return Params(alpha=amplitude, beta=0.0, **kwargs)
    if scheme == "B":
        return Params(alpha=0.0, beta=amplitude, **kwargs)
    raise UsageError(f"scheme: expected 'A' or 'B', got {scheme!r}")
