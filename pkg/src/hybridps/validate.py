"""Self-check suite behind ``hybridps validate``.

Each check compares an analytic module against either a closed form or the
Fock-space oracle.  Failures are collected, never raised.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass

from .detection import phase_sensitivity
from .model import build_Z0, build_Z1, build_Z2, build_Z3, derive_Z0, derive_Z1, derive_Z2, derive_Z3
from .model.params import Params, scheme_params
from .oracle import (
    oracle_internal_photon_number,
    oracle_phase_sensitivity,
    oracle_qfi_ideal,
    oracle_qfi_lossy,
)
from .photon_number import internal_photon_number
from .qfi_ideal import qfi_ideal
from .qfi_lossy import qfi_lossy

__all__ = ["Check", "run_checks", "report"]

SH1 = math.sinh(1.0) ** 2


@dataclass
class Check:
    name: str
    value: float | None
    expected: float | None
    tolerance: float
    passed: bool
    kind: str = "relative"
    detail: str = ""


def _evaluate(name, kind, tol, thunk):
    value, expected = thunk()
    value, expected = float(value), float(expected)
    if kind == "relative":
        err = abs(value - expected) / max(abs(expected), 1e-300)
        ok = err <= tol
    elif kind == "absolute":
        err = abs(value - expected)
        ok = err <= tol
    else:  # ordering: value >= expected
        err = expected - value
        ok = value >= expected * (1 - 1e-12)
    return Check(name, value, expected, tol, bool(ok), kind, f"err {err:.3e}")


def _series_gap(a, b):
    keys = set(a.terms) | set(b.terms)
    return max((abs(complex(a.terms.get(k, 0)) - complex(b.terms.get(k, 0))) for k in keys), default=0.0)


def _exponent_gap():
    p = Params(alpha=0.7, beta=0.4, g=0.9, theta=2.0, phi=1.1, tau=0.3, T=0.6, eta=0.8, m=2)
    return max(
        _series_gap(build_Z0(p), derive_Z0(p)),
        _series_gap(build_Z1(p, mode="reference"), derive_Z1(p)),
        _series_gap(build_Z2(p), derive_Z2(p)),
        _series_gap(build_Z3(p), derive_Z3(p)),
    )


def _quick(cutoff):
    pA2 = scheme_params("A", m=2, T=0.8)
    pB1 = scheme_params("B", m=1, tau=0.3, phi=0.3, T=0.7)
    pQ = scheme_params("A", m=1, phi=1.0)
    pL = Params(alpha=1.0, g=0.8, eta=0.7, m=1)
    pN = scheme_params("A", m=2, T=0.7, phi=1.0)
    pC = scheme_params("A", m=2)
    coh = Params(g=0.0, m=3)
    n_a = lambda p: internal_photon_number(p).n_total  # noqa: E731
    return [
        ("detection_oracle_scheme_A_m2_T0.8", "relative", 1e-6,
         lambda: (phase_sensitivity(pA2), oracle_phase_sensitivity(pA2, cutoff))),
        ("detection_oracle_scheme_B_m1_T0.7", "relative", 1e-6,
         lambda: (phase_sensitivity(pB1), oracle_phase_sensitivity(pB1, cutoff))),
        ("detection_coherent_anchor", "relative", 1e-8, lambda: (phase_sensitivity(coh), 1 / math.sqrt(2.0))),
        ("qfi_oracle_scheme_A_m1", "relative", 1e-5, lambda: (qfi_ideal(pQ).F, oracle_qfi_ideal(pQ, cutoff))),
        ("qfi_tmsv_anchor", "relative", 1e-8, lambda: (qfi_ideal(Params(alpha=0.0)).F, 4 * SH1 * (SH1 + 1))),
        ("qfi_coherent_anchor", "relative", 1e-8, lambda: (qfi_ideal(coh).F, 4.0)),
        ("qfi_lossy_coherent_anchor", "relative", 1e-8, lambda: (qfi_lossy(Params(g=0.0, eta=0.8)), 3.2)),
        ("qfi_lossy_oracle_m1_eta0.7", "relative", 1e-5, lambda: (qfi_lossy(pL), oracle_qfi_lossy(pL, cutoff))),
        ("qfi_lossy_lossless_limit", "relative", 1e-7, lambda: (qfi_lossy(pQ), qfi_ideal(pQ).F)),
        ("nphoton_anchor", "relative", 1e-8, lambda: (n_a(Params()), math.cosh(2.0) + 2 * SH1)),
        ("nphoton_oracle_m2_T0.7", "relative", 1e-6, lambda: (n_a(pN), oracle_internal_photon_number(pN, cutoff))),
        ("nphoton_scheme_equality_T1", "absolute", 1e-9,
         lambda: (n_a(scheme_params("A", m=2)), n_a(scheme_params("B", m=2)))),
        ("cramer_rao_ordering", "ordering", 0.0, lambda: (phase_sensitivity(pC), qfi_ideal(pC).qcrb)),
        ("exponents_table_vs_operator_algebra", "absolute", 1e-12, lambda: (_exponent_gap(), 0.0)),
    ]


def _full(cutoff):
    from .oracle.fock import evolve_output_state

    specs = []
    for s in "AB":
        for m in (0, 3):
            for g in (0.3, 1.0):
                for tau in (0.3, 0.7):
                    for T in (0.7, 1.0):
                        p = scheme_params(s, m=m, g=g, tau=tau, T=T)
                        specs.append((
                            f"detection_oracle_{s}_m{m}_g{g:g}_tau{tau:g}_T{T:g}", "relative", 1e-6,
                            lambda p=p: (phase_sensitivity(p), oracle_phase_sensitivity(p, cutoff)),
                        ))
    for eta in (0.5, 0.8):
        p = scheme_params("A", m=2, eta=eta)
        specs.append((f"qfi_lossy_oracle_m2_eta{eta:g}", "relative", 1e-5,
                      lambda p=p: (qfi_lossy(p), oracle_qfi_lossy(p, cutoff))))
    # doubling the converged cutoff must not move the oracle
    for p in (scheme_params("A", m=1), scheme_params("B", m=2, g=0.8, phi=0.5)):
        label = f"{p.scheme}_m{p.m}"

        def conv(p=p, fn=None):
            c = evolve_output_state(p, cutoff).cutoff
            return fn(p, 2 * c), fn(p, c)

        specs.append((f"cutoff_doubling_qfi_{label}", "relative", 1e-7,
                      lambda conv=conv: conv(fn=oracle_qfi_ideal)))
        specs.append((f"cutoff_doubling_detection_{label}", "relative", 1e-7,
                      lambda conv=conv: conv(fn=oracle_phase_sensitivity)))
    return specs


def run_checks(level="quick", cutoff=40):
    """Run the suite; returns a list of :class:`Check`."""
    if level not in ("quick", "full"):
        raise ValueError(f"level must be quick or full, got {level!r}")
    specs = _quick(cutoff)
    if level == "full":
        specs += _full(cutoff)
    out = []
    for name, kind, tol, thunk in specs:
        try:
            out.append(_evaluate(name, kind, tol, thunk))
        except Exception as exc:  # noqa: BLE001 - failures are reported
            out.append(Check(name, None, None, tol, False, kind, f"{type(exc).__name__}: {exc}"))
    return out


def report(checks, level, elapsed=None):
    return {
        "level": level,
        "passed": all(c.passed for c in checks),
        "n_checks": len(checks),
        "n_failed": sum(not c.passed for c in checks),
        "elapsed_s": None if elapsed is None else round(elapsed, 3),
        "checks": [asdict(c) for c in checks],
    }


def timed(level="quick", cutoff=40):
    t0 = time.perf_counter()
    checks = run_checks(level, cutoff)
    return report(checks, level, time.perf_counter() - t0)
