"""Builders for the four generating-function exponents.

Each exponent ``Z`` is a quadratic polynomial in a small set of formal
variables such that mixed derivatives of ``exp(Z)`` at the origin give the
(unnormalized) expectation values each physics module needs:

========  ==========================  =====================================
exponent  variables                   generated expectation
========  ==========================  =====================================
Z0        s, t                        ``<a_out^dag^k a_out^l>`` at the detector
Z1        s, t, c, d, p, h            ideal-QFI overlaps of the subtracted probe
Z2        s, t, x, y                  lossy-QFI blocks ``<O^dag a^dag^k a^l O>``
Z3        s, t, l1, l2, l3, l4        internal photon number ``<n_a>``, ``<n_b>``
========  ==========================  =====================================

Two construction routes exist.  ``mode="canonical"`` is the production
path; ``mode="reference"`` transcribes the printed closed forms as-is and
is kept for comparison (see :mod:`hybridps.model.typo_ledger`).  The
functions ``derive_*`` rebuild every exponent from operator algebra
(:mod:`hybridps.model.gaussian`) and serve as the arbiter in tests.
"""

from __future__ import annotations

import math

from ..errors import UsageError
from ..series.jet import expi
from ..series.truncated import TruncatedSeries
from . import gaussian as ga
from .coefficients import (
    coeffs_detection,
    coeffs_photon_number,
    coeffs_qfi_ideal,
    coeffs_qfi_lossy,
)

__all__ = [
    "Z0_VARS",
    "Z1_VARS",
    "Z2_VARS",
    "Z3_VARS",
    "build_Z0",
    "build_Z1",
    "build_Z2",
    "build_Z3",
    "derive_Z0",
    "derive_Z1",
    "derive_Z2",
    "derive_Z3",
]

Z0_VARS = ("s", "t")
Z1_VARS = ("s", "t", "c", "d", "p", "h")
Z2_VARS = ("s", "t", "x", "y")
Z3_VARS = ("s", "t", "l1", "l2", "l3", "l4")

_MODES = ("canonical", "reference")


def _check_mode(mode):
    if mode not in _MODES:
        raise UsageError(f"mode must be one of {_MODES}, got {mode!r}")


class _Poly:
    """Tiny accumulator for quadratic exponents keyed by variable names."""

    def __init__(self, variables, caps):
        self.variables = variables
        self.caps = caps
        self.terms = {}

    def add(self, coef, *names):
        idx = [0] * len(self.variables)
        for name in names:
            idx[self.variables.index(name)] += 1
        idx = tuple(idx)
        self.terms[idx] = self.terms[idx] + coef if idx in self.terms else coef

    def series(self):
        return TruncatedSeries(self.variables, self.caps, self.terms)


def _add_Z0(poly, X, alpha, beta):
    poly.add(X.X1, "s", "s")
    poly.add(X.X1.conjugate(), "t", "t")
    poly.add(alpha * X.X2, "s")
    poly.add(alpha * X.X2.conjugate(), "t")
    poly.add(beta * X.X3, "s")
    poly.add(beta * X.X3.conjugate(), "t")
    poly.add(X.X4, "s", "t")


def default_caps(name, m):
    if name == "Z0":
        return (m + 2, m + 2)
    if name in ("Z1", "Z3"):
        return (m, m, 1, 1, 1, 1)
    if name == "Z2":
        k = max(m, 1)
        return (k, k, 2, 2)
    raise UsageError(f"unknown exponent {name!r}")


# -- production builders ------------------------------------------------


def build_Z0(p, loss="T", caps=None, jet=False):
    """Detection exponent over ``(s, t)``; ``s`` pairs with ``a``, ``t`` with ``a^dag``."""
    if loss not in ("T", "eta"):
        raise UsageError("loss must be 'T' or 'eta'")
    caps = tuple(caps) if caps is not None else default_caps("Z0", p.m)
    poly = _Poly(Z0_VARS, caps)
    _add_Z0(poly, coeffs_detection(p, loss=loss, jet=jet), p.alpha, p.beta)
    return poly.series()


def build_Z1(p, mode="canonical", caps=None, jet=False):
    """Ideal-QFI exponent over ``(s, t, c, d, p, h)``.

    Canonical ordering of the generating product (leftmost first)::

        exp(c a^dag) exp(d a) exp(t A^dag) exp(s A) exp(p a^dag) exp(h a)

    evaluated in ``U_phi S_g |alpha, beta>`` with ``A = sqrt(tau) a + i sqrt(1-tau) b``.
    Derivatives of order one in ``(c, d)`` / ``(p, h)`` insert ``n_a`` to
    the left / right of ``A^dag^m A^m``.
    """
    _check_mode(mode)
    caps = tuple(caps) if caps is not None else default_caps("Z1", p.m)
    if mode == "canonical":
        return derive_Z1(p, caps=caps, jet=jet)
    y = coeffs_qfi_ideal(p, jet=jet)
    poly = _Poly(Z1_VARS, caps)
    X = coeffs_detection(p.replace(T=1.0), jet=jet)
    # the embedded detection block is printed with st*(1-tau)*sinh^2 g; the
    # remaining tau*sinh^2 g arrives through the t*s*y6*conj(y6) term below
    X = type(X)(X.X1, X.X2, X.X3, complex((1.0 - p.tau) * math.sinh(p.g) ** 2))
    _add_Z0(poly, X, p.alpha, p.beta)
    c = lambda z: z.conjugate()  # noqa: E731
    poly.add(y.y1 * c(y.y3), "p", "s")
    poly.add(y.y1 * y.y4, "t", "p")
    poly.add(c(y.y1) * y.y1, "d", "p")
    poly.add(c(y.y1) * y.y3, "d", "t")
    poly.add(c(y.y1) * c(y.y4), "d", "s")
    poly.add(c(y.y2) * y.y2, "h", "p")
    poly.add(c(y.y2) * c(y.y5), "h", "s")
    poly.add(y.y6 * c(y.y2), "t", "h")
    poly.add(y.y6 * c(y.y6), "t", "s")
    poly.add(y.y2 * c(y.y2), "c", "d")
    poly.add(y.y2 * c(y.y2), "c", "h")
    poly.add(y.y2 * y.y5, "c", "t")
    poly.add(y.y2 * c(y.y6), "c", "s")
    for name, coef in (("c", y.y1), ("p", y.y1), ("d", c(y.y1)), ("h", c(y.y1))):
        poly.add(coef * p.alpha, name)
    for name, coef in (("c", y.y2), ("p", y.y2), ("d", c(y.y2)), ("h", c(y.y2))):
        poly.add(coef * p.beta, name)
    return poly.series()


def build_Z2(p, mode="canonical", caps=None, jet=False):
    """Lossy-QFI exponent over ``(s, t, x, y)``.

    Generating product ``exp(t O1^dag) exp(x a^dag) exp(y a) exp(s O1)`` in
    ``S_g |alpha, beta>``, where ``O1 = sqrt(tau eta) e^{i phi} a + i sqrt(1-tau) b``
    is the single-photon factor of the subtraction operator moved ahead of
    the loss.  Both modes build the same polynomial: the printed form wraps
    the exponent in a spurious ``exp``, and the reference mode reads it as
    the exponent itself.
    """
    _check_mode(mode)
    caps = tuple(caps) if caps is not None else default_caps("Z2", p.m)
    X = coeffs_qfi_lossy(p, jet=jet)
    sh, ch, eth = math.sinh(p.g), math.cosh(p.g), expi(p.theta)
    poly = _Poly(Z2_VARS, caps)
    _add_Z0(poly, X, p.alpha, p.beta)
    poly.add(X.X5, "s", "x")
    poly.add(X.X5.conjugate(), "t", "y")
    poly.add(X.X6, "s", "y")
    poly.add(X.X6.conjugate(), "t", "x")
    poly.add(sh * sh, "x", "y")
    poly.add(p.alpha * ch, "x")
    poly.add(p.alpha * ch, "y")
    poly.add(-p.beta * eth * sh, "y")
    poly.add(-p.beta * eth.conjugate() * sh, "x")
    return poly.series()


def build_Z3(p, mode="canonical", caps=None, jet=False):
    """Photon-number exponent over ``(s, t, l1, l2, l3, l4)``.

    ``l1, l2`` generate ``a^dag, a`` and ``l3, l4`` generate ``b^dag, b``,
    placed between ``exp(t A^dag)`` and ``exp(s A)`` in
    ``U_phi B_T S_g |alpha, beta, 0>``.  The canonical mode evaluates the
    embedded detection block with the loss transmittance ``T`` and uses the
    derived ``f11 = cosh g``; the reference mode keeps the printed ``eta``.
    """
    _check_mode(mode)
    caps = tuple(caps) if caps is not None else default_caps("Z3", p.m)
    f = coeffs_photon_number(p, jet=jet)
    c = lambda z: z.conjugate()  # noqa: E731
    poly = _Poly(Z3_VARS, caps)
    loss = "T" if mode == "canonical" else "eta"
    _add_Z0(poly, coeffs_detection(p, loss=loss, jet=jet), p.alpha, p.beta)
    for name, coef in (("l1", f.f1), ("l2", f.f2), ("l3", f.f3), ("l4", f.f4)):
        poly.add(coef, "s", name)
    for name, coef in (("l2", c(f.f1)), ("l1", c(f.f2)), ("l4", c(f.f3)), ("l3", c(f.f4))):
        poly.add(coef, "t", name)
    poly.add(f.f5, "l1", "l2")
    poly.add(f.f6, "l2", "l4")
    poly.add(c(f.f6), "l1", "l3")
    poly.add(f.f7, "l3", "l4")
    for name, coef in (("l1", c(f.f8)), ("l2", f.f8), ("l3", c(f.f9)), ("l4", f.f9)):
        poly.add(coef * p.alpha, name)
    for name, coef in (("l1", c(f.f10)), ("l2", f.f10), ("l3", f.f11), ("l4", f.f11)):
        poly.add(coef * p.beta, name)
    return poly.series()


# -- first-principles derivations ----------------------------------------


def _opa(n, p):
    return ga.two_mode_squeezer(n, 0, 1, p.g, p.theta)


def _factors(pairs, gates):
    return [(name, ga.heisenberg(op, gates)) for name, op in pairs]


def derive_Z0(p, loss="T", caps=None, jet=False):
    caps = tuple(caps) if caps is not None else default_caps("Z0", p.m)
    L = p.T if loss == "T" else p.eta
    n = 3
    gates = [
        _opa(n, p),
        ga.loss_splitter(n, 0, 2, L),
        ga.phase_shifter(n, 0, expi(p.phi, jet)),
        ga.beam_splitter(n, 0, 1, p.tau),
    ]
    a = ga.annihilator(n, 0)
    return ga.ordered_exponent(
        Z0_VARS, caps, _factors([("t", ga.dagger(a)), ("s", a)], gates), (p.alpha, p.beta, 0.0)
    )


def _subtraction_factor(n, tau, phase=1.0):
    return ga.combine(
        (phase * math.sqrt(tau), ga.annihilator(n, 0)),
        (1j * math.sqrt(1.0 - tau), ga.annihilator(n, 1)),
    )


def derive_Z1(p, caps=None, jet=False):
    caps = tuple(caps) if caps is not None else default_caps("Z1", p.m)
    n = 2
    gates = [_opa(n, p), ga.phase_shifter(n, 0, expi(p.phi, jet))]
    a = ga.annihilator(n, 0)
    A = _subtraction_factor(n, p.tau)
    pairs = [
        ("c", ga.dagger(a)),
        ("d", a),
        ("t", ga.dagger(A)),
        ("s", A),
        ("p", ga.dagger(a)),
        ("h", a),
    ]
    return ga.ordered_exponent(Z1_VARS, caps, _factors(pairs, gates), (p.alpha, p.beta))


def derive_Z2(p, caps=None, jet=False):
    caps = tuple(caps) if caps is not None else default_caps("Z2", p.m)
    n = 2
    gates = [_opa(n, p)]
    a = ga.annihilator(n, 0)
    O1 = ga.combine(
        (expi(p.phi, jet) * math.sqrt(p.tau * p.eta), a),
        (1j * math.sqrt(1.0 - p.tau), ga.annihilator(n, 1)),
    )
    pairs = [("t", ga.dagger(O1)), ("x", ga.dagger(a)), ("y", a), ("s", O1)]
    return ga.ordered_exponent(Z2_VARS, caps, _factors(pairs, gates), (p.alpha, p.beta))


def derive_Z3(p, caps=None, jet=False):
    caps = tuple(caps) if caps is not None else default_caps("Z3", p.m)
    n = 3
    gates = [
        _opa(n, p),
        ga.loss_splitter(n, 0, 2, p.T),
        ga.phase_shifter(n, 0, expi(p.phi, jet)),
    ]
    a = ga.annihilator(n, 0)
    b = ga.annihilator(n, 1)
    A = _subtraction_factor(n, p.tau)
    pairs = [
        ("t", ga.dagger(A)),
        ("l1", ga.dagger(a)),
        ("l2", a),
        ("l3", ga.dagger(b)),
        ("l4", b),
        ("s", A),
    ]
    return ga.ordered_exponent(Z3_VARS, caps, _factors(pairs, gates), (p.alpha, p.beta, 0.0))
