"""Generating-function exponents from Gaussian operator algebra.

Every state in this package is a Gaussian unitary applied to a product of
coherent states, and every observable of interest is a derivative of an
ordered product of exponentials of *linear* mode operators::

    < exp(x1 L1) exp(x2 L2) ... exp(xn Ln) >

For such a product the expectation is exactly ``exp(Z)`` with the
quadratic exponent

    Z = sum_i x_i <L_i> + 1/2 sum_i x_i^2 <<L_i L_i>> + sum_{i<j} x_i x_j <<L_i L_j>>,

where ``<<L M>> = <L M> - <L><M>``.  For a coherent input the only
nonzero ordered second cumulant of the input modes is ``<<c_k c_k^dag>> = 1``.

Linear operators are plain lists of ``2n`` scalars: annihilation
coefficients of the ``n`` modes followed by creation coefficients.
Scalars may be complex numbers or :class:`PhaseJet` values.
"""

from __future__ import annotations

import math

from ..series.truncated import TruncatedSeries

__all__ = [
    "annihilator",
    "creator",
    "dagger",
    "combine",
    "heisenberg",
    "two_mode_squeezer",
    "beam_splitter",
    "loss_splitter",
    "phase_shifter",
    "ordered_exponent",
]


def _conj(x):
    return x.conjugate()


def annihilator(n, k):
    v = [0j] * (2 * n)
    v[k] = 1.0 + 0j
    return v


def creator(n, k):
    v = [0j] * (2 * n)
    v[n + k] = 1.0 + 0j
    return v


def dagger(op):
    n = len(op) // 2
    return [_conj(x) for x in op[n:]] + [_conj(x) for x in op[:n]]


def combine(*pairs):
    """Linear combination ``sum c_i * op_i`` of operator vectors."""
    out = None
    for coef, op in pairs:
        term = [coef * x for x in op]
        out = term if out is None else [u + w for u, w in zip(out, term)]
    return out


class _Gate:
    """Heisenberg substitution rule ``c_k -> U^dag c_k U`` for every mode."""

    def __init__(self, n, rows):
        # rows[k] is the operator vector of U^dag c_k U (annihilators only)
        full = [list(r) for r in rows]
        full += [dagger(r) for r in rows]
        self.n = n
        self.rows = full

    def conjugate_op(self, op):
        out = [0j] * (2 * self.n)
        for coef, row in zip(op, self.rows):
            if not coef:
                continue
            out = [o + coef * r for o, r in zip(out, row)]
        return out


def _identity_rows(n):
    return [annihilator(n, k) for k in range(n)]


def two_mode_squeezer(n, i, j, g, theta):
    """``S = exp(conj(xi) c_i c_j - xi c_i^dag c_j^dag)`` with ``xi = g e^{i theta}``."""
    rows = _identity_rows(n)
    ch, sh = math.cosh(g), math.sinh(g)
    e = complex(math.cos(theta), math.sin(theta))
    rows[i] = combine((ch, annihilator(n, i)), (-e * sh, creator(n, j)))
    rows[j] = combine((ch, annihilator(n, j)), (-e * sh, creator(n, i)))
    return _Gate(n, rows)


def beam_splitter(n, i, j, tau):
    """Variable splitter: ``c_i -> sqrt(tau) c_i + i sqrt(1-tau) c_j`` (and symmetric)."""
    rows = _identity_rows(n)
    r, q = math.sqrt(tau), math.sqrt(1.0 - tau)
    rows[i] = combine((r, annihilator(n, i)), (1j * q, annihilator(n, j)))
    rows[j] = combine((1j * q, annihilator(n, i)), (r, annihilator(n, j)))
    return _Gate(n, rows)


def loss_splitter(n, i, env, transmittance):
    """Real splitter coupling mode ``i`` to a vacuum environment mode."""
    rows = _identity_rows(n)
    r, q = math.sqrt(transmittance), math.sqrt(1.0 - transmittance)
    rows[i] = combine((r, annihilator(n, i)), (q, annihilator(n, env)))
    rows[env] = combine((-q, annihilator(n, i)), (r, annihilator(n, env)))
    return _Gate(n, rows)


def phase_shifter(n, i, ephi):
    """``exp(i phi c_i^dag c_i)``; pass ``ephi = e^{i phi}`` (complex or jet)."""
    rows = _identity_rows(n)
    rows[i] = [ephi * x for x in annihilator(n, i)]
    return _Gate(n, rows)


def heisenberg(op, gates):
    """``U^dag op U`` for ``U = gates[-1] ... gates[0]`` (``gates[0]`` acts first)."""
    for gate in reversed(gates):
        op = gate.conjugate_op(op)
    return op


def _mean(op, amplitudes):
    n = len(amplitudes)
    total = 0j
    for k, amp in enumerate(amplitudes):
        total = total + op[k] * amp + op[n + k] * complex(amp).conjugate()
    return total


def _cumulant(left, right):
    n = len(left) // 2
    total = 0j
    for k in range(n):
        total = total + left[k] * right[n + k]
    return total


def ordered_exponent(variables, caps, factors, amplitudes):
    """Exponent ``Z`` of ``<prod_i exp(x_i L_i)>`` in a coherent product state.

    Parameters
    ----------
    variables, caps : registry of the returned series
    factors : list of ``(variable_name, operator_vector)`` in operator order
        (leftmost first), already expressed in the input modes.
    amplitudes : coherent amplitudes of the input modes.
    """
    variables = tuple(variables)
    pos = {v: i for i, v in enumerate(variables)}
    nv = len(variables)
    terms = {}

    def add(idx, coef):
        idx = tuple(idx)
        terms[idx] = terms[idx] + coef if idx in terms else coef

    for i, (xi, li) in enumerate(factors):
        e = [0] * nv
        e[pos[xi]] += 1
        add(e, _mean(li, amplitudes))
        for j in range(i, len(factors)):
            xj, lj = factors[j]
            e2 = list(e)
            e2[pos[xj]] += 1
            c = _cumulant(li, lj)
            add(e2, c * 0.5 if i == j else c)
    return TruncatedSeries(variables, caps, terms)
