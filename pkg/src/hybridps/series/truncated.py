"""Sparse multivariate truncated power series.

A :class:`TruncatedSeries` is a polynomial in up to eight formal
variables where every monomial whose degree in some variable exceeds
that variable's cap is discarded.  Coefficients are complex numbers or
:class:`~hybridps.series.jet.PhaseJet` values.  The main use is turning a
quadratic exponent ``Z`` into ``exp(Z)`` and reading off factorial-scaled
Taylor coefficients, i.e. mixed partial derivatives of ``exp(Z)`` at the
origin.
"""

from __future__ import annotations

import functools
import math
import numbers

import numpy as np

from ..errors import SeriesPreconditionError, UsageError
from .jet import PhaseJet
from .kernels import trunc_mul

__all__ = [
    "MAX_VARIABLES",
    "TruncatedSeries",
    "series_mul",
    "series_exp",
    "taylor_derivative",
    "extract_derivative",
    "extract_from_prefactored",
]

MAX_VARIABLES = 8


@functools.lru_cache(maxsize=64)
def _layout(caps):
    shape = tuple(c + 1 for c in caps)
    digits = np.array(list(np.ndindex(*shape)), dtype=np.intp).reshape(-1, len(caps))
    return shape, np.ascontiguousarray(digits), np.array(caps, dtype=np.intp)


def _is_zero(c):
    return not c


class TruncatedSeries:
    """Immutable truncated series.

    Parameters
    ----------
    variables : sequence of str
        Variable registry; position ``i`` names the ``i``-th exponent of
        every multi-index.  Two series combine only if registries and caps
        agree.
    caps : sequence of int
        Maximum retained degree per variable.
    terms : mapping, optional
        Multi-index -> coefficient.  Zero coefficients and monomials beyond
        the caps are dropped.
    """

    __slots__ = ("variables", "caps", "terms")

    def __init__(self, variables, caps, terms=None):
        variables = tuple(variables)
        caps = tuple(int(c) for c in caps)
        if len(variables) != len(caps):
            raise UsageError("one cap per variable required")
        if len(variables) > MAX_VARIABLES:
            raise UsageError(f"at most {MAX_VARIABLES} variables per series")
        if len(set(variables)) != len(variables):
            raise UsageError("duplicate variable names")
        if any(c < 0 for c in caps):
            raise UsageError("caps must be nonnegative")
        clean = {}
        for idx, coef in (terms or {}).items():
            idx = tuple(int(k) for k in idx)
            if len(idx) != len(caps):
                raise UsageError(f"multi-index {idx} has wrong length")
            if any(k < 0 for k in idx):
                raise UsageError(f"negative degree in {idx}")
            if any(k > c for k, c in zip(idx, caps)):
                continue
            if not isinstance(coef, PhaseJet):
                coef = complex(coef)
            if _is_zero(coef):
                continue
            clean[idx] = coef
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "caps", caps)
        object.__setattr__(self, "terms", {k: clean[k] for k in sorted(clean)})

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, variables, caps):
        return cls(variables, caps)

    @classmethod
    def one(cls, variables, caps):
        return cls(variables, caps, {(0,) * len(caps): 1.0})

    @classmethod
    def monomial(cls, variables, caps, index, coef=1.0):
        if isinstance(index, dict):
            variables = tuple(variables)
            index = tuple(index.get(v, 0) for v in variables)
        return cls(variables, caps, {tuple(index): coef})

    @classmethod
    def from_dense(cls, variables, caps, value, deriv=None):
        shape, digits, _ = _layout(tuple(caps))
        terms = {}
        nz = np.flatnonzero(value) if deriv is None else np.flatnonzero((value != 0) | (deriv != 0))
        for k in nz:
            idx = tuple(int(d) for d in digits[k])
            if deriv is None:
                terms[idx] = complex(value[k])
            else:
                terms[idx] = PhaseJet(value[k], deriv[k])
        return cls(variables, caps, terms)

    # -- inspection ---------------------------------------------------

    @property
    def nvars(self):
        return len(self.caps)

    @property
    def is_jet(self):
        return any(isinstance(c, PhaseJet) for c in self.terms.values())

    def coefficient(self, index):
        if isinstance(index, dict):
            index = tuple(index.get(v, 0) for v in self.variables)
        zero = PhaseJet(0.0) if self.is_jet else 0j
        return self.terms.get(tuple(index), zero)

    @property
    def constant_term(self):
        return self.coefficient((0,) * self.nvars)

    def is_zero(self):
        return not self.terms

    def to_dense(self):
        """Return ``(value, deriv)`` flat arrays; ``deriv`` is None for plain series."""
        shape, _, _ = _layout(self.caps)
        size = math.prod(shape)
        value = np.zeros(size, dtype=np.complex128)
        deriv = np.zeros(size, dtype=np.complex128) if self.is_jet else None
        for idx, c in self.terms.items():
            k = np.ravel_multi_index(idx, shape)
            if isinstance(c, PhaseJet):
                value[k] = c.value
                deriv[k] = c.deriv
            else:
                value[k] = c
        return value, deriv

    def values(self):
        """The plain-complex series of jet values (identity on plain series)."""
        return TruncatedSeries(
            self.variables,
            self.caps,
            {k: (c.value if isinstance(c, PhaseJet) else c) for k, c in self.terms.items()},
        )

    def conjugate(self):
        return TruncatedSeries(self.variables, self.caps, {k: c.conjugate() for k, c in self.terms.items()})

    def permuted(self, order):
        """Reorder variables; ``order[i]`` is the old position of new variable ``i``."""
        order = tuple(order)
        return TruncatedSeries(
            tuple(self.variables[i] for i in order),
            tuple(self.caps[i] for i in order),
            {tuple(k[i] for i in order): c for k, c in self.terms.items()},
        )

    def _check_compatible(self, other):
        if self.variables != other.variables or self.caps != other.caps:
            raise UsageError(
                f"incompatible series: {self.variables}/{self.caps} vs {other.variables}/{other.caps}"
            )

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, numbers.Number) or isinstance(other, PhaseJet):
            other = TruncatedSeries.one(self.variables, self.caps) * other
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check_compatible(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms[k] + c if k in terms else c
        return TruncatedSeries(self.variables, self.caps, terms)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.variables, self.caps, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        if isinstance(other, numbers.Number) or isinstance(other, PhaseJet):
            return TruncatedSeries(self.variables, self.caps, {k: c * other for k, c in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.variables == other.variables and self.caps == other.caps and self.terms == other.terms

    __hash__ = None

    def __repr__(self):
        body = " + ".join(
            f"({c})*" + "*".join(f"{v}^{k}" for v, k in zip(self.variables, idx) if k) if any(idx) else f"({c})"
            for idx, c in self.terms.items()
        )
        return f"TruncatedSeries[{','.join(self.variables)}; caps={self.caps}]({body or '0'})"


def series_mul(a, b):
    """Truncated product of two series over the same registry."""
    a._check_compatible(b)
    _, digits, caps = _layout(a.caps)
    av, ad = a.to_dense()
    bv, bd = b.to_dense()
    value = trunc_mul(av, bv, digits, caps)
    if ad is None and bd is None:
        return TruncatedSeries.from_dense(a.variables, a.caps, value)
    deriv = np.zeros_like(value)
    if bd is not None:
        deriv += trunc_mul(av, bd, digits, caps)
    if ad is not None:
        deriv += trunc_mul(ad, bv, digits, caps)
    return TruncatedSeries.from_dense(a.variables, a.caps, value, deriv)


def _exp_dense(z, digits, caps):
    out = np.zeros_like(z)
    out[0] = 1.0
    term = out.copy()
    for n in range(1, int(caps.sum()) + 1):
        term = trunc_mul(term, z, digits, caps) / n
        if not term.any():
            break
        out += term
    return out


def series_exp(z):
    """``exp(z)`` truncated to the caps; ``z`` must have no constant term.

    For jet coefficients the derivative part is ``exp(z) * z'``, which is
    exact because the series ring is commutative.
    """
    if z.constant_term:
        raise SeriesPreconditionError("exp requires a series with zero constant term")
    _, digits, caps = _layout(z.caps)
    zv, zd = z.to_dense()
    value = _exp_dense(zv, digits, caps)
    if zd is None:
        return TruncatedSeries.from_dense(z.variables, z.caps, value)
    deriv = trunc_mul(value, zd, digits, caps)
    return TruncatedSeries.from_dense(z.variables, z.caps, value, deriv)


def _orders_tuple(series, orders):
    if isinstance(orders, dict):
        unknown = set(orders) - set(series.variables)
        if unknown:
            raise UsageError(f"unknown variables {sorted(unknown)}")
        orders = tuple(orders.get(v, 0) for v in series.variables)
    orders = tuple(int(k) for k in orders)
    if len(orders) != series.nvars:
        raise UsageError("orders length must match variable count")
    if any(k < 0 for k in orders):
        raise UsageError("orders must be nonnegative")
    if any(k > c for k, c in zip(orders, series.caps)):
        raise UsageError(f"orders {orders} exceed caps {series.caps}")
    return orders


def _factorial_weight(orders):
    w = 1.0
    for k in orders:
        w *= math.factorial(k)
    return w


def taylor_derivative(expz, orders):
    """Mixed partial derivative at the origin of an already-exponentiated series."""
    orders = _orders_tuple(expz, orders)
    return expz.coefficient(orders) * _factorial_weight(orders)


def extract_derivative(z, orders):
    """``d^|k| exp(z) / dv1^k1 ... dvn^kn`` at the origin."""
    orders = _orders_tuple(z, orders)
    return taylor_derivative(series_exp(z), orders)


def extract_from_prefactored(prefactor, z, orders, expz=None):
    """Mixed partial derivative at the origin of ``prefactor * exp(z)``.

    ``expz`` may be passed to reuse an exponential computed elsewhere.
    """
    prefactor._check_compatible(z)
    orders = _orders_tuple(z, orders)
    if expz is None:
        expz = series_exp(z)
    total = 0j
    for idx, c in prefactor.terms.items():
        rest = tuple(k - e for k, e in zip(orders, idx))
        if min(rest) < 0:
            continue
        total = total + c * expz.coefficient(rest)
    return total * _factorial_weight(orders)
