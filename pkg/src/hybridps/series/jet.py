"""First-order dual numbers over the complex field.

A :class:`PhaseJet` carries a value together with its derivative with
respect to the interferometer phase.  Arithmetic follows the usual
forward-mode rules, so any expression built from jets yields the exact
phase derivative alongside the value.
"""

from __future__ import annotations

import cmath
import numbers

__all__ = ["PhaseJet", "expi", "value_of", "deriv_of"]


class PhaseJet:
    """``value + deriv * eps`` with ``eps**2 == 0``."""

    __slots__ = ("value", "deriv")

    def __init__(self, value, deriv=0.0):
        self.value = complex(value)
        self.deriv = complex(deriv)

    @staticmethod
    def _lift(other):
        if isinstance(other, PhaseJet):
            return other
        if isinstance(other, numbers.Number):
            return PhaseJet(other, 0.0)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return PhaseJet(self.value + other.value, self.deriv + other.deriv)

    __radd__ = __add__

    def __neg__(self):
        return PhaseJet(-self.value, -self.deriv)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return PhaseJet(self.value - other.value, self.deriv - other.deriv)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, PhaseJet):
            return PhaseJet(
                self.value * other.value,
                self.value * other.deriv + self.deriv * other.value,
            )
        if isinstance(other, numbers.Number):
            return PhaseJet(self.value * other, self.deriv * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PhaseJet):
            inv = 1.0 / other.value
            return PhaseJet(
                self.value * inv,
                (self.deriv * other.value - self.value * other.deriv) * inv * inv,
            )
        if isinstance(other, numbers.Number):
            return PhaseJet(self.value / other, self.deriv / other)
        return NotImplemented

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, exponent):
        if not isinstance(exponent, numbers.Real):
            return NotImplemented
        if exponent == 0:
            return PhaseJet(1.0, 0.0)
        v = self.value**exponent
        return PhaseJet(v, exponent * self.value ** (exponent - 1) * self.deriv)

    def conjugate(self):
        # phi is real, so conjugation commutes with d/dphi
        return PhaseJet(self.value.conjugate(), self.deriv.conjugate())

    def exp(self):
        e = cmath.exp(self.value)
        return PhaseJet(e, e * self.deriv)

    @property
    def real(self):
        return PhaseJet(self.value.real, self.deriv.real)

    @property
    def imag(self):
        return PhaseJet(self.value.imag, self.deriv.imag)

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.value == other.value and self.deriv == other.deriv

    def __hash__(self):
        return hash((self.value, self.deriv))

    def __bool__(self):
        return self.value != 0 or self.deriv != 0

    def __repr__(self):
        return f"PhaseJet({self.value!r}, {self.deriv!r})"


def expi(phi, jet=False):
    """``exp(i*phi)``, optionally as a jet seeded with d/dphi."""
    e = cmath.exp(1j * phi)
    if jet:
        return PhaseJet(e, 1j * e)
    return e


def value_of(x):
    return x.value if isinstance(x, PhaseJet) else complex(x)


def deriv_of(x):
    return x.deriv if isinstance(x, PhaseJet) else 0j
