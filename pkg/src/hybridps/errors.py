"""Exception hierarchy shared by every layer of the package."""


class HybridPSError(Exception):
    """Base class for all package errors."""


class UsageError(HybridPSError, ValueError):
    """Malformed arguments: bad parameter ranges, mismatched series registries."""


class SeriesPreconditionError(HybridPSError, ValueError):
    """A series operation was called outside its domain (e.g. exp of a series with a constant term)."""


class AnnihilatedStateError(HybridPSError, ArithmeticError):
    """Photon subtraction maps the state to zero, so it cannot be normalized."""

    def __init__(self, message="subtraction annihilates state"):
        super().__init__(message)


class ConsistencyError(HybridPSError, RuntimeError):
    """An internal cross-check failed (imaginary residue, negative QFI, minimizer mismatch)."""


class CutoffError(HybridPSError, RuntimeError):
    """The Fock-space truncation is too small for the requested state."""
