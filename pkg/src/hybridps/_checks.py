from .errors import ConsistencyError

IMAG_TOL = 1e-8


def as_real(z, what, tol=IMAG_TOL):
    """Return ``z.real``; raise if the imaginary residue is not negligible."""
    z = complex(z)
    if abs(z.imag) > tol * max(1.0, abs(z.real)):
        raise ConsistencyError(f"{what}: imaginary residue {z.imag:.3e} on a real quantity")
    return z.real
