"""Bracketed one-dimensional minimization."""

import math
import warnings

__all__ = ["golden_section", "grid_golden_minimize"]

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section(f, a, b, tol=1e-10, max_iter=200):
    """Minimize a unimodal ``f`` on ``[a, b]``; returns ``(x, f(x))``."""
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if abs(b - a) <= tol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def grid_golden_minimize(f, lo, hi, n_grid=31, tol=1e-10, max_widen=6, warn=False):
    """Coarse grid on ``[lo, hi]`` then golden-section refinement.

    If the grid minimum sits on a window edge the window is doubled
    around its center, up to ``max_widen`` times (warning if ``warn``).
    """
    for attempt in range(max_widen + 1):
        xs = [lo + (hi - lo) * k / (n_grid - 1) for k in range(n_grid)]
        fs = [f(x) for x in xs]
        k = min(range(n_grid), key=fs.__getitem__)
        flat = max(fs) - fs[k] <= 1e-14 * max(1.0, abs(fs[k]))
        if flat or 0 < k < n_grid - 1 or attempt == max_widen:
            break
        if warn:
            warnings.warn(f"minimum on window edge [{lo}, {hi}]; widening", RuntimeWarning, stacklevel=2)
        half = hi - lo
        lo, hi = lo - half / 2, hi + half / 2
    a = xs[max(k - 1, 0)]
    b = xs[min(k + 1, n_grid - 1)]
    return golden_section(f, a, b, tol=tol)
