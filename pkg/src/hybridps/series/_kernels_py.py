"""Pure numpy implementation of the dense truncated-product kernel.

Used when the compiled extension is unavailable.  Layout: a series over
``n`` variables with degree caps ``c`` is a flat C-ordered array of shape
``tuple(c + 1)``; ``digits[k]`` is the multi-index of flat position ``k``.
Because the layout is mixed-radix, the flat index of a product monomial
is the sum of the factors' flat indices whenever no digit overflows.
"""

import numpy as np


def trunc_mul(a, b, digits, caps):
    out = np.zeros_like(a)
    nz_a = np.flatnonzero(a)
    nz_b = np.flatnonzero(b)
    if nz_a.size == 0 or nz_b.size == 0:
        return out
    db = digits[nz_b]
    bv = b[nz_b]
    room = caps[None, :] - digits[nz_a]
    for k, ia in enumerate(nz_a):
        ok = np.all(db <= room[k], axis=1)
        if ok.any():
            np.add.at(out, ia + nz_b[ok], a[ia] * bv[ok])
    return out
