# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled dense truncated-product kernel (same contract as _kernels_py)."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def trunc_mul(const double complex[::1] a, const double complex[::1] b,
              const cnp.intp_t[:, ::1] digits, const cnp.intp_t[::1] caps):
    cdef Py_ssize_t size = a.shape[0]
    cdef Py_ssize_t nvar = digits.shape[1]
    cdef Py_ssize_t i, j, v, na = 0, nb = 0, ia, ib
    cdef bint ok
    cdef double complex av
    out_arr = np.zeros(size, dtype=np.complex128)
    cdef double complex[::1] out = out_arr
    cdef cnp.intp_t[::1] ka = np.empty(size, dtype=np.intp)
    cdef cnp.intp_t[::1] kb = np.empty(size, dtype=np.intp)
    for i in range(size):
        if a[i] != 0:
            ka[na] = i
            na += 1
        if b[i] != 0:
            kb[nb] = i
            nb += 1
    for i in range(na):
        ia = ka[i]
        av = a[ia]
        for j in range(nb):
            ib = kb[j]
            ok = True
            for v in range(nvar):
                if digits[ia, v] + digits[ib, v] > caps[v]:
                    ok = False
                    break
            if ok:
                out[ia + ib] += av * b[ib]
    return out_arr
