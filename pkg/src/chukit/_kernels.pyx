# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled adjointness kernels; same contract as _kernels_py."""

import numpy as np
from libc.stdint cimport int64_t


def allowed_matrix(const int64_t[:, ::1] lhs, const int64_t[:, ::1] g,
                   const int64_t[:, ::1] fwd):
    cdef Py_ssize_t A = lhs.shape[0], B = lhs.shape[1]
    cdef Py_ssize_t K = fwd.shape[0], D = g.shape[1]
    cdef Py_ssize_t k, d, b, a
    cdef bint ok
    out = np.zeros((K, D, B), dtype=np.uint8)
    cdef unsigned char[:, :, ::1] o = out
    with nogil:
        for k in range(K):
            for d in range(D):
                for b in range(B):
                    ok = True
                    for a in range(A):
                        if lhs[a, b] != g[fwd[k, a], d]:
                            ok = False
                            break
                    if ok:
                        o[k, d, b] = 1
    return out.view(np.bool_)


def first_violation(const int64_t[:, ::1] lhs, const int64_t[:, ::1] g,
                    const int64_t[::1] fwd, const int64_t[::1] bwd):
    cdef Py_ssize_t A = fwd.shape[0], D = bwd.shape[0]
    cdef Py_ssize_t a, d
    for a in range(A):
        for d in range(D):
            if lhs[a, bwd[d]] != g[fwd[a], d]:
                return (a, d)
    return None
