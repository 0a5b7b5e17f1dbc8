# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels; same contract as ``_pykernels``."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def digit_table(long p, long M):
    cdef long n = p ** M
    cdef long i, j, q, shift = p - 1
    out = np.empty((M, n), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] t = out
    for j in range(n):
        q = j
        for i in range(M):
            t[i, j] = 2 * (q % p) - shift
            q //= p
    return out


def cyclic_chain_sums(const cnp.int64_t[:, ::1] t):
    cdef Py_ssize_t M = t.shape[0], n = t.shape[1]
    cdef Py_ssize_t m, j
    cdef cnp.int64_t b, f
    bond = np.empty(n, dtype=np.int64)
    field = np.empty(n, dtype=np.int64)
    cdef cnp.int64_t[::1] bv = bond
    cdef cnp.int64_t[::1] fv = field
    for j in range(n):
        b = 0
        f = 0
        for m in range(M - 1):
            b += t[m, j] * t[m + 1, j]
            f += t[m, j]
        b += t[M - 1, j] * t[0, j]
        f += t[M - 1, j]
        bv[j] = b
        fv[j] = f
    return bond, field


def compose_doubled(const cnp.int64_t[:, ::1] t, long p):
    cdef Py_ssize_t M = t.shape[0], n = t.shape[1]
    cdef Py_ssize_t i, j
    cdef cnp.int64_t acc, w
    out = np.empty(n, dtype=np.int64)
    cdef cnp.int64_t[::1] o = out
    for j in range(n):
        acc = 0
        w = 1
        for i in range(M):
            acc += w * t[i, j]
            w *= p
        o[j] = acc
    return out
