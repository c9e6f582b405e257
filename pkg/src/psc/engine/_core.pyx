# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled tableau kernels; same contract as ``_core_py``."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, uint8_t, int64_t

cnp.import_array()

BACKEND = "cython"

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline int _par(const uint64_t[:] a, const uint64_t[:] b) noexcept nogil:
    cdef Py_ssize_t k
    cdef int c = 0
    for k in range(a.shape[0]):
        c += __builtin_popcountll(a[k] & b[k])
    return c & 1


def anticommuting(uint64_t[:, ::1] X, uint64_t[:, ::1] Z, const uint64_t[::1] qx, const uint64_t[::1] qz):
    cdef Py_ssize_t rows = X.shape[0], W = X.shape[1], r, k
    cdef int c
    out = np.zeros(rows, dtype=bool)
    cdef cnp.npy_bool[::1] o = out
    with nogil:
        for r in range(rows):
            c = 0
            for k in range(W):
                c += __builtin_popcountll((X[r, k] & qz[k]) ^ (Z[r, k] & qx[k]))
            o[r] = c & 1
    return out


def left_multiply(uint64_t[:, ::1] X, uint64_t[:, ::1] Z, uint8_t[::1] E, mask,
                  const uint64_t[::1] qx, const uint64_t[::1] qz, int qe):
    cdef cnp.npy_bool[::1] m = np.ascontiguousarray(mask, dtype=bool)
    cdef Py_ssize_t rows = X.shape[0], W = X.shape[1], r, k
    cdef int c
    with nogil:
        for r in range(rows):
            if not m[r]:
                continue
            c = 0
            for k in range(W):
                c += __builtin_popcountll(X[r, k] & qz[k])
                X[r, k] ^= qx[k]
                Z[r, k] ^= qz[k]
            E[r] = <uint8_t>((E[r] + qe + 2 * (c & 1)) & 3)


cdef inline void _rmul(uint64_t[:, ::1] X, uint64_t[:, ::1] Z, uint8_t[::1] E,
                       Py_ssize_t d, Py_ssize_t s) noexcept nogil:
    cdef Py_ssize_t k, W = X.shape[1]
    cdef int c = 0
    for k in range(W):
        c += __builtin_popcountll(Z[d, k] & X[s, k])
        X[d, k] ^= X[s, k]
        Z[d, k] ^= Z[s, k]
    E[d] = <uint8_t>((E[d] + E[s] + 2 * (c & 1)) & 3)


def right_multiply(uint64_t[:, ::1] X, uint64_t[:, ::1] Z, uint8_t[::1] E, dst, Py_ssize_t src):
    cdef int64_t[::1] d = np.ascontiguousarray(np.atleast_1d(dst), dtype=np.int64)
    cdef Py_ssize_t i
    with nogil:
        for i in range(d.shape[0]):
            _rmul(X, Z, E, d[i], src)


cdef inline void _swap(uint64_t[:, ::1] X, uint64_t[:, ::1] Z, uint8_t[::1] E,
                       Py_ssize_t a, Py_ssize_t b) noexcept nogil:
    cdef Py_ssize_t k
    cdef uint64_t t
    cdef uint8_t e
    for k in range(X.shape[1]):
        t = X[a, k]; X[a, k] = X[b, k]; X[b, k] = t
        t = Z[a, k]; Z[a, k] = Z[b, k]; Z[b, k] = t
    e = E[a]; E[a] = E[b]; E[b] = e


def rref(uint64_t[:, ::1] X, uint64_t[:, ::1] Z, uint8_t[::1] E, int n):
    cdef Py_ssize_t rows = X.shape[0], r = 0, i, p, w
    cdef int col, q
    cdef uint64_t b
    piv = np.full(rows, -1, dtype=np.int64)
    cdef int64_t[::1] pv = piv
    cdef uint64_t[:, ::1] plane
    for col in range(2 * n):
        if r == rows:
            break
        plane = X if col < n else Z
        q = col if col < n else col - n
        w = q >> 6
        b = (<uint64_t>1) << (q & 63)
        with nogil:
            p = -1
            for i in range(r, rows):
                if plane[i, w] & b:
                    p = i
                    break
            if p >= 0:
                if p != r:
                    _swap(X, Z, E, r, p)
                for i in range(rows):
                    if i != r and (plane[i, w] & b):
                        _rmul(X, Z, E, i, r)
                pv[r] = col
                r += 1
    return piv


def reduce(uint64_t[:, ::1] X, uint64_t[:, ::1] Z, uint8_t[::1] E, const int64_t[::1] piv, int n,
           const uint64_t[::1] qx, const uint64_t[::1] qz):
    cdef Py_ssize_t rows = X.shape[0], W = X.shape[1], r, k
    cdef int col, q, c, e = 0
    cdef bint hit, same = True
    ax = np.zeros(W, dtype=np.uint64)
    az = np.zeros(W, dtype=np.uint64)
    cdef uint64_t[::1] accx = ax, accz = az
    with nogil:
        for r in range(rows):
            col = piv[r]
            if col < 0:
                continue
            if col < n:
                hit = (qx[col >> 6] >> (col & 63)) & 1
            else:
                q = col - n
                hit = (qz[q >> 6] >> (q & 63)) & 1
            if not hit:
                continue
            c = 0
            for k in range(W):
                c += __builtin_popcountll(accz[k] & X[r, k])
                accx[k] ^= X[r, k]
                accz[k] ^= Z[r, k]
            e = (e + E[r] + 2 * (c & 1)) & 3
        for k in range(W):
            if accx[k] != qx[k] or accz[k] != qz[k]:
                same = False
    return bool(same), e
