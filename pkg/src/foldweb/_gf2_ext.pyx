# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Bit-packed GF(2) elimination kernel.

Rows are packed into 64-bit words; row operations are word-wise XORs.
Same contract as the numpy fallback: RREF in place, leftmost pivots,
topmost candidate row.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, uint8_t

cnp.import_array()


def rref_inplace(cnp.ndarray m not None, Py_ssize_t ncols):
    cdef Py_ssize_t rows = m.shape[0]
    cdef Py_ssize_t cols = m.shape[1]
    cdef Py_ssize_t words = (cols + 63) // 64
    cdef cnp.ndarray[uint64_t, ndim=2] packed = np.zeros((rows, words), dtype=np.uint64)
    cdef uint8_t[:, :] src = m
    cdef uint64_t[:, :] a = packed
    cdef Py_ssize_t i, j, c, r, p, w, w0
    cdef uint64_t bit, tmp
    for i in range(rows):
        for j in range(cols):
            if src[i, j] & 1:
                a[i, j >> 6] |= (<uint64_t>1) << (j & 63)

    pivots = []
    r = 0
    for c in range(ncols):
        if r >= rows:
            break
        w0 = c >> 6
        bit = (<uint64_t>1) << (c & 63)
        p = -1
        for i in range(r, rows):
            if a[i, w0] & bit:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for w in range(w0, words):
                tmp = a[r, w]
                a[r, w] = a[p, w]
                a[p, w] = tmp
        for i in range(rows):
            if i != r and (a[i, w0] & bit):
                for w in range(w0, words):
                    a[i, w] ^= a[r, w]
        pivots.append(c)
        r += 1

    for i in range(rows):
        for j in range(cols):
            src[i, j] = (a[i, j >> 6] >> (j & 63)) & 1
    return pivots
