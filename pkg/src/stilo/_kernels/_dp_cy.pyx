# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled alignment DP kernel; expression-for-expression twin of dp_py."""

from libc.math cimport INFINITY, erfc, fabs, log, sqrt

import numpy as np

DELTAS = ((1, 1), (1, 0), (0, 1), (2, 1), (1, 2), (2, 2))

cdef double _SQRT2 = sqrt(2.0)
cdef double _TAIL_FLOOR = 1e-300

cdef int[6] _DI = [1, 1, 0, 2, 1, 2]
cdef int[6] _DJ = [1, 0, 1, 1, 2, 2]


cdef inline double _length_cost(double l_src, double l_tgt, double c, double s2) nogil:
    cdef double denom, delta, tail
    if l_src == 0.0 and l_tgt == 0.0:
        return 0.0
    denom = sqrt((l_src if l_src > 1.0 else 1.0) * s2)
    delta = (l_tgt - c * l_src) / denom
    tail = erfc(fabs(delta) / _SQRT2)
    if tail < _TAIL_FLOOR:
        tail = _TAIL_FLOOR
    return -log(tail)


def length_cost(double l_src, double l_tgt, double c, double s2):
    return _length_cost(l_src, l_tgt, c, s2)


def align_kinds(src_lens, tgt_lens, neg_log_priors, double c, double s2):
    cdef double[::1] sl = np.ascontiguousarray(src_lens, dtype=np.float64)
    cdef double[::1] tl = np.ascontiguousarray(tgt_lens, dtype=np.float64)
    cdef double[::1] nlp = np.ascontiguousarray(neg_log_priors, dtype=np.float64)
    cdef Py_ssize_t n = sl.shape[0]
    cdef Py_ssize_t m = tl.shape[0]
    cdef Py_ssize_t width = m + 1

    cdef double[::1] src_cum = np.zeros(n + 1, dtype=np.float64)
    cdef double[::1] tgt_cum = np.zeros(m + 1, dtype=np.float64)
    cdef Py_ssize_t i, j
    for i in range(n):
        src_cum[i + 1] = src_cum[i] + sl[i]
    for j in range(m):
        tgt_cum[j + 1] = tgt_cum[j] + tl[j]

    cdef double[::1] cost = np.full((n + 1) * width, INFINITY, dtype=np.float64)
    cdef signed char[::1] back = np.full((n + 1) * width, -1, dtype=np.int8)
    cost[0] = 0.0

    cdef Py_ssize_t pi, pj
    cdef int kind, best_kind
    cdef double best, prev, total
    with nogil:
        for i in range(n + 1):
            for j in range(width):
                if i == 0 and j == 0:
                    continue
                best = INFINITY
                best_kind = -1
                for kind in range(6):
                    pi = i - _DI[kind]
                    pj = j - _DJ[kind]
                    if pi < 0 or pj < 0:
                        continue
                    prev = cost[pi * width + pj]
                    if prev == INFINITY:
                        continue
                    total = prev + nlp[kind] + _length_cost(
                        src_cum[i] - src_cum[pi], tgt_cum[j] - tgt_cum[pj], c, s2
                    )
                    if total < best:
                        best = total
                        best_kind = kind
                cost[i * width + j] = best
                back[i * width + j] = best_kind

    kinds = []
    i = n
    j = m
    cdef int step
    while i > 0 or j > 0:
        step = back[i * width + j]
        kinds.append(step)
        i -= _DI[step]
        j -= _DJ[step]
    kinds.reverse()
    return cost[n * width + m], kinds
