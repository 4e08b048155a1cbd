# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_pykernels``.

Same signatures, same results; loops exit early where the numpy versions
cannot.  Tables must be C-contiguous int32, masks C-contiguous uint8.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def span_closure(const int[:, ::1] add, const int[:, ::1] act, seed):
    cdef Py_ssize_t n = add.shape[0]
    cdef Py_ssize_t nr = act.shape[0]
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] member = np.zeros(n, dtype=np.uint8)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] items = np.empty(n, dtype=np.int32)
    cdef Py_ssize_t count = 0, i, j, r
    cdef int x, z
    member[0] = 1
    items[0] = 0
    count = 1
    for g in seed:
        for r in range(nr):
            x = act[r, <Py_ssize_t>g]
            if not member[x]:
                member[x] = 1
                items[count] = x
                count += 1
    i = 0
    while i < count:
        for j in range(i + 1):
            z = add[items[i], items[j]]
            if not member[z]:
                member[z] = 1
                items[count] = z
                count += 1
        i += 1
    return member


def sumset(const int[:, ::1] add, const unsigned char[::1] a, const unsigned char[::1] b):
    cdef Py_ssize_t n = add.shape[0], i, j
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] out = np.zeros(n, dtype=np.uint8)
    for i in range(n):
        if a[i]:
            for j in range(n):
                if b[j]:
                    out[add[i, j]] = 1
    return out


cdef inline bint _bad(const int[:, ::1] act, const int[:, ::1] mul,
                      const unsigned char[::1] in_n, const unsigned char[::1] colon,
                      int s, Py_ssize_t a, Py_ssize_t m, bint weak) nogil:
    cdef int p = act[a, m]
    if not in_n[p]:
        return 0
    if weak and p == 0:
        return 0
    if colon[mul[s, a]]:
        return 0
    if in_n[act[s, m]]:
        return 0
    return 1


def witness_scan(const int[:, ::1] act, const int[:, ::1] mul,
                 const unsigned char[::1] in_n, const unsigned char[::1] colon,
                 svals, bint weak):
    cdef Py_ssize_t nr = act.shape[0], nm = act.shape[1]
    cdef Py_ssize_t k = len(svals), t, a, m
    cdef int s
    cdef bint ok
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] out = np.zeros(k, dtype=np.uint8)
    for t in range(k):
        s = svals[t]
        ok = 1
        for a in range(nr):
            if colon[mul[s, a]]:
                continue
            for m in range(nm):
                if _bad(act, mul, in_n, colon, s, a, m, weak):
                    ok = 0
                    break
            if not ok:
                break
        out[t] = ok
    return out


def first_violation(const int[:, ::1] act, const int[:, ::1] mul,
                    const unsigned char[::1] in_n, const unsigned char[::1] colon,
                    int s, bint weak):
    cdef Py_ssize_t nr = act.shape[0], nm = act.shape[1], a, m
    for a in range(nr):
        for m in range(nm):
            if _bad(act, mul, in_n, colon, s, a, m, weak):
                return (a, m)
    return (-1, -1)


def fraction_classes(const int[:, ::1] act, const int[:, ::1] mul, svals):
    cdef Py_ssize_t n = act.shape[1]
    cdef Py_ssize_t k = len(svals)
    cdef Py_ssize_t npairs = n * k, p, q, t
    cdef cnp.ndarray[cnp.int32_t, ndim=1] sv = np.asarray(svals, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] labels = np.full(npairs, -1, dtype=np.int32)
    cdef int mp, sp, mq, sq, u, nxt = 0
    for p in range(npairs):
        if labels[p] >= 0:
            continue
        labels[p] = nxt
        mp = <int>(p // k)
        sp = sv[p % k]
        for q in range(p + 1, npairs):
            if labels[q] >= 0:
                continue
            mq = <int>(q // k)
            sq = sv[q % k]
            for t in range(k):
                u = sv[t]
                if act[mul[u, sq], mp] == act[mul[u, sp], mq]:
                    labels[q] = nxt
                    break
        nxt += 1
    return labels
