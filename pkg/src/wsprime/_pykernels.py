"""Numpy implementations of the hot kernels.

Used when the compiled ``_ckernels`` extension is unavailable (or when
``WSPRIME_PURE_PYTHON=1``).  Every function here has the same signature and
returns bit-identical results to its Cython counterpart.

Conventions: ``add`` is an n x n table, ``act`` is |R| x n (for rings pass the
multiplication table), ``mul`` is the |R| x |R| ring multiplication table and
masks are uint8 arrays.
"""

from __future__ import annotations

import numpy as np


def span_closure(add, act, seed):
    """Smallest submodule containing the elements listed in ``seed``."""
    n = add.shape[0]
    member = np.zeros(n, dtype=np.uint8)
    member[0] = 1
    gens = np.asarray(seed, dtype=np.intp)
    if gens.size:
        member[np.asarray(act)[:, gens].ravel()] = 1
    count = int(member.sum())
    while True:
        idx = np.flatnonzero(member)
        member[np.asarray(add)[np.ix_(idx, idx)].ravel()] = 1
        new_count = int(member.sum())
        if new_count == count:
            return member
        count = new_count


def sumset(add, a, b):
    """The set {x + y : x in a, y in b}."""
    add = np.asarray(add)
    out = np.zeros(add.shape[0], dtype=np.uint8)
    ia = np.flatnonzero(a)
    ib = np.flatnonzero(b)
    out[add[np.ix_(ia, ib)].ravel()] = 1
    return out


def _violation_matrix(act, in_n, weak):
    act = np.asarray(act)
    inn = np.asarray(in_n, dtype=bool)
    prod_in = inn[act]
    if weak:
        prod_in &= act != 0
    return prod_in


def witness_scan(act, mul, in_n, colon, svals, weak):
    """Flag every s in ``svals`` that is a (weakly) S-element of N.

    s qualifies iff no pair (a, m) has a*m in N (and a*m != 0 when ``weak``)
    while s*a is outside the colon ideal and s*m is outside N.
    """
    svals = np.asarray(svals, dtype=np.intp)
    if svals.size == 0:
        return np.zeros(0, dtype=np.uint8)
    act = np.asarray(act)
    mul = np.asarray(mul)
    inn = np.asarray(in_n, dtype=bool)
    col = np.asarray(colon, dtype=bool)
    prod_in = _violation_matrix(act, in_n, weak).astype(np.int64)
    not_a = (~col[mul[svals]]).astype(np.int64)
    not_m = (~inn[act[svals]]).astype(np.int64)
    hits = ((not_a @ prod_in) * not_m).sum(axis=1)
    return (hits == 0).astype(np.uint8)


def first_violation(act, mul, in_n, colon, s, weak):
    """Lexicographically smallest (a, m) violating the s-condition, or (-1, -1)."""
    act = np.asarray(act)
    mul = np.asarray(mul)
    inn = np.asarray(in_n, dtype=bool)
    col = np.asarray(colon, dtype=bool)
    bad = _violation_matrix(act, in_n, weak)
    bad &= ~col[mul[s]][:, None]
    bad &= ~inn[act[s]][None, :]
    hits = np.argwhere(bad)
    if len(hits) == 0:
        return (-1, -1)
    return (int(hits[0][0]), int(hits[0][1]))


def fraction_classes(act, mul, svals):
    """Class labels of the pairs (m, s) under m/s ~ m'/s' iff u(s'm - sm') = 0.

    Pairs are ordered row-major by (m, position of s in ``svals``); classes are
    numbered by their first pair, so the class of (0, s) is always 0.
    """
    act = np.asarray(act)
    mul = np.asarray(mul)
    svals = np.asarray(svals, dtype=np.intp)
    n = act.shape[1]
    k = svals.size
    m_of = np.repeat(np.arange(n), k)
    s_of = np.tile(np.arange(k), n)
    related = np.zeros((n * k, n * k), dtype=bool)
    for u in svals:
        us = mul[u, svals]
        # x[p, q] = u * s_q * m_p
        x = act[us[s_of][None, :], m_of[:, None]]
        related |= x == x.T
    first = np.argmax(related, axis=0)
    _, labels = np.unique(first, return_inverse=True)
    return labels.astype(np.int32).reshape(-1)
