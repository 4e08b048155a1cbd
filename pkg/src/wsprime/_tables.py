"""Full-table axiom scans for rings and modules.

Each checker returns ``None`` when every axiom holds, otherwise a short
description naming the axiom and the first offending element tuple.
"""

from __future__ import annotations

import hashlib

import numpy as np


def as_table(values, shape=None) -> np.ndarray:
    arr = np.ascontiguousarray(np.asarray(values, dtype=np.int32))
    if shape is not None and arr.shape != shape:
        raise ValueError(f"table has shape {arr.shape}, expected {shape}")
    arr.setflags(write=False)
    return arr


def _first(mask: np.ndarray) -> tuple[int, ...]:
    return tuple(int(v) for v in np.argwhere(mask)[0])


def _group_failure(add: np.ndarray) -> str | None:
    n = add.shape[0]
    ar = np.arange(n)
    if add.min() < 0 or add.max() >= n:
        return "addition table entry out of range"
    if not np.array_equal(add[0], ar) or not np.array_equal(add[:, 0], ar):
        bad = np.flatnonzero(add[0] != ar)
        return f"0 is not an additive identity at {tuple(int(b) for b in bad[:1])}"
    bad = add != add.T
    if bad.any():
        return f"addition not commutative at {_first(bad)}"
    lhs = add[add[:, :, None], ar[None, None, :]]
    rhs = add[ar[:, None, None], add[None, :, :]]
    bad = lhs != rhs
    if bad.any():
        return f"addition not associative at {_first(bad)}"
    bad = ~(add == 0).any(axis=1)
    if bad.any():
        return f"no additive inverse for {int(np.flatnonzero(bad)[0])}"
    return None


def ring_failure(add: np.ndarray, mul: np.ndarray, one: int) -> str | None:
    n = add.shape[0]
    if add.shape != (n, n) or mul.shape != (n, n):
        return "tables are not square of equal size"
    msg = _group_failure(add)
    if msg:
        return msg
    if mul.min() < 0 or mul.max() >= n:
        return "multiplication table entry out of range"
    ar = np.arange(n)
    bad = mul != mul.T
    if bad.any():
        return f"multiplication not commutative at {_first(bad)}"
    lhs = mul[mul[:, :, None], ar[None, None, :]]
    rhs = mul[ar[:, None, None], mul[None, :, :]]
    bad = lhs != rhs
    if bad.any():
        return f"multiplication not associative at {_first(bad)}"
    # a(b + c) = ab + ac
    lhs = mul[ar[:, None, None], add[None, :, :]]
    rhs = add[mul[:, :, None], mul[:, None, :]]
    bad = lhs != rhs
    if bad.any():
        return f"distributivity fails at {_first(bad)}"
    if not 0 <= one < n or not np.array_equal(mul[one], ar):
        return f"{one} is not a multiplicative identity"
    if one == 0:
        return "identity equals zero"
    return None


def module_failure(ring_add, ring_mul, ring_one, add, act) -> str | None:
    n = add.shape[0]
    nr = ring_add.shape[0]
    if add.shape != (n, n) or act.shape != (nr, n):
        return "module tables have the wrong shape"
    msg = _group_failure(add)
    if msg:
        return msg
    if act.min() < 0 or act.max() >= n:
        return "action table entry out of range"
    ar = np.arange(n)
    rr = np.arange(nr)
    # r(m + m') = rm + rm'
    lhs = act[rr[:, None, None], add[None, :, :]]
    rhs = add[act[:, :, None], act[:, None, :]]
    bad = lhs != rhs
    if bad.any():
        return f"r(m+m') != rm+rm' at {_first(bad)}"
    # (r + r')m = rm + r'm
    lhs = act[ring_add[:, :, None], ar[None, None, :]]
    rhs = add[act[:, None, :], act[None, :, :]]
    bad = lhs != rhs
    if bad.any():
        return f"(r+r')m != rm+r'm at {_first(bad)}"
    # (rr')m = r(r'm)
    lhs = act[ring_mul[:, :, None], ar[None, None, :]]
    rhs = act[rr[:, None, None], act[None, :, :]]
    bad = lhs != rhs
    if bad.any():
        return f"(rr')m != r(r'm) at {_first(bad)}"
    if not np.array_equal(act[ring_one], ar):
        bad = act[ring_one] != ar
        return f"1*m != m at m={int(np.flatnonzero(bad)[0])}"
    return None


def negation(add: np.ndarray) -> np.ndarray:
    neg = np.argmax(add == 0, axis=1).astype(np.int32)
    neg.setflags(write=False)
    return neg


def digest(*tables, extra: str = "") -> str:
    h = hashlib.sha256()
    for t in tables:
        a = np.ascontiguousarray(np.asarray(t, dtype=np.int32))
        h.update(str(a.shape).encode())
        h.update(a.tobytes())
    h.update(extra.encode())
    return h.hexdigest()
