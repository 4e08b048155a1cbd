"""Span and lattice enumeration over any (additive table, action table) pair.

Ideals are the submodules of the regular module, so rings and modules share
this code: pass the multiplication table as ``act`` for ideals.
"""

from __future__ import annotations

import numpy as np

from wsprime import kernels
from wsprime.bits import array_of, indices_of, mask_from_array, popcount


def span_mask(add, act, gens) -> int:
    return mask_from_array(kernels.span_closure(add, act, np.asarray(gens, dtype=np.int32)))


def join_mask(add, a: int, b: int) -> int:
    n = add.shape[0]
    return mask_from_array(kernels.sumset(add, array_of(a, n), array_of(b, n)))


def canonical_key(mask: int) -> tuple[int, tuple[int, ...]]:
    return (popcount(mask), indices_of(mask))


def enumerate_spans(add, act) -> list[tuple[int, tuple[int, ...]]]:
    """All submodules as (mask, generators), in (size, element-set) order.

    Seeds are the cyclic submodules R*m; every submodule is a finite join of
    cyclic ones, so joining the frontier with every seed until nothing new
    appears reaches the whole lattice.
    """
    n = add.shape[0]
    gens_of: dict[int, tuple[int, ...]] = {}
    cyclic: list[int] = []
    for m in range(n):
        mk = span_mask(add, act, [m])
        if mk not in gens_of:
            gens_of[mk] = (m,) if m else ()
            cyclic.append(mk)
    frontier = list(cyclic)
    while frontier:
        nxt = []
        for x in frontier:
            for c in cyclic:
                if c & ~x == 0:
                    continue
                y = join_mask(add, x, c)
                if y not in gens_of:
                    gens_of[y] = gens_of[x] + gens_of[c]
                    nxt.append(y)
        frontier = nxt
    return sorted(gens_of.items(), key=lambda kv: canonical_key(kv[0]))
