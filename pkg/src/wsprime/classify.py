"""Decision procedures for (weakly) prime and (weakly) S-prime submodules.

Every S-relative verdict is reported as the full set of admissible
elements s, so set-level laws (monotonicity in S, agreement between
characterizations) can be asserted directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from wsprime import kernels
from wsprime.bits import is_subset, mask_of
from wsprime.errors import ImproperSubmodule, NotApplicable
from wsprime.modules import FiniteModule, Submodule, regular_module, residual_in_ring
from wsprime.rings import Ideal, MultClosedSet, enumerate_ideals

METHODS = ("definitional", "char2", "char3", "char4")


def _scan_tables(n: Submodule):
    cached = n.__dict__.get("_scan")
    if cached is None:
        colon = residual_in_ring(n)
        cached = (n.array, colon.array, colon.mask)
        n.__dict__["_scan"] = cached
    return cached


def _require_proper(n: Submodule) -> None:
    if not n.is_proper:
        raise ImproperSubmodule("the whole module is never (weakly) prime")


def _violation(n: Submodule, s: int, weak: bool) -> tuple[int, int] | None:
    m = n.host
    in_n, colon, _ = _scan_tables(n)
    a, x = kernels.first_violation(m.act, m.ring.mul, in_n, colon, int(s), weak)
    return None if a < 0 else (int(a), int(x))


def is_prime_submodule(n: Submodule) -> tuple[bool, tuple[int, int] | None]:
    """Prime verdict and the lexicographically smallest (r, m) violation."""
    _require_proper(n)
    bad = _violation(n, n.host.ring.one, False)
    return bad is None, bad


def is_weakly_prime_submodule(n: Submodule) -> tuple[bool, tuple[int, int] | None]:
    _require_proper(n)
    bad = _violation(n, n.host.ring.one, True)
    return bad is None, bad


def is_disjoint(n: Submodule, s: MultClosedSet) -> bool:
    return not _scan_tables(n)[2] & s.mask


# ---------------------------------------------------------- characterizations


def _definitional(n: Submodule, svals, weak: bool) -> list[bool]:
    m = n.host
    in_n, colon, _ = _scan_tables(n)
    flags = kernels.witness_scan(m.act, m.ring.mul, in_n, colon,
                                 np.asarray(svals, dtype=np.int32), weak)
    return [bool(f) for f in flags]


def _residual_masks(n: Submodule) -> tuple[list[int], list[int]]:
    """(N :_M a) and (0 :_M a) for every ring element a, as masks."""
    cached = n.__dict__.get("_res_by_elem")
    if cached is None:
        m = n.host
        in_n = n.array.astype(bool)
        cached = ([mask_of(np.flatnonzero(in_n[m.act[a]]).tolist()) for a in range(m.ring.order)],
                  _annihilated(m))
        n.__dict__["_res_by_elem"] = cached
    return cached


def element_residuals(n: Submodule) -> list[int]:
    """Masks of (N :_M a) indexed by ring element a."""
    return _residual_masks(n)[0]


def _annihilated(m: FiniteModule) -> list[int]:
    cached = m.__dict__.get("_zero_res")
    if cached is None:
        cached = [mask_of(np.flatnonzero(m.act[a] == 0).tolist()) for a in range(m.ring.order)]
        m.__dict__["_zero_res"] = cached
    return cached


def _char2(n: Submodule, svals, weak: bool) -> list[bool]:
    m = n.host
    _, colon, _ = _scan_tables(n)
    res_n, res_0 = _residual_masks(n)
    out = []
    for s in svals:
        ns = res_n[s]
        ok = True
        for a in range(m.ring.order):
            if colon[m.ring.mul[s, a]]:
                continue
            if weak and res_n[a] == res_0[a]:
                continue
            if not is_subset(res_n[a], ns):
                ok = False
                break
        out.append(ok)
    return out


def _scaled_submodules(m: FiniteModule) -> list[list[int]]:
    """aK as a mask, for every ring element a and submodule K (canonical order)."""
    cached = m.__dict__.get("_scaled")
    if cached is None:
        cached = []
        for a in range(m.ring.order):
            row = m.act[a]
            cached.append([mask_of(row[list(k.elements)].tolist()) for k in m.submodules])
        m.__dict__["_scaled"] = cached
    return cached


def _char3_hits(n: Submodule, weak: bool):
    """(a, K) pairs with aK inside N (and nonzero in the weak case)."""
    key = ("_c3", weak)
    cached = n.__dict__.get(key)
    if cached is None:
        m = n.host
        scaled = _scaled_submodules(m)
        subs = [k.mask for k in m.submodules]
        nm = n.mask
        hits_a, hits_k = [], []
        for a in range(m.ring.order):
            for idx, ak in enumerate(scaled[a]):
                if (weak and ak == 1) or not is_subset(ak, nm):
                    continue
                hits_a.append(a)
                hits_k.append(subs[idx])
        if m.order <= 64:
            cached = (np.asarray(hits_a, dtype=np.intp), np.asarray(hits_k, dtype=np.uint64))
        else:
            cached = (hits_a, hits_k)
        n.__dict__[key] = cached
    return cached


def _char3(n: Submodule, svals, weak: bool) -> list[bool]:
    m = n.host
    _, colon, _ = _scan_tables(n)
    res_n, _ = _residual_masks(n)
    hits_a, hits_k = _char3_hits(n, weak)
    if m.order <= 64:
        return [bool(np.all(colon[m.ring.mul[s, hits_a]].astype(bool)
                            | ((hits_k & ~np.uint64(res_n[s])) == 0))) for s in svals]
    return [all(colon[m.ring.mul[s, a]] or is_subset(k, res_n[s]) for a, k in zip(hits_a, hits_k))
            for s in svals]


def _ideal_products(m: FiniteModule) -> list[tuple[int, int, int]]:
    """(I mask, K mask, IK mask) over all ideal/submodule pairs."""
    cached = m.__dict__.get("_ik")
    if cached is None:
        from wsprime._lattice import span_mask

        cached = []
        for ideal in enumerate_ideals(m.ring):
            elems = list(ideal.elements)
            for k in m.submodules:
                prods = np.unique(m.act[np.ix_(elems, list(k.elements))]).tolist()
                cached.append((ideal.mask, k.mask, span_mask(m.add, m.act, prods)))
        m.__dict__["_ik"] = cached
    return cached


def _char4_hits(n: Submodule, weak: bool):
    key = ("_c4", weak)
    cached = n.__dict__.get(key)
    if cached is None:
        m = n.host
        nm = n.mask
        hits = [(i, k) for i, k, ik in _ideal_products(m)
                if not (weak and ik == 1) and is_subset(ik, nm)]
        if m.order <= 64 and m.ring.order <= 64:
            cached = (np.asarray([i for i, _ in hits], dtype=np.uint64),
                      np.asarray([k for _, k in hits], dtype=np.uint64))
        else:
            cached = hits
        n.__dict__[key] = cached
    return cached


def _char4(n: Submodule, svals, weak: bool) -> list[bool]:
    m = n.host
    r = m.ring
    _, colon, _ = _scan_tables(n)
    res_n, _ = _residual_masks(n)
    hits = _char4_hits(n, weak)
    # sI inside (N:M) iff I inside {a : sa in (N:M)}
    good = [mask_of(np.flatnonzero(colon[r.mul[s]]).tolist()) for s in svals]
    if isinstance(hits, tuple):
        i_arr, k_arr = hits
        return [bool(np.all(((i_arr & ~np.uint64(g)) == 0) | ((k_arr & ~np.uint64(res_n[s])) == 0)))
                for s, g in zip(svals, good)]
    return [all(is_subset(i, g) or is_subset(k, res_n[s]) for i, k in hits)
            for s, g in zip(svals, good)]


_DISPATCH = {"definitional": _definitional, "char2": _char2, "char3": _char3, "char4": _char4}


def _witnesses(n: Submodule, s: MultClosedSet, weak: bool, method: str) -> tuple[int, ...]:
    _require_proper(n)
    if s.host is not n.host.ring:
        from wsprime.errors import RingMismatch

        raise RingMismatch("multiplicative set lives over a different ring")
    if not is_disjoint(n, s):
        raise NotApplicable("(N:M) meets S")
    try:
        fn = _DISPATCH[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}") from None
    key = ("_wit", s.mask, weak, method)
    cached = n.__dict__.get(key)
    if cached is None:
        svals = s.elements
        cached = tuple(t for t, ok in zip(svals, fn(n, svals, weak)) if ok)
        n.__dict__[key] = cached
    return cached


def s_prime_witnesses(n: Submodule, s: MultClosedSet, method: str = "definitional") -> tuple[int, ...]:
    return _witnesses(n, s, False, method)


def weakly_s_prime_witnesses(n: Submodule, s: MultClosedSet,
                             method: str = "definitional") -> tuple[int, ...]:
    return _witnesses(n, s, True, method)


def is_s_prime(n: Submodule, s: MultClosedSet) -> bool:
    """False when (N:M) meets S or N is the whole module."""
    if not n.is_proper or not is_disjoint(n, s):
        return False
    return bool(s_prime_witnesses(n, s))


def is_weakly_s_prime(n: Submodule, s: MultClosedSet) -> bool:
    if not n.is_proper or not is_disjoint(n, s):
        return False
    return bool(weakly_s_prime_witnesses(n, s))


def is_prime(n: Submodule) -> bool:
    return n.is_proper and is_prime_submodule(n)[0]


def is_weakly_prime(n: Submodule) -> bool:
    return n.is_proper and is_weakly_prime_submodule(n)[0]


# ------------------------------------------------------------------- reports


@dataclass(frozen=True)
class ClassificationReport:
    subject: Submodule
    mult_set: MultClosedSet
    method: str
    disjoint: bool
    prime: bool
    weakly_prime: bool
    s_prime_witnesses: tuple[int, ...] | None
    weakly_s_prime_witnesses: tuple[int, ...] | None
    counterexamples: dict = field(default_factory=dict)

    @property
    def applicable(self) -> bool:
        return self.disjoint

    @property
    def s_prime(self) -> bool | None:
        return None if self.s_prime_witnesses is None else bool(self.s_prime_witnesses)

    @property
    def weakly_s_prime(self) -> bool | None:
        if self.weakly_s_prime_witnesses is None:
            return None
        return bool(self.weakly_s_prime_witnesses)


def classify(n: Submodule, s: MultClosedSet, method: str = "definitional") -> ClassificationReport:
    _require_proper(n)
    if method not in _DISPATCH:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    prime, bad_p = is_prime_submodule(n)
    weak, bad_w = is_weakly_prime_submodule(n)
    counter = {}
    if bad_p:
        counter["prime"] = bad_p
    if bad_w:
        counter["weakly_prime"] = bad_w
    disjoint = is_disjoint(n, s)
    sp = ws = None
    if disjoint:
        sp = s_prime_witnesses(n, s, method)
        ws = weakly_s_prime_witnesses(n, s, method)
        first = s.elements[0]
        if not sp:
            counter["s_prime"] = (first,) + _violation(n, first, False)
        if not ws:
            counter["weakly_s_prime"] = (first,) + _violation(n, first, True)
    return ClassificationReport(n, s, method, disjoint, prime, weak, sp, ws, counter)


def ideal_as_submodule(i: Ideal) -> Submodule:
    return Submodule(regular_module(i.host), i.mask, i.generators)


def classify_ideal(i: Ideal, s: MultClosedSet, method: str = "definitional") -> ClassificationReport:
    return classify(ideal_as_submodule(i), s, method)


def is_maximal_weakly_s_prime(n: Submodule, s: MultClosedSet) -> bool:
    if not n.is_proper or not is_weakly_s_prime(n, s):
        raise NotApplicable("N is not a weakly S-prime submodule")
    for k in n.host.submodules:
        if k.mask != n.mask and n.issubset(k) and k.is_proper and is_weakly_s_prime(k, s):
            return False
    return True
