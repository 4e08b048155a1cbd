"""Idealization, amalgamated duplication, amalgamation along f, and products.

Every carrier is materialized as an explicit, validated table.  Pair
encodings follow the product rule i1*|X2| + i2; duplication and
amalgamation carriers are the matching pairs in ascending encoded order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from wsprime.bits import mask_of
from wsprime.errors import ForeignIdeal, NotAnIdeal, RingMismatch
from wsprime.modules import (
    FiniteModule,
    ModuleHom,
    Submodule,
    ideal_times,
    product_module,
)
from wsprime.rings import (
    FiniteRing,
    Ideal,
    MultClosedSet,
    RingHom,
    identity_hom,
    make_product_ring,
    pair_tables,
)


def _sub_table(table: np.ndarray, rows, cols, pos: np.ndarray, what: str) -> np.ndarray:
    out = pos[table[np.ix_(rows, cols)]]
    if (out < 0).any():
        raise RingMismatch(f"{what} is not closed under its operations")
    return out


def _reindex(keep: np.ndarray, n: int) -> np.ndarray:
    pos = np.full(n, -1, dtype=np.int32)
    pos[keep] = np.arange(len(keep))
    return pos


# ---------------------------------------------------------------- idealization


class IdealizationBundle:
    """R x M with (r1,m1)(r2,m2) = (r1 r2, r1 m2 + r2 m1)."""

    def __init__(self, base: FiniteRing, module: FiniteModule):
        if module.ring is not base:
            raise RingMismatch("module is not over the given ring")
        nr, nm = base.order, module.order
        r = np.repeat(np.arange(nr), nm)
        m = np.tile(np.arange(nm), nr)
        add = pair_tables(base.add, module.add)
        # row (r1, m1), column (r2, m2): r1 m2 + r2 m1
        left = module.act[r[:, None], m[None, :]]
        right = module.act[r[None, :], m[:, None]]
        mul = base.mul[r[:, None], r[None, :]] * nm + module.add[left, right]
        labels = [f"({a},{b})" for a in base.labels for b in module.labels]
        self.base = base
        self.module = module
        self.ring = FiniteRing(add, mul, base.one * nm, f"{base.label}x|{module.label}", labels,
                               ("idealization", base.recipe, module.recipe))
        self.embed_ring = RingHom(base, self.ring, np.arange(nr) * nm)

    def encode(self, r: int, m: int) -> int:
        return int(r) * self.module.order + int(m)

    def decode(self, i: int) -> tuple[int, int]:
        return divmod(int(i), self.module.order)

    def product_mask(self, a_set, b_set) -> int:
        return mask_of(self.encode(a, b) for a in a_set for b in b_set)

    def lift_ideal(self, i: Ideal, n: Submodule) -> Ideal:
        """I x N; an ideal exactly when IM is inside N."""
        if i.host is not self.base:
            raise ForeignIdeal("ideal is not in the base ring")
        if n.host is not self.module:
            raise RingMismatch("submodule is not in the idealized module")
        if not ideal_times(i, self.module.whole).issubset(n):
            raise NotAnIdeal("IM is not contained in N")
        return Ideal(self.ring, self.product_mask(i.elements, n.elements))

    def lift_mset(self, s: MultClosedSet, k: Submodule) -> MultClosedSet:
        return MultClosedSet(self.ring, self.product_mask(s.elements, k.elements))


def build_idealization(r: FiniteRing, m: FiniteModule) -> IdealizationBundle:
    return IdealizationBundle(r, m)


# ------------------------------------------------------ duplication/amalgamation


@dataclass
class _Carrier:
    ring: FiniteRing
    module: FiniteModule
    ring_pairs: np.ndarray   # (k, 2) array of (r1, r2) component indices
    module_pairs: np.ndarray


def _build_pairs(r1: FiniteRing, r2: FiniteRing, m1: FiniteModule, m2: FiniteModule,
                 ring_keep: np.ndarray, mod_keep: np.ndarray, label: str, recipe: tuple) -> _Carrier:
    pring = make_product_ring(r1, r2)
    pmod = product_module(m1, m2, pring)
    rpos = _reindex(ring_keep, pring.order)
    mpos = _reindex(mod_keep, pmod.order)
    add = _sub_table(pring.add, ring_keep, ring_keep, rpos, "ring carrier")
    mul = _sub_table(pring.mul, ring_keep, ring_keep, rpos, "ring carrier")
    one = int(rpos[pring.one])
    if one < 0:
        raise RingMismatch("ring carrier misses the identity")
    ring = FiniteRing(add, mul, one, label, [pring.labels[i] for i in ring_keep], ("ring",) + recipe)
    madd = _sub_table(pmod.add, mod_keep, mod_keep, mpos, "module carrier")
    mact = _sub_table(pmod.act, ring_keep, mod_keep, mpos, "module carrier")
    module = FiniteModule(ring, madd, mact, label + "(M)", [pmod.labels[i] for i in mod_keep],
                          ("module",) + recipe)
    rp = np.stack(np.divmod(ring_keep, r2.order), axis=1)
    mp = np.stack(np.divmod(mod_keep, m2.order), axis=1)
    return _Carrier(ring, module, rp, mp)


class _PairBundle:
    """Shared lifters for duplication and amalgamation carriers."""

    ring: FiniteRing
    module: FiniteModule
    ring_pairs: np.ndarray
    module_pairs: np.ndarray

    def _ring_mask(self, pred) -> int:
        return mask_of(i for i, (a, b) in enumerate(self.ring_pairs) if pred(int(a), int(b)))

    def _module_mask(self, pred) -> int:
        return mask_of(i for i, (a, b) in enumerate(self.module_pairs) if pred(int(a), int(b)))

    def ring_index(self, a: int, b: int) -> int:
        hit = np.flatnonzero((self.ring_pairs[:, 0] == a) & (self.ring_pairs[:, 1] == b))
        if not len(hit):
            raise KeyError((a, b))
        return int(hit[0])

    def module_index(self, a: int, b: int) -> int:
        hit = np.flatnonzero((self.module_pairs[:, 0] == a) & (self.module_pairs[:, 1] == b))
        if not len(hit):
            raise KeyError((a, b))
        return int(hit[0])

    def _submodule(self, mask: int) -> Submodule:
        return Submodule(self.module, mask)


class AmalgamationBundle(_PairBundle):
    """R1 x^f J and M1 x^phi JM2 for f: R1 -> R2, phi: M1 -> M2 f-linear."""

    def __init__(self, f: RingHom, j: Ideal, phi: ModuleHom, label: str | None = None):
        r1, r2 = f.domain, f.codomain
        m1, m2 = phi.domain, phi.codomain
        if j.host is not r2:
            raise ForeignIdeal("J must be an ideal of the codomain ring")
        if m1.ring is not r1 or m2.ring is not r2:
            raise RingMismatch("modules do not sit over the rings of f")
        if phi.ring_map.image.tolist() != f.image.tolist():
            ModuleHom(m1, m2, phi.image, f)   # raises IncompatibleAction if not f-linear
        self.f, self.j, self.phi = f, j, phi
        self.jm2 = ideal_times(j, m2.whole)
        n2r, n2m = r2.order, m2.order
        ring_keep = sorted({int(r) * n2r + int(r2.add[f.image[r], x])
                            for r in range(r1.order) for x in j.elements})
        mod_keep = sorted({int(a) * n2m + int(m2.add[phi.image[a], x])
                           for a in range(m1.order) for x in self.jm2.elements})
        label = label or f"{r1.label}x^f<{len(j)}>"
        c = _build_pairs(r1, r2, m1, m2, np.asarray(ring_keep), np.asarray(mod_keep), label,
                         ("amalgamation", r1.recipe, r2.recipe, j.elements))
        self.ring, self.module = c.ring, c.module
        self.ring_pairs, self.module_pairs = c.ring_pairs, c.module_pairs

    @cached_property
    def epimorphic(self) -> bool:
        return self.f.is_surjective and self.phi.is_surjective

    def lift_n1(self, n1: Submodule) -> Submodule:
        """N1 x^phi JM2 = carrier pairs with first component in N1."""
        return self._submodule(self._module_mask(lambda a, b: a in n1))

    def lift_n2_bar(self, n2: Submodule) -> Submodule:
        """overline(N2) = carrier pairs with second component in N2."""
        return self._submodule(self._module_mask(lambda a, b: b in n2))

    def lift_s(self, s: MultClosedSet) -> MultClosedSet:
        """S x^f J = {(s, f(s) + j)} for S inside R1."""
        f = self.f.image
        r2 = self.f.codomain
        return MultClosedSet(self.ring, self._ring_mask(
            lambda a, b: a in s and r2.add[b, r2.neg[f[a]]] in self.j))

    def lift_s2_bar(self, s2: MultClosedSet) -> MultClosedSet:
        """overline(S2) = {(r, f(r) + j) : f(r) + j in S2} for S2 inside R2."""
        return MultClosedSet(self.ring, self._ring_mask(lambda a, b: b in s2))

    def lift_graph(self, s: MultClosedSet) -> MultClosedSet:
        """S x f(S) read as the graph {(s, f(s))}."""
        f = self.f.image
        return MultClosedSet(self.ring, self._ring_mask(lambda a, b: a in s and b == f[a]))


def build_amalgamation(f: RingHom, j: Ideal, phi: ModuleHom, m1: FiniteModule | None = None,
                       m2: FiniteModule | None = None) -> AmalgamationBundle:
    if m1 is not None and m1 is not phi.domain:
        raise RingMismatch("M1 is not the domain of phi")
    if m2 is not None and m2 is not phi.codomain:
        raise RingMismatch("M2 is not the codomain of phi")
    return AmalgamationBundle(f, j, phi)


class DuplicationBundle(_PairBundle):
    """R x J = {(r, r + j)} and M x J = {(m, m') : m - m' in JM}."""

    def __init__(self, r: FiniteRing, j: Ideal, m: FiniteModule):
        if j.host is not r:
            raise ForeignIdeal("J must be an ideal of R")
        if m.ring is not r:
            raise RingMismatch("module is not over R")
        self.base, self.j, self.base_module = r, j, m
        self.jm = ideal_times(j, m.whole)
        n, nm = r.order, m.order
        ring_keep = [a * n + b for a in range(n) for b in range(n) if r.minus(a, b) in j]
        mod_keep = [a * nm + b for a in range(nm) for b in range(nm) if m.minus(a, b) in self.jm]
        label = f"{r.label}x<{','.join(r.labels[g] for g in j.generators) or '0'}>"
        c = _build_pairs(r, r, m, m, np.asarray(ring_keep), np.asarray(mod_keep), label,
                         ("duplication", r.recipe, j.elements))
        self.ring, self.module = c.ring, c.module
        self.ring_pairs, self.module_pairs = c.ring_pairs, c.module_pairs

    def lift_n(self, n: Submodule) -> Submodule:
        """N x J = {(n, m) : n in N}."""
        return self._submodule(self._module_mask(lambda a, b: a in n))

    def lift_n_bar(self, n: Submodule) -> Submodule:
        """N bar = {(m, n) : n in N}."""
        return self._submodule(self._module_mask(lambda a, b: b in n))

    def lift_s(self, s: MultClosedSet) -> MultClosedSet:
        """S x J = {(s, s + j)}."""
        return MultClosedSet(self.ring, self._ring_mask(lambda a, b: a in s))

    def lift_s_bar(self, s: MultClosedSet) -> MultClosedSet:
        """S bar = {(r, r + j) : r + j in S}."""
        return MultClosedSet(self.ring, self._ring_mask(lambda a, b: b in s))


def build_duplication(r: FiniteRing, j: Ideal, m: FiniteModule) -> DuplicationBundle:
    return DuplicationBundle(r, j, m)


def identity_amalgamation(r: FiniteRing, j: Ideal, m: FiniteModule) -> AmalgamationBundle:
    return AmalgamationBundle(identity_hom(r), j, ModuleHom(m, m, np.arange(m.order), validate=False))


# -------------------------------------------------------------------- products


class ProductBundle:
    """R1 x R2 acting on M1 x M2 componentwise."""

    def __init__(self, r1: FiniteRing, m1: FiniteModule, r2: FiniteRing, m2: FiniteModule):
        if m1.ring is not r1 or m2.ring is not r2:
            raise RingMismatch("modules do not sit over the given rings")
        self.r1, self.m1, self.r2, self.m2 = r1, m1, r2, m2
        self.ring = make_product_ring(r1, r2)
        self.module = product_module(m1, m2, self.ring)

    def lift_submodule(self, n1: Submodule, n2: Submodule) -> Submodule:
        n = self.m2.order
        return Submodule(self.module, mask_of(a * n + b for a in n1.elements for b in n2.elements))

    def lift_mset(self, s1: MultClosedSet, s2: MultClosedSet) -> MultClosedSet:
        n = self.r2.order
        return MultClosedSet(self.ring, mask_of(a * n + b for a in s1.elements for b in s2.elements))


def build_product_structure(r1: FiniteRing, m1: FiniteModule, r2: FiniteRing,
                            m2: FiniteModule) -> ProductBundle:
    return ProductBundle(r1, m1, r2, m2)


def fold_products(parts: list[tuple[FiniteRing, FiniteModule]]) -> list[ProductBundle]:
    """Left fold ((P1 x P2) x P3) x ...; returns the bundle of each step."""
    if len(parts) < 2:
        raise ValueError("need at least two factors")
    bundles = []
    ring, module = parts[0]
    for r, m in parts[1:]:
        b = ProductBundle(ring, module, r, m)
        bundles.append(b)
        ring, module = b.ring, b.module
    return bundles


def fold_lift(bundles: list[ProductBundle], subs: list[Submodule], msets: list[MultClosedSet]):
    n, s = subs[0], msets[0]
    for b, n2, s2 in zip(bundles, subs[1:], msets[1:]):
        n, s = b.lift_submodule(n, n2), b.lift_mset(s, s2)
    return n, s
