"""Finite commutative rings with identity, given by explicit tables.

Elements are indices 0..n-1 with 0 the additive zero.  Every constructor
validates the ring axioms by a full table scan, and every derived structure
(ideal, multiplicatively closed set, homomorphism) is immutable.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from wsprime import kernels
from wsprime._lattice import enumerate_spans, join_mask, span_mask
from wsprime._tables import as_table, digest, negation, ring_failure
from wsprime.bits import array_of, indices_of, is_subset, mask_from_array, mask_of, popcount
from wsprime.errors import (
    EmptySet,
    ForeignIdeal,
    ImproperIdeal,
    InvalidOrder,
    NotAHomomorphism,
    NotARing,
    RingMismatch,
    UnknownElement,
    ZeroLocalization,
    ZeroRing,
)


class FiniteRing:
    """A finite commutative ring with non-zero identity.

    ``recipe`` is a nested tuple describing how the ring was built; it lets a
    serialized report rebuild the structure when full tables are omitted.
    """

    zero = 0

    def __init__(self, add, mul, one: int, label: str, labels: Sequence[str] | None = None,
                 recipe: tuple | None = None, validate: bool = True):
        add = as_table(add)
        n = add.shape[0]
        if n < 2:
            raise ZeroRing(f"ring of order {n}: identity must differ from zero")
        mul = as_table(mul, (n, n))
        if validate:
            failure = ring_failure(add, mul, int(one))
            if failure:
                raise NotARing(failure)
        self.add = add
        self.mul = mul
        self.one = int(one)
        self.label = label
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        self.recipe = recipe if recipe is not None else ("table",)

    @property
    def order(self) -> int:
        return self.add.shape[0]

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteRing({self.label}, order={self.order})"

    @cached_property
    def neg(self) -> np.ndarray:
        return negation(self.add)

    @cached_property
    def digest(self) -> str:
        return digest(self.add, self.mul, extra=f"one={self.one}")

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    @cached_property
    def units(self) -> tuple[int, ...]:
        return tuple(int(x) for x in np.flatnonzero((self.mul == self.one).any(axis=1)))

    @cached_property
    def nilpotents(self) -> tuple[int, ...]:
        return ideal_radical(self.zero_ideal).elements

    @cached_property
    def zero_ideal(self) -> "Ideal":
        return Ideal(self, 1, ())

    @cached_property
    def unit_ideal(self) -> "Ideal":
        return Ideal(self, self.full_mask, (self.one,))

    @cached_property
    def _label_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def index_of(self, label: str) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise UnknownElement(f"{label!r} is not an element of {self.label}") from None

    def check_index(self, i) -> int:
        i = int(i)
        if not 0 <= i < self.order:
            raise UnknownElement(f"{i} is not an element index of {self.label}")
        return i

    def plus(self, a: int, b: int) -> int:
        return int(self.add[a, b])

    def times(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def minus(self, a: int, b: int) -> int:
        return int(self.add[a, self.neg[b]])

    def power(self, a: int, k: int) -> int:
        out = self.one
        for _ in range(k):
            out = int(self.mul[out, a])
        return out

    @cached_property
    def is_reduced(self) -> bool:
        return len(self.nilpotents) == 1


class _IndexSet:
    """Shared plumbing for immutable subsets of a host structure."""

    __slots__ = ("host", "mask", "__dict__")

    def __init__(self, host, mask: int):
        self.host = host
        self.mask = mask

    @cached_property
    def elements(self) -> tuple[int, ...]:
        return indices_of(self.mask)

    @cached_property
    def array(self) -> np.ndarray:
        return array_of(self.mask, self.host.order)

    def __contains__(self, i) -> bool:
        return bool(self.mask >> int(i) & 1)

    def __len__(self) -> int:
        return popcount(self.mask)

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other) -> bool:
        return type(other) is type(self) and other.host is self.host and other.mask == self.mask

    def __hash__(self) -> int:
        return hash((type(self).__name__, id(self.host), self.mask))

    def issubset(self, other) -> bool:
        return is_subset(self.mask, other.mask)

    def labelled(self) -> list[str]:
        return [self.host.labels[i] for i in self.elements]


class Ideal(_IndexSet):
    __slots__ = ("generators",)

    def __init__(self, host: FiniteRing, mask: int, generators: Iterable[int] = ()):
        super().__init__(host, mask)
        self.generators = tuple(int(g) for g in generators)

    @property
    def is_proper(self) -> bool:
        return self.mask != self.host.full_mask

    @property
    def is_zero(self) -> bool:
        return self.mask == 1

    def __repr__(self) -> str:
        return f"Ideal({self.host.label}: {{{', '.join(self.labelled())}}})"


class MultClosedSet(_IndexSet):
    __slots__ = ()

    @property
    def contains_zero(self) -> bool:
        return bool(self.mask & 1)

    def __repr__(self) -> str:
        return f"MultClosedSet({self.host.label}: {{{', '.join(self.labelled())}}})"


class RingHom:
    """A ring homomorphism given by its image table; validated on construction."""

    def __init__(self, domain: FiniteRing, codomain: FiniteRing, image, validate: bool = True):
        img = np.ascontiguousarray(np.asarray(image, dtype=np.int32))
        if img.shape != (domain.order,):
            raise NotAHomomorphism(f"image table has length {img.size}, expected {domain.order}")
        img.setflags(write=False)
        self.domain = domain
        self.codomain = codomain
        self.image = img
        if validate:
            failure = self._failure()
            if failure:
                raise NotAHomomorphism(failure)

    def _failure(self) -> str | None:
        d, c, f = self.domain, self.codomain, self.image
        if f.min() < 0 or f.max() >= c.order:
            return "image index out of range"
        if f[0] != 0:
            return "f(0) != 0"
        if f[d.one] != c.one:
            return "f(1) != 1"
        bad = f[d.add] != c.add[f[:, None], f[None, :]]
        if bad.any():
            a, b = np.argwhere(bad)[0]
            return f"f({a}+{b}) != f({a})+f({b})"
        bad = f[d.mul] != c.mul[f[:, None], f[None, :]]
        if bad.any():
            a, b = np.argwhere(bad)[0]
            return f"f({a}*{b}) != f({a})*f({b})"
        return None

    def __call__(self, i: int) -> int:
        return int(self.image[i])

    @cached_property
    def is_surjective(self) -> bool:
        return len(np.unique(self.image)) == self.codomain.order

    @cached_property
    def is_injective(self) -> bool:
        return len(np.unique(self.image)) == self.domain.order

    def kernel(self) -> Ideal:
        return Ideal(self.domain, mask_from_array(self.image == 0))

    def image_of(self, subset) -> int:
        return mask_of(int(self.image[i]) for i in subset)

    def __repr__(self) -> str:
        return f"RingHom({self.domain.label} -> {self.codomain.label})"


# ---------------------------------------------------------------- constructors


def make_ring(add, mul, one: int = 1, label: str = "table", labels=None) -> FiniteRing:
    return FiniteRing(add, mul, one, label, labels, ("table",))


def make_cyclic_ring(n: int) -> FiniteRing:
    if n < 2:
        raise InvalidOrder(f"Z_n needs n >= 2, got {n}")
    ar = np.arange(n)
    return FiniteRing((ar[:, None] + ar[None, :]) % n, (ar[:, None] * ar[None, :]) % n, 1,
                      f"Z_{n}", recipe=("zn", n))


def encode_pair(i1: int, i2: int, n2: int) -> int:
    return i1 * n2 + i2


def decode_pair(i: int, n2: int) -> tuple[int, int]:
    return divmod(int(i), n2)


def pair_tables(t1: np.ndarray, t2: np.ndarray) -> np.ndarray:
    """Componentwise table on pairs, pair (i1, i2) encoded as i1*n2 + i2."""
    r1, c1 = t1.shape
    r2, c2 = t2.shape
    out = t1[:, None, :, None] * c2 + t2[None, :, None, :]
    return out.reshape(r1 * r2, c1 * c2)


def make_product_ring(r1: FiniteRing, r2: FiniteRing) -> FiniteRing:
    n2 = r2.order
    labels = [f"({a},{b})" for a in r1.labels for b in r2.labels]
    return FiniteRing(pair_tables(r1.add, r2.add), pair_tables(r1.mul, r2.mul),
                      encode_pair(r1.one, r2.one, n2), f"{r1.label}x{r2.label}", labels,
                      ("product", r1.recipe, r2.recipe), validate=False)


def _coset_reps(add: np.ndarray, sub: tuple[int, ...]) -> tuple[np.ndarray, np.ndarray]:
    """Canonical representative (smallest index) of every coset, and the reps."""
    rep_of = add[:, list(sub)].min(axis=1)
    reps = np.unique(rep_of)
    return rep_of, reps


def quotient_ring(r: FiniteRing, ideal: "Ideal") -> tuple[FiniteRing, RingHom]:
    if ideal.host is not r:
        raise ForeignIdeal("ideal belongs to a different ring")
    if not ideal.is_proper:
        raise ZeroRing("quotient by the whole ring is the zero ring")
    rep_of, reps = _coset_reps(r.add, ideal.elements)
    new_index = np.full(r.order, -1, dtype=np.int32)
    new_index[reps] = np.arange(len(reps))
    proj = new_index[rep_of]
    sub = np.ix_(reps, reps)
    add = proj[r.add[sub]]
    mul = proj[r.mul[sub]]
    labels = [f"[{r.labels[x]}]" for x in reps]
    q = FiniteRing(add, mul, int(proj[r.one]), f"{r.label}/<{','.join(r.labels[g] for g in ideal.generators) or '0'}>",
                   labels, ("quotient", r.recipe, ideal.generators), validate=False)
    return q, RingHom(r, q, proj, validate=False)


def identity_hom(r: FiniteRing) -> RingHom:
    return RingHom(r, r, np.arange(r.order), validate=False)


def natural_hom(domain: FiniteRing, codomain: FiniteRing) -> RingHom:
    """Residue reduction Z_n -> Z_d (d | n), or the identity."""
    if domain is codomain:
        return identity_hom(domain)
    if domain.recipe[0] == "zn" and codomain.recipe[0] == "zn":
        n, d = domain.recipe[1], codomain.recipe[1]
        if n % d:
            raise NotAHomomorphism(f"no unital map Z_{n} -> Z_{d}")
        return RingHom(domain, codomain, np.arange(n) % d)
    raise NotAHomomorphism(f"no natural map {domain.label} -> {codomain.label}")


# --------------------------------------------------------------------- ideals


def _require_same_host(*parts):
    host = parts[0].host
    for p in parts[1:]:
        if p.host is not host:
            raise RingMismatch("operands live in different rings")
    return host


def span_ideal(r: FiniteRing, gens: Iterable[int]) -> Ideal:
    gens = [r.check_index(g) for g in gens]
    return Ideal(r, span_mask(r.add, r.mul, gens), gens)


def ideal_from_elements(r: FiniteRing, elems: Iterable[int]) -> Ideal:
    """Wrap an element set already known to be an ideal."""
    elems = [r.check_index(e) for e in elems]
    ideal = span_ideal(r, elems)
    if ideal.mask != mask_of(elems) | 1:
        raise ForeignIdeal("element set is not closed under the ideal operations")
    return ideal


def ideal_colon(i: Ideal, j: Ideal) -> Ideal:
    """(I : J) = {r : rJ subset of I}."""
    r = _require_same_host(i, j)
    ok = i.array.astype(bool)[r.mul[:, list(j.elements)]].all(axis=1)
    return Ideal(r, mask_from_array(ok))


def annihilator(i: Ideal) -> Ideal:
    return ideal_colon(i.host.zero_ideal, i)


def ideal_radical(i: Ideal) -> Ideal:
    r = i.host
    inside = i.array.astype(bool)
    power = np.arange(r.order)
    hit = inside[power].copy()
    for _ in range(r.order):
        power = r.mul[power, np.arange(r.order)]
        hit |= inside[power]
    return Ideal(r, mask_from_array(hit))


def combine_ideals(kind: str, i: Ideal, j: Ideal) -> Ideal:
    r = _require_same_host(i, j)
    if kind == "sum":
        return Ideal(r, join_mask(r.add, i.mask, j.mask), i.generators + j.generators)
    if kind == "product":
        prods = r.mul[np.ix_(i.elements, j.elements)].ravel()
        return span_ideal(r, sorted(set(int(p) for p in prods)))
    if kind == "intersection":
        return Ideal(r, i.mask & j.mask)
    raise ValueError(f"unknown ideal combination {kind!r}")


def enumerate_ideals(r: FiniteRing) -> list[Ideal]:
    cached = r.__dict__.get("_ideals")
    if cached is None:
        cached = [Ideal(r, mk, gens) for mk, gens in enumerate_spans(r.add, r.mul)]
        r.__dict__["_ideals"] = cached
    return list(cached)


def zero_divisors_on_quotient(r: FiniteRing, i: Ideal) -> tuple[int, ...]:
    """{a : a*x in I for some x outside I}; the zero divisors of R/I pulled back."""
    if i.host is not r:
        raise ForeignIdeal("ideal belongs to a different ring")
    if not i.is_proper:
        raise ImproperIdeal("zero divisors on R/R are undefined")
    inside = i.array.astype(bool)
    hit = (inside[r.mul] & ~inside[None, :]).any(axis=1)
    return tuple(int(x) for x in np.flatnonzero(hit))


def prime_ideals(r: FiniteRing) -> list[Ideal]:
    out = []
    for ideal in enumerate_ideals(r):
        if ideal.is_proper and set(zero_divisors_on_quotient(r, ideal)) == set(ideal.elements):
            out.append(ideal)
    return out


# ------------------------------------------------------ multiplicative subsets


def _mult_closure(r: FiniteRing, elems: Iterable[int]) -> int:
    items = []
    seen = 0
    for e in elems:
        e = r.check_index(e)
        if not seen >> e & 1:
            seen |= 1 << e
            items.append(e)
    i = 0
    while i < len(items):
        for j in range(i + 1):
            z = int(r.mul[items[i], items[j]])
            if not seen >> z & 1:
                seen |= 1 << z
                items.append(z)
        i += 1
    return seen


def make_mult_set(r: FiniteRing, elems: Iterable[int]) -> MultClosedSet:
    elems = list(elems)
    if not elems:
        raise EmptySet("a multiplicatively closed set must be nonempty")
    return MultClosedSet(r, _mult_closure(r, elems))


def saturate(s: MultClosedSet) -> MultClosedSet:
    r = s.host
    inside = s.array.astype(bool)
    return MultClosedSet(r, mask_from_array(inside[r.mul].any(axis=1)))


def image_mult_set(f: RingHom, s: MultClosedSet) -> MultClosedSet:
    return MultClosedSet(f.codomain, f.image_of(s.elements))


# ----------------------------------------------------------- homs and quotients


def ring_iso(a: FiniteRing, b: FiniteRing, image) -> RingHom:
    """A validated bijective homomorphism; raises NotAHomomorphism otherwise."""
    h = RingHom(a, b, image)
    if not (h.is_injective and h.is_surjective):
        raise NotAHomomorphism("map is not bijective")
    return h


# --------------------------------------------------------------- localization


class LocalizedRing(FiniteRing):
    """S^-1 R built from formal fractions r/s, with the pair -> class lookup."""

    def __init__(self, base: FiniteRing, mset: MultClosedSet, classes: np.ndarray,
                 add, mul, one, labels):
        super().__init__(add, mul, one, f"S^-1({base.label})", labels,
                         ("localize", base.recipe, mset.elements))
        self.base = base
        self.mult_set = mset
        self.svals = mset.elements
        self._classes = classes
        self._spos = {s: k for k, s in enumerate(self.svals)}

    def class_of(self, r: int, s: int) -> int:
        return int(self._classes[int(r) * len(self.svals) + self._spos[int(s)]])


def _fraction_tables(add_src, act_src, mul_r, svals, classes):
    """Representatives and addition table of a fraction construction."""
    k = len(svals)
    spos = {s: i for i, s in enumerate(svals)}
    nclass = int(classes.max()) + 1
    first = np.full(nclass, -1, dtype=np.int64)
    for p in range(len(classes) - 1, -1, -1):
        first[classes[p]] = p
    reps = [(int(p // k), svals[int(p % k)]) for p in first]

    def cls(m, s):
        return int(classes[int(m) * k + spos[int(s)]])

    add = np.zeros((nclass, nclass), dtype=np.int32)
    for c, (m, s) in enumerate(reps):
        for d, (m2, s2) in enumerate(reps):
            num = add_src[act_src[s2, m], act_src[s, m2]]
            add[c, d] = cls(num, mul_r[s, s2])
    return reps, cls, add


def localize_ring(r: FiniteRing, s: MultClosedSet) -> tuple[LocalizedRing, RingHom]:
    if s.host is not r:
        raise RingMismatch("multiplicative set belongs to a different ring")
    if s.contains_zero:
        raise ZeroLocalization("S contains 0, so S^-1 R is the zero ring")
    svals = s.elements
    classes = np.asarray(kernels.fraction_classes(r.mul, r.mul, np.asarray(svals, dtype=np.int32)))
    reps, cls, add = _fraction_tables(r.add, r.mul, r.mul, svals, classes)
    nclass = len(reps)
    mul = np.zeros((nclass, nclass), dtype=np.int32)
    for c, (a, t) in enumerate(reps):
        for d, (b, u) in enumerate(reps):
            mul[c, d] = cls(r.mul[a, b], r.mul[t, u])
    s0 = svals[0]
    one = cls(s0, s0)
    labels = [f"{r.labels[a]}/{r.labels[t]}" for a, t in reps]
    loc = LocalizedRing(r, s, classes, add, mul, one, labels)
    hom = RingHom(r, loc, [cls(r.mul[x, s0], s0) for x in range(r.order)])
    return loc, hom


def torsion_ideal(s: MultClosedSet) -> Ideal:
    """{r : ur = 0 for some u in S}, the kernel of R -> S^-1 R."""
    r = s.host
    hit = (r.mul[list(s.elements)] == 0).any(axis=0)
    return Ideal(r, mask_from_array(hit))
