"""Finite unital modules over finite rings, submodules, residuals and maps."""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

from wsprime import kernels
from wsprime._lattice import enumerate_spans, join_mask, span_mask
from wsprime._tables import as_table, digest, module_failure, negation
from wsprime.bits import mask_from_array, mask_of
from wsprime.errors import (
    ForeignSubmodule,
    HostMismatch,
    ImproperSubmodule,
    IncompatibleAction,
    NotAHomomorphism,
    NotAModule,
    NotApplicable,
    RingMismatch,
    ZeroLocalization,
)
from wsprime.rings import (
    FiniteRing,
    Ideal,
    MultClosedSet,
    RingHom,
    _fraction_tables,
    _IndexSet,
    combine_ideals,
    identity_hom,
    localize_ring,
    make_product_ring,
    pair_tables,
    quotient_ring,
)


class NonMultiplicationWarning(UserWarning):
    """Submodule product requested on a host that is not a multiplication module."""


class FiniteModule:
    zero = 0

    def __init__(self, ring: FiniteRing, add, act, label: str, labels=None,
                 recipe: tuple | None = None, validate: bool = True):
        add = as_table(add)
        n = add.shape[0]
        act = as_table(act, (ring.order, n))
        if validate:
            failure = module_failure(ring.add, ring.mul, ring.one, add, act)
            if failure:
                raise NotAModule(failure)
        self.ring = ring
        self.add = add
        self.act = act
        self.label = label
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        self.recipe = recipe if recipe is not None else ("table",)

    @property
    def order(self) -> int:
        return self.add.shape[0]

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteModule({self.label} over {self.ring.label}, order={self.order})"

    @cached_property
    def neg(self) -> np.ndarray:
        return negation(self.add)

    @cached_property
    def digest(self) -> str:
        return digest(self.add, self.act, extra=self.ring.digest)

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    @cached_property
    def zero_submodule(self) -> "Submodule":
        return Submodule(self, 1, ())

    @cached_property
    def whole(self) -> "Submodule":
        return Submodule(self, self.full_mask, tuple(range(1, self.order)))

    @cached_property
    def submodules(self) -> tuple["Submodule", ...]:
        return tuple(Submodule(self, mk, gens) for mk, gens in enumerate_spans(self.add, self.act))

    @cached_property
    def _label_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def index_of(self, label: str) -> int:
        from wsprime.errors import UnknownElement

        try:
            return self._label_index[label]
        except KeyError:
            raise UnknownElement(f"{label!r} is not an element of {self.label}") from None

    def check_index(self, i) -> int:
        from wsprime.errors import UnknownElement

        i = int(i)
        if not 0 <= i < self.order:
            raise UnknownElement(f"{i} is not an element index of {self.label}")
        return i

    def plus(self, a: int, b: int) -> int:
        return int(self.add[a, b])

    def minus(self, a: int, b: int) -> int:
        return int(self.add[a, self.neg[b]])

    def scale(self, r: int, m: int) -> int:
        return int(self.act[r, m])


class Submodule(_IndexSet):
    __slots__ = ("generators",)

    def __init__(self, host: FiniteModule, mask: int, generators: Iterable[int] = ()):
        super().__init__(host, mask)
        self.generators = tuple(int(g) for g in generators)

    @property
    def is_proper(self) -> bool:
        return self.mask != self.host.full_mask

    @property
    def is_zero(self) -> bool:
        return self.mask == 1

    @cached_property
    def residual(self) -> Ideal:
        return residual_in_ring(self)

    def __repr__(self) -> str:
        return f"Submodule({self.host.label}: {{{', '.join(self.labelled())}}})"


class ModuleHom:
    """Additive map with h(rm) = f(r) h(m), where f is the base-ring bridge."""

    def __init__(self, domain: FiniteModule, codomain: FiniteModule, image,
                 ring_map: RingHom | None = None, validate: bool = True):
        img = np.ascontiguousarray(np.asarray(image, dtype=np.int32))
        if img.shape != (domain.order,):
            raise NotAHomomorphism(f"image table has length {img.size}, expected {domain.order}")
        img.setflags(write=False)
        if ring_map is None:
            if domain.ring is not codomain.ring:
                raise RingMismatch("modules over different rings need a ring map")
            ring_map = identity_hom(domain.ring)
        elif ring_map.domain is not domain.ring or ring_map.codomain is not codomain.ring:
            raise RingMismatch("ring map does not connect the two base rings")
        self.domain = domain
        self.codomain = codomain
        self.image = img
        self.ring_map = ring_map
        if validate:
            failure = self._failure()
            if failure:
                raise IncompatibleAction(failure)

    def _failure(self) -> str | None:
        d, c, h, f = self.domain, self.codomain, self.image, self.ring_map.image
        if h.min() < 0 or h.max() >= c.order:
            return "image index out of range"
        bad = h[d.add] != c.add[h[:, None], h[None, :]]
        if bad.any():
            a, b = np.argwhere(bad)[0]
            return f"h({a}+{b}) != h({a})+h({b})"
        bad = h[d.act] != c.act[f[:, None], h[None, :]]
        if bad.any():
            r, m = np.argwhere(bad)[0]
            return f"h({r}*{m}) != f({r})*h({m})"
        return None

    def __call__(self, m: int) -> int:
        return int(self.image[m])

    @cached_property
    def is_surjective(self) -> bool:
        return len(np.unique(self.image)) == self.codomain.order

    @cached_property
    def is_injective(self) -> bool:
        return len(np.unique(self.image)) == self.domain.order

    def kernel(self) -> Submodule:
        return Submodule(self.domain, mask_from_array(self.image == 0))

    def __repr__(self) -> str:
        return f"ModuleHom({self.domain.label} -> {self.codomain.label})"


# ---------------------------------------------------------------- constructors


def make_module(ring: FiniteRing, add, act, label: str = "table", labels=None) -> FiniteModule:
    return FiniteModule(ring, add, act, label, labels, ("table",))


def regular_module(ring: FiniteRing) -> FiniteModule:
    cached = ring.__dict__.get("_regular")
    if cached is None:
        cached = FiniteModule(ring, ring.add, ring.mul, ring.label, ring.labels,
                              ("regular", ring.recipe), validate=False)
        ring.__dict__["_regular"] = cached
    return cached


def zero_module(ring: FiniteRing) -> FiniteModule:
    return FiniteModule(ring, [[0]], np.zeros((ring.order, 1), dtype=np.int32), "0",
                        ("0",), ("zero", ring.recipe), validate=False)


def cyclic_module(ring: FiniteRing, n: int) -> FiniteModule:
    """Z_n as a module over a ring whose additive order is a multiple of n.

    Only meaningful for Z_k with n | k, where r.m = (r mod n) m.
    """
    if ring.recipe[0] != "zn" or ring.recipe[1] % n:
        raise NotAModule(f"Z_{n} is not naturally a {ring.label}-module")
    ar = np.arange(n)
    rr = np.arange(ring.order)
    return FiniteModule(ring, (ar[:, None] + ar[None, :]) % n, (rr[:, None] * ar[None, :]) % n,
                        f"Z_{n}", recipe=("zn_module", ring.recipe, n))


def product_module(m1: FiniteModule, m2: FiniteModule, ring: FiniteRing | None = None) -> FiniteModule:
    """M1 x M2 over R1 x R2 with componentwise action."""
    if ring is None:
        ring = make_product_ring(m1.ring, m2.ring)
    labels = [f"({a},{b})" for a in m1.labels for b in m2.labels]
    return FiniteModule(ring, pair_tables(m1.add, m2.add), pair_tables(m1.act, m2.act),
                        f"{m1.label}x{m2.label}", labels, ("product", m1.recipe, m2.recipe),
                        validate=False)


def direct_sum(m1: FiniteModule, m2: FiniteModule) -> FiniteModule:
    """M1 + M2 over their common ring (diagonal action)."""
    if m1.ring is not m2.ring:
        raise RingMismatch("direct sum needs modules over the same ring")
    n2 = m2.order
    act = (m1.act[:, :, None] * n2 + m2.act[:, None, :]).reshape(m1.ring.order, -1)
    labels = [f"({a},{b})" for a in m1.labels for b in m2.labels]
    return FiniteModule(m1.ring, pair_tables(m1.add, m2.add), act, f"{m1.label}+{m2.label}",
                        labels, ("sum", m1.recipe, m2.recipe), validate=False)


def quotient_module(m: FiniteModule, k: Submodule) -> tuple[FiniteModule, ModuleHom]:
    if k.host is not m:
        raise ForeignSubmodule("submodule belongs to a different module")
    rep_of = m.add[:, list(k.elements)].min(axis=1)
    reps = np.unique(rep_of)
    new_index = np.full(m.order, -1, dtype=np.int32)
    new_index[reps] = np.arange(len(reps))
    proj = new_index[rep_of]
    add = proj[m.add[np.ix_(reps, reps)]]
    act = proj[m.act[:, reps]]
    labels = [f"[{m.labels[x]}]" for x in reps]
    q = FiniteModule(m.ring, add, act, f"{m.label}/<{','.join(m.labels[g] for g in k.generators) or '0'}>",
                     labels, ("quotient", m.recipe, k.generators), validate=False)
    return q, ModuleHom(m, q, proj, validate=False)


def restrict_scalars(m: FiniteModule, f: RingHom) -> FiniteModule:
    """View a codomain-module as a domain-module through f."""
    if f.codomain is not m.ring:
        raise RingMismatch("ring map does not land in the module's ring")
    return FiniteModule(f.domain, m.add, m.act[f.image], f"{m.label}|{f.domain.label}", m.labels,
                        ("restrict", m.recipe), validate=False)


def submodule_as_module(n: Submodule) -> tuple[FiniteModule, ModuleHom]:
    """N as a module in its own right, with its inclusion into the host."""
    m = n.host
    elems = np.asarray(n.elements)
    pos = np.full(m.order, -1, dtype=np.int32)
    pos[elems] = np.arange(len(elems))
    add = pos[m.add[np.ix_(elems, elems)]]
    act = pos[m.act[:, elems]]
    sub = FiniteModule(m.ring, add, act, f"{m.label}>{len(elems)}", [m.labels[e] for e in elems],
                       ("submodule", m.recipe, n.elements), validate=False)
    return sub, ModuleHom(sub, m, elems, validate=False)


def descend_scalars(m: FiniteModule, ideal: Ideal) -> tuple[FiniteModule, RingHom]:
    """M as an R/I-module, for an ideal I that kills M."""
    if ideal.host is not m.ring:
        raise RingMismatch("ideal lives over a different ring")
    if (m.act[list(ideal.elements)] != 0).any():
        raise IncompatibleAction("the ideal does not annihilate the module")
    rbar, eta = quotient_ring(m.ring, ideal)
    reps = np.zeros(rbar.order, dtype=np.intp)
    for r in range(m.ring.order - 1, -1, -1):
        reps[eta.image[r]] = r
    out = FiniteModule(rbar, m.add, m.act[reps], f"{m.label}|{rbar.label}", m.labels,
                       ("descend", m.recipe, ideal.elements), validate=False)
    return out, eta


def scalar_hom(m: FiniteModule, r: int) -> ModuleHom:
    return ModuleHom(m, m, m.act[r], validate=False)


def module_from_table_file(ring: FiniteRing, path) -> FiniteModule:
    """Load {"add": [[...]], "action": [[...]], "labels": [...]} from JSON."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    return FiniteModule(ring, data["add"], data["action"], str(path), data.get("labels"),
                        ("file", str(path)))


# ------------------------------------------------------------------ submodules


def span_submodule(m: FiniteModule, gens: Iterable[int]) -> Submodule:
    gens = [m.check_index(g) for g in gens]
    return Submodule(m, span_mask(m.add, m.act, gens), gens)


def submodule_from_elements(m: FiniteModule, elems: Iterable[int]) -> Submodule:
    elems = [m.check_index(e) for e in elems]
    sub = span_submodule(m, elems)
    if sub.mask != mask_of(elems) | 1:
        raise ForeignSubmodule("element set is not a submodule")
    return sub


def submodule_of_mask(m: FiniteModule, mask: int) -> Submodule:
    """Look up the canonical Submodule object with this element mask."""
    for sub in m.submodules:
        if sub.mask == mask:
            return sub
    raise ForeignSubmodule("mask is not a submodule")


def enumerate_submodules(m: FiniteModule) -> list[Submodule]:
    return list(m.submodules)


def _require_same_host(*parts):
    host = parts[0].host
    for p in parts[1:]:
        if p.host is not host:
            raise HostMismatch("submodules live in different modules")
    return host


def join(n: Submodule, k: Submodule) -> Submodule:
    m = _require_same_host(n, k)
    return Submodule(m, join_mask(m.add, n.mask, k.mask), n.generators + k.generators)


def meet(n: Submodule, k: Submodule) -> Submodule:
    m = _require_same_host(n, k)
    return Submodule(m, n.mask & k.mask)


def residual_in_ring(n: Submodule, m: FiniteModule | None = None) -> Ideal:
    """(N :_R M) = {r : rM in N}."""
    if m is not None and n.host is not m:
        raise ForeignSubmodule("submodule belongs to a different module")
    host = n.host
    ok = n.array.astype(bool)[host.act].all(axis=1)
    return Ideal(host.ring, mask_from_array(ok))


def residual_of_subset(n: Submodule, a: Iterable[int]) -> Submodule:
    """(N :_M A) = {m : am in N for all a in A}."""
    host = n.host
    a = [host.ring.check_index(x) for x in a]
    ok = n.array.astype(bool)[host.act[a]].all(axis=0)
    return Submodule(host, mask_from_array(ok))


def residual_of_submodules(n: Submodule, k: Submodule) -> Ideal:
    """(N :_R K) = {r : rK in N}."""
    host = _require_same_host(n, k)
    ok = n.array.astype(bool)[host.act[:, list(k.elements)]].all(axis=1)
    return Ideal(host.ring, mask_from_array(ok))


def ideal_times(i: Ideal, n: Submodule) -> Submodule:
    """IN, the submodule generated by products in."""
    host = n.host
    if i.host is not host.ring:
        raise RingMismatch("ideal and submodule live over different rings")
    prods = np.unique(host.act[np.ix_(i.elements, n.elements)])
    return span_submodule(host, prods.tolist())


def element_times(s: int, n: Submodule) -> Submodule:
    """sN = {sn : n in N}, already a submodule."""
    host = n.host
    return Submodule(host, mask_of(host.act[s, list(n.elements)].tolist()))


@dataclass(frozen=True)
class ModuleInvariants:
    ann: Ideal
    zero_divisors: tuple[int, ...]
    faithful: bool


def module_invariants(m: FiniteModule) -> ModuleInvariants:
    cached = m.__dict__.get("_invariants")
    if cached is None:
        ann = residual_in_ring(m.zero_submodule)
        zd = (m.act[:, 1:] == 0).any(axis=1)
        cached = ModuleInvariants(ann, tuple(int(x) for x in np.flatnonzero(zd)), ann.is_zero)
        m.__dict__["_invariants"] = cached
    return cached


def is_multiplication(m: FiniteModule) -> tuple[bool, dict[Submodule, Ideal]]:
    """Whether (N:M)M = N for every N, with the presentation ideal per submodule."""
    cached = m.__dict__.get("_multiplication")
    if cached is None:
        presentation = {}
        ok = True
        full = m.whole
        for n in m.submodules:
            ideal = residual_in_ring(n)
            presentation[n] = ideal
            if ideal_times(ideal, full).mask != n.mask:
                ok = False
        cached = (ok, presentation)
        m.__dict__["_multiplication"] = cached
    return cached


def submodule_product(n: Submodule, k: Submodule) -> Submodule:
    """NK = (N:M)(K:M)M."""
    m = _require_same_host(n, k)
    if not is_multiplication(m)[0]:
        warnings.warn(f"{m.label} is not a multiplication module", NonMultiplicationWarning,
                      stacklevel=2)
    ideal = combine_ideals("product", residual_in_ring(n), residual_in_ring(k))
    return ideal_times(ideal, m.whole)


def prime_submodules(m: FiniteModule) -> list[Submodule]:
    from wsprime.classify import is_prime_submodule

    return [n for n in m.submodules if n.is_proper and is_prime_submodule(n)[0]]


def m_radical(n: Submodule) -> Submodule:
    if not n.is_proper:
        raise ImproperSubmodule("M-rad is taken of proper submodules")
    m = n.host
    mask = m.full_mask
    for p in prime_submodules(m):
        if n.issubset(p):
            mask &= p.mask
    return Submodule(m, mask)


def m_radical_by_powers(n: Submodule) -> Submodule:
    """{m : (Rm)^k in N for some k}, powers taken with the submodule product."""
    m = n.host
    full = m.whole
    hit = 0
    for x in range(m.order):
        base = residual_in_ring(span_submodule(m, [x]))
        power = base
        for _ in range(m.ring.order + 1):
            if ideal_times(power, full).issubset(n):
                hit |= 1 << x
                break
            nxt = combine_ideals("product", power, base)
            if nxt.mask == power.mask:
                break
            power = nxt
    return Submodule(m, hit)


# ------------------------------------------------------------------- mappings


def hom_image(h: ModuleHom, n: Submodule) -> Submodule:
    if n.host is not h.domain:
        raise ForeignSubmodule("submodule is not in the domain")
    return span_submodule(h.codomain, np.unique(h.image[list(n.elements)]).tolist())


def hom_preimage(h: ModuleHom, k: Submodule) -> Submodule:
    if k.host is not h.codomain:
        raise ForeignSubmodule("submodule is not in the codomain")
    return Submodule(h.domain, mask_from_array(k.array[h.image].astype(bool)))


# --------------------------------------------------------------- localization


class FractionModule:
    """S^-1 M as formal fractions, with the scalar ring S^-1 R."""

    def __init__(self, base: FiniteModule, mset: MultClosedSet, carrier: FiniteModule,
                 classes: np.ndarray):
        self.base = base
        self.mult_set = mset
        self.carrier = carrier
        self.ring = carrier.ring
        self._classes = classes
        self._spos = {s: k for k, s in enumerate(mset.elements)}

    @property
    def order(self) -> int:
        return self.carrier.order

    def class_of(self, m: int, s: int) -> int:
        return int(self._classes[int(m) * len(self._spos) + self._spos[int(s)]])

    def localize(self, n: Submodule) -> Submodule:
        """S^-1 N = {n/s}."""
        if n.host is not self.base:
            raise ForeignSubmodule("submodule is not in the localized module")
        mask = 0
        for x in n.elements:
            for s in self._spos:
                mask |= 1 << self.class_of(x, s)
        return Submodule(self.carrier, mask)

    def contract(self, k: Submodule) -> Submodule:
        """{m : m/s in K for some s}."""
        s0 = next(iter(self._spos))
        mask = 0
        for x in range(self.base.order):
            if self.class_of(self.base.act[s0, x], s0) in k:
                mask |= 1 << x
        return Submodule(self.base, mask)


def localize_module(m: FiniteModule, s: MultClosedSet) -> FractionModule:
    r = m.ring
    if s.host is not r:
        raise RingMismatch("multiplicative set belongs to a different ring")
    if s.contains_zero:
        raise ZeroLocalization("S contains 0, so S^-1 M is zero")
    key = ("_fractions", s.mask)
    cached = m.__dict__.get(key)
    if cached is not None:
        return cached
    loc, _ = localize_ring(r, s)
    svals = s.elements
    classes = np.asarray(kernels.fraction_classes(m.act, r.mul, np.asarray(svals, dtype=np.int32)))
    reps, cls, add = _fraction_tables(m.add, m.act, r.mul, svals, classes)
    act = np.zeros((loc.order, len(reps)), dtype=np.int32)
    for c in range(loc.order):
        a, t = (int(v) for v in divmod(int(np.flatnonzero(loc._classes == c)[0]), len(svals)))
        t = svals[t]
        for d, (x, u) in enumerate(reps):
            act[c, d] = cls(m.act[a, x], r.mul[t, u])
    labels = [f"{m.labels[x]}/{r.labels[u]}" for x, u in reps]
    carrier = FiniteModule(loc, add, act, f"S^-1({m.label})", labels,
                           ("localize", m.recipe, svals))
    out = FractionModule(m, s, carrier, classes)
    m.__dict__[key] = out
    return out


def torsion_submodule(m: FiniteModule, s: MultClosedSet) -> Submodule:
    """{m : um = 0 for some u in S}."""
    hit = (m.act[list(s.elements)] == 0).any(axis=0)
    return Submodule(m, mask_from_array(hit))


def fraction_isomorphism(frac: FractionModule) -> tuple[FiniteModule, ModuleHom]:
    """The bijection M/T -> S^-1 M (scalars restricted to R), T the S-torsion.

    The class of m goes to (s0 m)/s0, i.e. m/1; raises NotAHomomorphism
    if the map is not a bijective R-linear map.
    """
    m, s = frac.base, frac.mult_set
    q, proj = quotient_module(m, torsion_submodule(m, s))
    _, canon = localize_ring(m.ring, s)
    if canon.codomain.digest != frac.ring.digest:
        raise NotAHomomorphism("localized rings disagree")
    canon = RingHom(m.ring, frac.ring, canon.image, validate=False)
    target = restrict_scalars(frac.carrier, canon)
    s0 = s.elements[0]
    reps = np.unique(m.add[:, list(torsion_submodule(m, s).elements)].min(axis=1))
    image = [frac.class_of(m.act[s0, x], s0) for x in reps]
    h = ModuleHom(q, target, image)
    if not (h.is_injective and h.is_surjective):
        raise NotAHomomorphism("canonical map M/T -> S^-1 M is not bijective")
    return q, h


def is_s_torsion_free(m: FiniteModule, s: MultClosedSet) -> tuple[int, ...]:
    """All s in S with: rm = 0 implies sr = 0 or sm = 0. Empty means not torsion-free."""
    ann = module_invariants(m).ann
    if s.mask & ann.mask:
        raise NotApplicable("S meets ann(M)")
    r = m.ring
    zero_pairs = m.act == 0
    out = []
    for t in s.elements:
        bad = zero_pairs & (r.mul[t] != 0)[:, None] & (m.act[t] != 0)[None, :]
        if not bad.any():
            out.append(t)
    return tuple(out)
