"""Deterministic corpora of small rings, modules, submodules and multiplicative sets.

Everything is enumerated in a canonical order so that two runs over the same
``CorpusSpec`` visit identical instances in identical order.  Sampling (when a
spec turns off the exhaustive flags) is driven by ``random.Random(seed)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterator

import numpy as np

from wsprime.construct import (
    AmalgamationBundle,
    DuplicationBundle,
    IdealizationBundle,
    build_duplication,
    build_idealization,
)
from wsprime.errors import BudgetExceeded
from wsprime.modules import (
    FiniteModule,
    ModuleHom,
    Submodule,
    cyclic_module,
    direct_sum,
    quotient_module,
    regular_module,
)
from wsprime.rings import (
    FiniteRing,
    MultClosedSet,
    enumerate_ideals,
    make_cyclic_ring,
    make_mult_set,
    make_product_ring,
    natural_hom,
    quotient_ring,
    saturate,
)

KINDS = ("cyclic", "product", "quotient", "idealization", "duplication", "amalgamation")


@dataclass(frozen=True)
class CorpusSpec:
    max_ring_order: int = 16
    max_module_order: int = 36
    kinds: tuple[str, ...] = KINDS
    include_all_submodules: bool = True
    include_all_msets: bool = True
    seed: int = 0
    budget: int = 250_000

    def __post_init__(self):
        if self.max_ring_order < 2 or self.max_module_order < 1:
            raise ValueError("corpus bounds must be positive (ring order at least 2)")
        bad = [k for k in self.kinds if k not in KINDS]
        if bad:
            raise ValueError(f"unknown ring kinds {bad}; expected a subset of {KINDS}")

    def with_bounds(self, **kw) -> "CorpusSpec":
        return replace(self, **kw)

    def as_dict(self) -> dict:
        return {
            "max_ring_order": self.max_ring_order,
            "max_module_order": self.max_module_order,
            "kinds": list(self.kinds),
            "include_all_submodules": self.include_all_submodules,
            "include_all_msets": self.include_all_msets,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class Instance:
    index: int
    module: FiniteModule
    sub: Submodule
    mset: MultClosedSet

    @property
    def ring(self) -> FiniteRing:
        return self.module.ring


@dataclass
class RingEntry:
    kind: str
    ring: FiniteRing
    modules: list[FiniteModule] = field(default_factory=list)


def _fingerprint(r: FiniteRing) -> tuple:
    n = r.order
    add_orders = []
    for x in range(n):
        k, y = 1, x
        while y:
            y = int(r.add[y, x])
            k += 1
        add_orders.append(k)
    diag = r.mul[np.arange(n), np.arange(n)]
    return (n, tuple(sorted(add_orders)), len(r.units), len(r.nilpotents),
            int((diag == np.arange(n)).sum()), tuple(sorted(len(i) for i in enumerate_ideals(r))))


def _cyclic_orders(limit: int) -> list[int]:
    return list(range(2, limit + 1))


class Corpus:
    """Rings, modules, multiplicative sets and construction cases for one spec."""

    def __init__(self, spec: CorpusSpec):
        self.spec = spec
        self._cyclic: dict[int, FiniteRing] = {}
        self._msets: dict[int, list[MultClosedSet]] = {}
        self._rng = random.Random(spec.seed)
        self.entries = self._build_rings()
        for e in self.entries:
            e.modules = self._modules_of(e.ring)
        count = self.count()
        if count > spec.budget:
            raise BudgetExceeded(count, spec.budget)

    # ------------------------------------------------------------- rings
    def zn(self, n: int) -> FiniteRing:
        if n not in self._cyclic:
            self._cyclic[n] = make_cyclic_ring(n)
        return self._cyclic[n]

    def _build_rings(self) -> list[RingEntry]:
        b = self.spec.max_ring_order
        kinds = set(self.spec.kinds)
        out: list[RingEntry] = []
        if "cyclic" in kinds:
            out += [RingEntry("cyclic", self.zn(n)) for n in _cyclic_orders(b)]
        products = []
        for a in range(2, b + 1):
            for c in range(a, b // a + 1):
                products.append(make_product_ring(self.zn(a), self.zn(c)))
        for parts in ((2, 2, 2), (2, 2, 3), (2, 2, 4)):
            if np.prod(parts) <= b:
                r = self.zn(parts[0])
                for p in parts[1:]:
                    r = make_product_ring(r, self.zn(p))
                products.append(r)
        if "product" in kinds:
            out += [RingEntry("product", r) for r in products]
        built = []
        if "idealization" in kinds:
            for n in range(2, b + 1):
                for d in range(2, n + 1):
                    if n % d or n * d > b:
                        continue
                    m = regular_module(self.zn(n)) if d == n else cyclic_module(self.zn(n), d)
                    built.append(RingEntry("idealization", build_idealization(self.zn(n), m).ring))
        if "duplication" in kinds:
            for n in range(2, b + 1):
                r = self.zn(n)
                for j in enumerate_ideals(r):
                    if j.is_zero or not j.is_proper or n * len(j) > b:
                        continue
                    built.append(RingEntry("duplication",
                                           build_duplication(r, j, regular_module(r)).ring))
        if "amalgamation" in kinds:
            for n in range(2, b + 1):
                for d in range(2, n):
                    if n % d:
                        continue
                    f = natural_hom(self.zn(n), self.zn(d))
                    for j in enumerate_ideals(self.zn(d)):
                        if j.is_zero or n * len(j) > b:
                            continue
                        built.append(RingEntry("amalgamation", _amalgamate(f, j).ring))
        if "quotient" in kinds:
            # quotients of every non-cyclic ring, one per isomorphism fingerprint
            seen = {_fingerprint(self.zn(n)) for n in range(2, b + 1)}
            seen |= {_fingerprint(r) for r in products}
            for r in products + [e.ring for e in built]:
                for ideal in enumerate_ideals(r):
                    if ideal.is_zero or not ideal.is_proper:
                        continue
                    q, _ = quotient_ring(r, ideal)
                    fp = _fingerprint(q)
                    if fp in seen:
                        continue
                    seen.add(fp)
                    out.append(RingEntry("quotient", q))
        out += built
        return out

    @property
    def rings(self) -> list[FiniteRing]:
        return [e.ring for e in self.entries]

    # ----------------------------------------------------------- modules
    def _modules_of(self, r: FiniteRing) -> list[FiniteModule]:
        cap = self.spec.max_module_order
        reg = regular_module(r)
        mods = [reg] if r.order <= cap else []
        cyclic = [reg]
        for ideal in enumerate_ideals(r):
            if ideal.is_zero or not ideal.is_proper:
                continue
            q, _ = quotient_module(reg, Submodule(reg, ideal.mask, ideal.generators))
            cyclic.append(q)
            if q.order <= cap:
                mods.append(q)
        for i, a in enumerate(cyclic):
            for b in cyclic[i:]:
                if a.order * b.order <= cap:
                    mods.append(direct_sum(a, b))
        return mods

    @property
    def modules(self) -> list[FiniteModule]:
        return [m for e in self.entries for m in e.modules]

    # ------------------------------------------------------------- msets
    def msets(self, r: FiniteRing) -> list[MultClosedSet]:
        """Zero-free cyclic semigroups, the monoids they generate with 1, and saturations."""
        key = id(r)
        if key not in self._msets:
            found: dict[int, MultClosedSet] = {}
            for a in range(1, r.order):
                for gens in ([a], [r.one, a]):
                    s = make_mult_set(r, gens)
                    if s.contains_zero:
                        continue
                    found.setdefault(s.mask, s)
                    sat = saturate(s)
                    found.setdefault(sat.mask, sat)
            ordered = sorted(found.values(), key=lambda s: (len(s), s.elements))
            if not self.spec.include_all_msets and len(ordered) > 3:
                picks = sorted(self._rng.sample(range(1, len(ordered)), 2))
                ordered = [ordered[0]] + [ordered[i] for i in picks]
            self._msets[key] = ordered
        return self._msets[key]

    def proper_submodules(self, m: FiniteModule) -> list[Submodule]:
        subs = [n for n in m.submodules if n.is_proper]
        if not self.spec.include_all_submodules and len(subs) > 4:
            picks = sorted(self._rng.sample(range(1, len(subs)), 3))
            subs = [subs[0]] + [subs[i] for i in picks]
        return subs

    @cached_property
    def _subs_cache(self) -> dict[int, list[Submodule]]:
        return {id(m): self.proper_submodules(m) for m in self.modules}

    def subs(self, m: FiniteModule) -> list[Submodule]:
        key = id(m)
        if key not in self._subs_cache:
            self._subs_cache[key] = self.proper_submodules(m)
        return self._subs_cache[key]

    # --------------------------------------------------------- instances
    def count(self) -> int:
        return sum(len(self.subs(m)) * len(self.msets(m.ring)) for m in self.modules)

    def instances(self) -> Iterator[Instance]:
        k = 0
        for m in self.modules:
            msets = self.msets(m.ring)
            for n in self.subs(m):
                for s in msets:
                    yield Instance(k, m, n, s)
                    k += 1

    def kind_of(self, r: FiniteRing) -> str:
        for e in self.entries:
            if e.ring is r:
                return e.kind
        return "derived"

    # ------------------------------------------------ construction cases
    def _small_cyclic_modules(self, r: FiniteRing) -> list[FiniteModule]:
        n = r.order
        out = [regular_module(r)]
        out += [cyclic_module(r, d) for d in range(2, n) if n % d == 0]
        return out

    @cached_property
    def idealization_cases(self) -> list[IdealizationBundle]:
        """R x| M for cyclic R and cyclic M with |R||M| within the module bound."""
        cap = self.spec.max_module_order
        out = []
        for n in range(2, self.spec.max_ring_order + 1):
            r = self.zn(n)
            for m in self._small_cyclic_modules(r):
                if n * m.order <= cap:
                    out.append(build_idealization(r, m))
        return out

    @cached_property
    def duplication_cases(self) -> list[DuplicationBundle]:
        cap = self.spec.max_module_order
        out = []
        for n in range(2, self.spec.max_ring_order + 1):
            r = self.zn(n)
            for m in self._small_cyclic_modules(r):
                for j in enumerate_ideals(r):
                    jm_size = _jm_size(j, m)
                    if n * len(j) > cap or m.order * jm_size > cap:
                        continue
                    out.append(build_duplication(r, j, m))
        return out

    @cached_property
    def amalgamation_cases(self) -> list[AmalgamationBundle]:
        """Natural Z_n -> Z_d with reduction maps on regular modules, plus zero maps."""
        cap = self.spec.max_module_order
        out = []
        for n in range(2, self.spec.max_ring_order + 1):
            for d in range(2, n):
                if n % d:
                    continue
                f = natural_hom(self.zn(n), self.zn(d))
                m1, m2 = regular_module(self.zn(n)), regular_module(self.zn(d))
                for j in enumerate_ideals(self.zn(d)):
                    if n * len(j) > cap:
                        continue
                    red = ModuleHom(m1, m2, f.image, f)
                    out.append(AmalgamationBundle(f, j, red))
                    if not j.is_zero:
                        zero = ModuleHom(m1, m2, np.zeros(n, dtype=np.int32), f)
                        out.append(AmalgamationBundle(f, j, zero, f"{m1.label}x^0<{len(j)}>"))
        return out

    @cached_property
    def product_cases(self) -> list[list[tuple[FiniteRing, FiniteModule]]]:
        """Factor lists (two or three factors) whose product module fits the bound."""
        cap = self.spec.max_module_order
        factors = []
        for n in range(2, self.spec.max_ring_order + 1):
            for m in self._small_cyclic_modules(self.zn(n)):
                factors.append((self.zn(n), m))
        out = []
        for i, a in enumerate(factors):
            for b in factors[i:]:
                if a[1].order * b[1].order <= cap and a[0].order * b[0].order <= cap:
                    out.append([a, b])
        for parts in ((2, 2, 2), (2, 2, 3), (2, 3, 3)):
            trio = [(self.zn(p), regular_module(self.zn(p))) for p in parts]
            if int(np.prod(parts)) <= cap:
                out.append(trio)
        return out


def _jm_size(j, m: FiniteModule) -> int:
    from wsprime.modules import ideal_times

    return len(ideal_times(j, m.whole))


def _amalgamate(f, j) -> AmalgamationBundle:
    m1, m2 = regular_module(f.domain), regular_module(f.codomain)
    return AmalgamationBundle(f, j, ModuleHom(m1, m2, f.image, f))


def generate_corpus(spec: CorpusSpec | None = None) -> Corpus:
    return Corpus(spec or CorpusSpec())


_DEFAULT: dict[CorpusSpec, Corpus] = {}


def cached_corpus(spec: CorpusSpec | None = None) -> Corpus:
    """One Corpus per spec per process; the suite and searches share it."""
    spec = spec or CorpusSpec()
    if spec not in _DEFAULT:
        _DEFAULT[spec] = Corpus(spec)
    return _DEFAULT[spec]
