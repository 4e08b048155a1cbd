"""First-hit search over the canonical corpus order."""

from __future__ import annotations

from dataclasses import dataclass

from wsprime.classify import (
    is_disjoint,
    is_prime,
    is_s_prime,
    is_weakly_prime,
    is_weakly_s_prime,
    s_prime_witnesses,
    weakly_s_prime_witnesses,
)
from wsprime.errors import UnknownPredicate
from wsprime.harness.corpus import Corpus, CorpusSpec, cached_corpus
from wsprime.modules import residual_in_ring

PREDICATES = (
    "weakly_s_prime_not_s_prime",
    "weakly_s_prime_not_weakly_prime",
    "s_prime_not_prime",
    "not_weakly_prime_but_weakly_s_prime_intersection",
)

FIELDS = ("prime", "weakly_prime", "s_prime", "weakly_s_prime", "disjoint")


@dataclass
class SearchHit:
    predicate: str
    index: int
    instance: object
    extra: dict

    def as_dict(self) -> dict:
        inst = self.instance
        out = {
            "index": self.index,
            "ring": inst.ring.label,
            "module": inst.module.label,
            "N": inst.sub.labelled(),
            "N_indices": list(inst.sub.elements),
            "S": inst.mset.labelled(),
            "S_indices": list(inst.mset.elements),
            "verdicts": verdicts(inst.sub, inst.mset),
        }
        out.update(self.extra)
        return out


def verdicts(n, s) -> dict:
    disjoint = is_disjoint(n, s)
    return {
        "prime": is_prime(n),
        "weakly_prime": is_weakly_prime(n),
        "s_prime": is_s_prime(n, s),
        "weakly_s_prime": is_weakly_s_prime(n, s),
        "disjoint": disjoint,
        "s_prime_witnesses": list(s_prime_witnesses(n, s)) if disjoint else [],
        "weakly_s_prime_witnesses": list(weakly_s_prime_witnesses(n, s)) if disjoint else [],
    }


def parse_custom(text: str) -> dict[str, bool]:
    """'custom:weakly_s_prime=true,prime=false' -> {field: value}."""
    body = text.split(":", 1)[1] if ":" in text else ""
    out = {}
    for part in filter(None, (p.strip() for p in body.split(","))):
        key, sep, val = part.partition("=")
        key, val = key.strip(), val.strip().lower()
        if not sep or key not in FIELDS or val not in ("true", "false"):
            raise UnknownPredicate(f"bad custom clause {part!r}; fields are {FIELDS}")
        out[key] = val == "true"
    if not out:
        raise UnknownPredicate("custom predicate needs at least one field=value clause")
    return out


def _intersection_hit(inst):
    n, s, m = inst.sub, inst.mset, inst.module
    if not is_weakly_s_prime(n, s):
        return None
    for k in m.submodules:
        if not residual_in_ring(k).mask & s.mask:
            continue
        meet = _lattice_member(m, n.mask & k.mask)
        if not is_weakly_prime(meet) and is_weakly_s_prime(meet, s):
            return {"K": k.labelled(), "K_indices": list(k.elements),
                    "intersection": meet.labelled()}
    return None


def _lattice_member(m, mask):
    for sub in m.submodules:
        if sub.mask == mask:
            return sub
    raise KeyError(mask)


def _matcher(predicate: str):
    if predicate == "weakly_s_prime_not_s_prime":
        return lambda i: {} if is_weakly_s_prime(i.sub, i.mset) and not is_s_prime(i.sub, i.mset) else None
    if predicate == "weakly_s_prime_not_weakly_prime":
        return lambda i: {} if is_weakly_s_prime(i.sub, i.mset) and not is_weakly_prime(i.sub) else None
    if predicate == "s_prime_not_prime":
        return lambda i: {} if is_s_prime(i.sub, i.mset) and not is_prime(i.sub) else None
    if predicate == "not_weakly_prime_but_weakly_s_prime_intersection":
        return _intersection_hit
    if predicate.startswith("custom"):
        want = parse_custom(predicate)

        def custom(i):
            v = verdicts(i.sub, i.mset)
            return {} if all(v[k] == val for k, val in want.items()) else None
        return custom
    raise UnknownPredicate(predicate)


def _is_field(r) -> bool:
    return len(r.units) == r.order - 1


def search(predicate: str, corpus: Corpus | CorpusSpec | None = None,
           fields_only: bool = False) -> SearchHit | None:
    match = _matcher(predicate)
    if corpus is None or isinstance(corpus, CorpusSpec):
        corpus = cached_corpus(corpus)
    for inst in corpus.instances():
        if fields_only and not _is_field(inst.ring):
            continue
        extra = match(inst)
        if extra is not None:
            return SearchHit(predicate, inst.index, inst, extra)
    return None
