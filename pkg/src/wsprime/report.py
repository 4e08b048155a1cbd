"""JSON-ready serialization of structures and results.

Tables are embedded when the carrier has at most ``TABLE_LIMIT`` elements;
larger structures carry their construction recipe and a digest instead.
``structure_from_record`` rebuilds (and re-validates) a serialized ring or
module, which is what the round-trip tests exercise.
"""

from __future__ import annotations

import json

from wsprime.errors import NotAModule, NotARing
from wsprime.modules import FiniteModule, Submodule
from wsprime.rings import FiniteRing, Ideal, MultClosedSet

TABLE_LIMIT = 64


def plain(obj):
    """Tuples to lists, numpy scalars to ints, recursively."""
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if hasattr(obj, "item") and not isinstance(obj, (str, bytes)):
        return obj.item()
    return obj


def ring_record(r: FiniteRing, name: str | None = None) -> dict:
    rec = {"type": "ring", "name": name, "label": r.label, "order": r.order,
           "one": r.one, "labels": list(r.labels), "digest": r.digest}
    if r.order <= TABLE_LIMIT:
        rec["add"] = r.add.tolist()
        rec["mul"] = r.mul.tolist()
    else:
        rec["recipe"] = plain(r.recipe)
    return rec


def module_record(m: FiniteModule, name: str | None = None) -> dict:
    rec = {"type": "module", "name": name, "label": m.label, "order": m.order,
           "labels": list(m.labels), "digest": m.digest, "ring": ring_record(m.ring)}
    if m.order <= TABLE_LIMIT and m.ring.order <= TABLE_LIMIT:
        rec["add"] = m.add.tolist()
        rec["act"] = m.act.tolist()
    else:
        rec["recipe"] = plain(m.recipe)
    return rec


def subset_record(x, name: str | None = None) -> dict:
    if isinstance(x, Submodule):
        kind, host = "submodule", module_record(x.host)
    elif isinstance(x, Ideal):
        kind, host = "ideal", ring_record(x.host)
    elif isinstance(x, MultClosedSet):
        kind, host = "mset", ring_record(x.host)
    else:
        raise TypeError(f"cannot serialize {type(x).__name__}")
    return {"type": kind, "name": name, "elements": list(x.elements), "labels": x.labelled(),
            "host": host}


def structure_from_record(rec: dict):
    """Rebuild a serialized ring or module from its tables; digests must match."""
    kind = rec.get("type")
    if kind == "ring":
        if "add" not in rec:
            raise NotARing("record carries no tables (recipe only)")
        r = FiniteRing(rec["add"], rec["mul"], rec["one"], rec["label"], rec["labels"])
        if r.digest != rec["digest"]:
            raise NotARing("digest mismatch after rebuilding the ring")
        return r
    if kind == "module":
        if "add" not in rec:
            raise NotAModule("record carries no tables (recipe only)")
        ring = structure_from_record(rec["ring"])
        m = FiniteModule(ring, rec["add"], rec["act"], rec["label"], rec["labels"])
        if m.digest != rec["digest"]:
            raise NotAModule("digest mismatch after rebuilding the module")
        return m
    raise ValueError(f"unknown record type {kind!r}")


def dumps(doc) -> str:
    return json.dumps(plain(doc), sort_keys=True, indent=2) + "\n"
