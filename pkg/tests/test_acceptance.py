"""Acceptance gate: one test per criterion, each recording a PASS/FAIL line.

The lines are printed in the terminal summary (see conftest.py).
"""

import hashlib
import json
import time
from collections import Counter

import pytest

from conftest import ACCEPTANCE_LINES
from wsprime.classify import (
    classify,
    is_weakly_prime,
    is_weakly_s_prime,
    weakly_s_prime_witnesses,
)
from wsprime.cli import main
from wsprime.construct import build_idealization
from wsprime.harness.corpus import cached_corpus
from wsprime.harness.search import search
from wsprime.harness.suite import LEDGER, run_check
from wsprime.modules import (
    cyclic_module,
    direct_sum,
    fraction_isomorphism,
    join,
    localize_module,
    meet,
    quotient_module,
    regular_module,
    span_submodule,
    torsion_submodule,
)
from wsprime.rings import make_cyclic_ring, make_mult_set


def record(k: int, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES[k] = f"criterion {k}: {'PASS' if ok else 'FAIL'} - {detail}"


def naive_verdicts(m, n, s):
    """Definitional scan written out with plain loops (no kernels, no caches)."""
    r = m.ring
    elems = set(int(x) for x in n.elements)
    colon = {a for a in range(r.order) if all(int(m.act[a, x]) in elems for x in range(m.order))}
    disjoint = not (colon & set(s.elements))

    def good(t, weak):
        for a in range(r.order):
            for x in range(m.order):
                y = int(m.act[a, x])
                if y in elems and (y != 0 or not weak):
                    if int(r.mul[t, a]) not in colon and int(m.act[t, x]) not in elems:
                        return False
        return True

    return {
        "disjoint": disjoint,
        "prime": good(r.one, False),
        "weakly_prime": good(r.one, True),
        "s_prime": disjoint and any(good(t, False) for t in s.elements),
        "weakly_s_prime": disjoint and any(good(t, True) for t in s.elements),
    }


@pytest.fixture(scope="session")
def suite_runs(tmp_path_factory):
    """`--suite --jobs 1` and `--suite --jobs 8` on the default corpus."""
    out = {}
    base = tmp_path_factory.mktemp("suite")
    for jobs in (1, 8):
        path = base / f"jobs{jobs}.json"
        t0 = time.perf_counter()
        code = main(["--suite", "--jobs", str(jobs), "--out", str(path)])
        out[jobs] = (code, path.read_bytes(), time.perf_counter() - t0)
    return out


def theorem_records(suite_runs):
    report = json.loads(suite_runs[1][1])
    (q,) = report["queries"]
    return {r["theorem_id"]: r for r in q["result"]["results"]}


# ---------------------------------------------------------------- criterion 1


def test_criterion_1_z12_intersection():
    t0 = time.perf_counter()
    z12 = make_cyclic_ring(12)
    m = regular_module(z12)
    s = make_mult_set(z12, [1, 3, 9])
    n, k = span_submodule(m, [2]), span_submodule(m, [3])
    nk = meet(n, k)
    rep = classify(nk, s)
    elapsed = time.perf_counter() - t0
    ok = (nk == span_submodule(m, [6]) and rep.weakly_prime is False
          and rep.weakly_s_prime is True and bool(rep.weakly_s_prime_witnesses) and elapsed < 1.0)
    record(1, ok, f"<6> weakly_prime={rep.weakly_prime} weakly_s_prime={rep.weakly_s_prime} "
                  f"witnesses={list(rep.weakly_s_prime_witnesses)} in {elapsed * 1000:.0f} ms")
    assert ok


# ---------------------------------------------------------------- criterion 2


def test_criterion_2_characterization_equivalence():
    corpus = cached_corpus()
    kinds = Counter(corpus.kind_of(i.ring) for i in corpus.instances())
    t0 = time.perf_counter()
    res = run_check("T1", corpus)
    elapsed = time.perf_counter() - t0
    spans = all(kinds[k] > 0 for k in ("cyclic", "product", "quotient"))
    ok = (res.counterexample_count == 0 and res.instances_checked >= 1000 and spans
          and elapsed < 300)
    record(2, ok, f"T1 mismatches={res.counterexample_count} over {res.instances_checked} "
                  f"instances (cyclic={kinds['cyclic']} product={kinds['product']} "
                  f"quotient={kinds['quotient']}) in {elapsed:.1f} s")
    assert ok


# ---------------------------------------------------------------- criterion 3


@pytest.mark.xfail(strict=True, reason="the N+K check (T22) has genuine counterexamples on the "
                                       "default corpus; see test_n_plus_k_counterexample_is_genuine")
def test_criterion_3_theorem_suite(suite_runs):
    code, _, elapsed = suite_runs[1]
    recs = theorem_records(suite_runs)
    failing = {t: r["counterexample_count"] for t, r in recs.items() if r["counterexample_count"]}
    ok = sorted(recs) == sorted(LEDGER) and not failing and code == 0 and elapsed < 900
    record(3, ok, f"{len(recs)} theorems, counterexamples={failing or 0}, exit={code}, "
                  f"{elapsed:.0f} s")
    assert ok


def test_suite_clean_apart_from_n_plus_k(suite_runs):
    recs = theorem_records(suite_runs)
    failing = sorted(t for t, r in recs.items() if r["counterexample_count"])
    assert failing == ["T22"]
    assert all(r["instances_checked"] > 0 for r in recs.values())
    assert suite_runs[1][0] == 1


def test_n_plus_k_counterexample_is_genuine(suite_runs):
    # explicit instance: Z_8 + Z_8/<2> over Z_8, S = {1}
    z8 = make_cyclic_ring(8)
    reg = regular_module(z8)
    z2, _ = quotient_module(reg, span_submodule(reg, [2]))
    m = direct_sum(reg, z2)
    one = make_mult_set(z8, [1])

    def el(a, b):
        return a * 2 + b

    n = span_submodule(m, [el(0, 1)])
    k = span_submodule(m, [el(4, 1)])
    total = join(n, k)
    assert set(n.elements) == {el(0, 0), el(0, 1)} and set(k.elements) == {el(0, 0), el(4, 1)}
    for sub in (n, k):
        v = naive_verdicts(m, sub, one)
        assert v["weakly_prime"] and v["weakly_s_prime"]
    v = naive_verdicts(m, total, one)
    assert v["disjoint"] and not v["weakly_s_prime"]
    # 2 * (2,0) = (4,0) is nonzero and in N+K, yet 2 is outside (N+K:M) and (2,0) outside N+K
    assert m.act[2, el(2, 0)] == el(4, 0) and el(4, 0) in total and el(2, 0) not in total
    # the report carries the failing instances
    stored = theorem_records(suite_runs)["T22"]["counterexamples"]
    assert stored and all(set(c) >= {"N", "K", "sum"} for c in stored)


# ---------------------------------------------------------------- criterion 4


def test_criterion_4_localization(suite_runs):
    t14 = theorem_records(suite_runs)["T14"]
    corpus = cached_corpus()
    checked = bad = 0
    for m in corpus.modules:
        if corpus.kind_of(m.ring) != "cyclic":
            continue
        for s in corpus.msets(m.ring):
            frac = localize_module(m, s)
            _, h = fraction_isomorphism(frac)
            tor = torsion_submodule(m, s)
            checked += 1
            if not (h.is_injective and h.is_surjective) or frac.order * len(tor) != m.order:
                bad += 1
    ok = t14["counterexample_count"] == 0 and t14["instances_checked"] > 0 and bad == 0
    record(4, ok, f"T14 failures={t14['counterexample_count']} over {t14['instances_checked']} "
                  f"checks; direct fraction oracle {checked - bad}/{checked}")
    assert ok


# ---------------------------------------------------------------- criterion 5


def test_criterion_5_separation_search():
    lines = []
    ok = True
    for pred, want in (("weakly_s_prime_not_s_prime", ("weakly_s_prime", "s_prime")),
                       ("weakly_s_prime_not_weakly_prime", ("weakly_s_prime", "weakly_prime"))):
        hit = search(pred)
        if hit is None:
            ok = False
            lines.append(f"{pred}: none")
            continue
        inst = hit.instance
        v = naive_verdicts(inst.module, inst.sub, inst.mset)
        good = v[want[0]] and not v[want[1]]
        ok &= good
        lines.append(f"{pred}: {inst.ring.label} {inst.module.label} N={inst.sub.labelled()} "
                     f"S={inst.mset.labelled()} oracle={'ok' if good else 'MISMATCH'}")
    first = search("weakly_s_prime_not_s_prime").as_dict()
    ok &= (first["ring"], first["N"], first["S"]) == ("Z_4", ["0"], ["1"])
    record(5, ok, "; ".join(lines))
    assert ok


# ---------------------------------------------------------------- criterion 6


def test_criterion_6_idealization_surrogate():
    z12 = make_cyclic_ring(12)
    m = cyclic_module(z12, 6)
    s = make_mult_set(z12, [3, 9])
    i = z12.zero_ideal
    n = span_submodule(m, [2])
    reg = regular_module(z12)
    i_ws = is_weakly_s_prime(span_submodule(reg, list(i.elements)), s)
    n_ws = is_weakly_s_prime(n, s)
    b = build_idealization(z12, m)
    lifted = span_submodule(regular_module(b.ring), list(b.lift_ideal(i, n).elements))
    big = b.lift_mset(s, m.zero_submodule)
    lifted_ws = is_weakly_s_prime(lifted, big)
    oracle = naive_verdicts(regular_module(b.ring), lifted, big)["weakly_s_prime"]
    ok = i_ws and n_ws and not lifted_ws and not oracle
    record(6, ok, f"I weakly S-prime={i_ws}, N weakly S-prime={n_ws}, "
                  f"I x| N weakly (S x| 0)-prime={lifted_ws} (oracle {oracle})")
    assert ok


# ---------------------------------------------------------------- criterion 7


def test_criterion_7_determinism(suite_runs):
    (_, a, ta), (_, b, tb) = suite_runs[1], suite_runs[8]
    ok = a == b
    digest = hashlib.sha256(a).hexdigest()[:16]
    record(7, ok, f"--jobs 1 vs --jobs 8 byte-identical={ok} ({len(a)} bytes, sha256 {digest}; "
                  f"{ta:.0f} s / {tb:.0f} s)")
    assert ok


def test_z12_witnesses_match_naive_scan():
    z12 = make_cyclic_ring(12)
    m = regular_module(z12)
    n = span_submodule(m, [6])
    s = make_mult_set(z12, [1, 3, 9])
    assert weakly_s_prime_witnesses(n, s) == (3, 9)
    assert not is_weakly_prime(n)
    assert naive_verdicts(m, n, s)["weakly_s_prime"]
