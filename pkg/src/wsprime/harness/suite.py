"""Theorem registry, per-check tallies and the suite runner."""

from __future__ import annotations

import multiprocessing as mp
import time
from dataclasses import dataclass, field

from wsprime.errors import CoverageError, UnknownTheorem
from wsprime.harness.corpus import Corpus, CorpusSpec, cached_corpus

# Theorem id -> short title.  The coverage lock compares this against the
# registered check functions before anything runs.
LEDGER = {
    "T1": "characterization equivalence (definitional, char2, char3, char4)",
    "T2": "product-of-submodules criterion on faithful multiplication modules",
    "T3": "residual (N:K) is a weakly S-prime ideal",
    "T4": "weakly S-prime residual ideal gives weakly S-prime submodule",
    "T5": "I weakly S-prime iff IM weakly S-prime",
    "T6": "(N:A) is weakly S-prime for regular subsets A",
    "T7": "maximal weakly S-prime submodules are S-prime",
    "T8": "three-way equivalence N, (N:M), IM",
    "T9": "residual identities for IN on faithful multiplication modules",
    "T10": "IN weakly S-prime splits to I or N",
    "T11": "(N:s) weakly prime versus N weakly S-prime",
    "T12": "s rad(0) N = 0 and s NK = 0 for non-S-prime members",
    "T13": "N inside rad(0)M or s rad(0)M inside N",
    "T14": "localization criterion and fraction module isomorphism",
    "T15": "enlarging the multiplicative set",
    "T16": "invariance under saturation",
    "T17": "radical of a weakly S-prime ideal",
    "T18": "M-rad of a weakly S-prime submodule",
    "T19": "intersections and products with K meeting S",
    "T20": "images under epimorphisms, preimages under monomorphisms",
    "T21": "quotients N/K and restrictions to N",
    "T22": "sums N + K",
    "T23": "direct products (two and three factors)",
    "T24": "S-torsion-free quotient criterion",
    "T25": "idealization I x| N",
    "T26": "amalgamation lifts of N1",
    "T27": "amalgamation lifts of N1, prime case",
    "T28": "amalgamation lifts of N2, S-prime case",
    "T29": "amalgamation lifts of N2, weakly case",
    "T30": "duplication lifts",
}

MAX_STORED = 25


@dataclass
class TheoremCheckResult:
    theorem_id: str
    title: str
    instances_checked: int
    instances_skipped_hypothesis: int
    counterexamples: list
    counterexample_count: int
    interpretation_notes: list
    elapsed_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return self.counterexample_count == 0

    def as_dict(self, timings: bool = False) -> dict:
        out = {
            "theorem_id": self.theorem_id,
            "title": self.title,
            "instances_checked": self.instances_checked,
            "instances_skipped_hypothesis": self.instances_skipped_hypothesis,
            "counterexamples": self.counterexamples,
            "counterexample_count": self.counterexample_count,
            "interpretation_notes": self.interpretation_notes,
        }
        if timings:
            out["elapsed_ms"] = round(self.elapsed_ms, 1)
        return out


@dataclass
class Tally:
    """Running counts for one theorem; only the first few failures are kept."""

    theorem_id: str
    checked: int = 0
    skipped: int = 0
    failures: int = 0
    stored: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def skip(self, n: int = 1) -> None:
        self.skipped += n

    def check(self, ok: bool, detail) -> bool:
        self.checked += 1
        if not ok:
            self.fail(detail)
        return ok

    def fail(self, detail) -> None:
        self.failures += 1
        if len(self.stored) < MAX_STORED:
            self.stored.append(detail)

    def note(self, text: str) -> None:
        self.notes.append(text)


_CHECKS: dict = {}


def register(tid: str):
    def deco(fn):
        if tid in _CHECKS:
            raise CoverageError(f"{tid} registered twice")
        _CHECKS[tid] = fn
        return fn
    return deco


def _load_checks() -> None:
    # importing registers everything
    from wsprime.harness import construction_checks, module_checks  # noqa: F401


def registered_ids() -> list[str]:
    _load_checks()
    return sorted(_CHECKS, key=lambda t: int(t[1:]))


def coverage_lock() -> None:
    _load_checks()
    missing = sorted(set(LEDGER) - set(_CHECKS))
    extra = sorted(set(_CHECKS) - set(LEDGER))
    if missing or extra:
        raise CoverageError(f"ledger/check mismatch: missing={missing} extra={extra}")


def _normalize_ids(ids) -> list[str]:
    if ids is None:
        return list(LEDGER)
    out = []
    for tid in ids:
        tid = str(tid).strip().upper()
        if tid not in LEDGER:
            raise UnknownTheorem(tid)
        if tid not in out:
            out.append(tid)
    return sorted(out, key=lambda t: int(t[1:]))


def run_check(tid: str, corpus: Corpus) -> TheoremCheckResult:
    coverage_lock()
    if tid not in _CHECKS:
        raise UnknownTheorem(tid)
    tally = Tally(tid)
    t0 = time.perf_counter()
    _CHECKS[tid](corpus, tally)
    elapsed = (time.perf_counter() - t0) * 1000
    return TheoremCheckResult(tid, LEDGER[tid], tally.checked, tally.skipped, tally.stored,
                              tally.failures, tally.notes, elapsed)


_WORKER_SPEC: CorpusSpec | None = None


def _worker(tid: str) -> TheoremCheckResult:
    return run_check(tid, cached_corpus(_WORKER_SPEC))


def run_theorem_suite(ids=None, corpus: Corpus | CorpusSpec | None = None,
                      jobs: int = 1) -> list[TheoremCheckResult]:
    """Run the requested checks; results come back sorted by theorem id.

    With jobs > 1 each theorem runs in a forked worker.  The workers rebuild
    their own corpus from the same spec, so the output does not depend on
    scheduling.
    """
    global _WORKER_SPEC
    coverage_lock()
    ids = _normalize_ids(ids)
    if corpus is None or isinstance(corpus, CorpusSpec):
        corpus = cached_corpus(corpus)
    if jobs <= 1 or len(ids) <= 1:
        results = [run_check(tid, corpus) for tid in ids]
    else:
        _WORKER_SPEC = corpus.spec
        ctx = mp.get_context("fork")
        # longest checks first keeps the pool busy
        order = sorted(ids, key=lambda t: _COST_HINT.get(t, 0), reverse=True)
        with ctx.Pool(min(jobs, len(ids))) as pool:
            results = pool.map(_worker, order, chunksize=1)
    return sorted(results, key=lambda r: int(r.theorem_id[1:]))


# rough relative costs on the default corpus, used only for scheduling
_COST_HINT = {"T1": 20, "T19": 10, "T20": 10, "T21": 10, "T22": 8, "T14": 8, "T23": 6}
