import json

import pytest

from wsprime.classify import is_disjoint, is_weakly_prime, is_weakly_s_prime, s_prime_witnesses
from wsprime.construct import build_product_structure
from wsprime.errors import BudgetExceeded, CoverageError, UnknownPredicate, UnknownTheorem
from wsprime.harness import suite
from wsprime.harness.corpus import Corpus, CorpusSpec, cached_corpus
from wsprime.harness.search import PREDICATES, parse_custom, search, verdicts
from wsprime.harness.suite import LEDGER, coverage_lock, registered_ids, run_theorem_suite
from wsprime.modules import regular_module, span_submodule
from wsprime.rings import make_cyclic_ring, make_mult_set


def test_default_corpus_contains_z12_instance():
    c = cached_corpus()
    hits = [i for i in c.instances()
            if i.ring.label == "Z_12" and i.module is regular_module(i.ring)
            and i.sub.elements == (0, 6) and i.mset.elements == (1, 3, 9)]
    assert len(hits) == 1


def test_small_cyclic_corpus():
    c = Corpus(CorpusSpec(max_ring_order=4, kinds=("cyclic",)))
    assert [r.label for r in c.rings] == ["Z_2", "Z_3", "Z_4"]


def test_corpus_budget():
    with pytest.raises(BudgetExceeded):
        Corpus(CorpusSpec(max_ring_order=12, max_module_order=24, budget=100))


def test_corpus_spec_validation():
    with pytest.raises(ValueError):
        CorpusSpec(max_ring_order=1)
    with pytest.raises(ValueError):
        CorpusSpec(kinds=("cyclic", "bogus"))


def test_corpus_kinds_and_bounds(small_corpus):
    kinds = {small_corpus.kind_of(r) for r in small_corpus.rings}
    assert {"cyclic", "product", "quotient"} <= kinds
    base = [r for r in small_corpus.rings if small_corpus.kind_of(r) in ("cyclic", "product", "quotient")]
    assert all(r.order <= 8 for r in base)
    assert all(m.order <= 12 for m in small_corpus.modules)


def test_corpus_is_deterministic(small_spec):
    a = [(i.module.digest, i.sub.mask, i.mset.mask) for i in Corpus(small_spec).instances()]
    b = [(i.module.digest, i.sub.mask, i.mset.mask) for i in Corpus(small_spec).instances()]
    assert a == b


def test_coverage_lock():
    coverage_lock()
    assert registered_ids() == list(LEDGER)
    with pytest.raises(CoverageError):
        suite.register("T1")(lambda corpus, tally: None)
    suite.register("T99")(lambda corpus, tally: None)
    try:
        with pytest.raises(CoverageError):
            coverage_lock()
    finally:
        del suite._CHECKS["T99"]
    coverage_lock()


def test_unknown_theorem(small_corpus):
    with pytest.raises(UnknownTheorem):
        run_theorem_suite(["T31"], small_corpus)


@pytest.mark.parametrize("tid", [t for t in LEDGER if t != "T22"])
def test_each_check_clean_on_small_corpus(tid, small_corpus):
    (res,) = run_theorem_suite([tid], small_corpus)
    assert res.theorem_id == tid
    assert res.counterexample_count == 0, res.counterexamples[:3]
    assert res.instances_checked > 0


def test_suite_results_serialize_deterministically(small_corpus):
    a = run_theorem_suite(["T3", "T19", "T25"], small_corpus)
    b = run_theorem_suite(["T25", "T3", "T19"], small_corpus, jobs=3)
    assert [r.theorem_id for r in a] == ["T3", "T19", "T25"]
    dump = lambda rs: json.dumps([r.as_dict() for r in rs], sort_keys=True)  # noqa: E731
    assert dump(a) == dump(b)


def test_t19_covers_z12_intersection():
    spec = CorpusSpec(max_ring_order=12, max_module_order=12, kinds=("cyclic",))
    (res,) = run_theorem_suite(["T19"], spec)
    assert res.counterexample_count == 0 and res.instances_checked > 0
    z12 = cached_corpus(spec).zn(12)
    m = regular_module(z12)
    s = make_mult_set(z12, [1, 3, 9])
    meet = span_submodule(m, [6])
    assert not is_weakly_prime(meet) and is_weakly_s_prime(meet, s)


def test_t23_z4_z9_instance():
    z4, z9 = make_cyclic_ring(4), make_cyclic_ring(9)
    m4, m9 = regular_module(z4), regular_module(z9)
    b = build_product_structure(z4, m4, z9, m9)
    n1, n2 = span_submodule(m4, [2]), span_submodule(m9, [3])
    s1, s2 = make_mult_set(z4, [1]), make_mult_set(z9, [1])
    n, s = b.lift_submodule(n1, n2), b.lift_mset(s1, s2)
    rhs = ((bool(s_prime_witnesses(n1, s1)) and not is_disjoint(n2, s2))
           or (bool(s_prime_witnesses(n2, s2)) and not is_disjoint(n1, s1)))
    assert is_weakly_s_prime(n, s) is False and rhs is False


def test_search_examples():
    hit = search("weakly_s_prime_not_s_prime")
    inst = hit.as_dict()
    assert (inst["ring"], inst["module"], inst["N"], inst["S"]) == ("Z_4", "Z_4", ["0"], ["1"])
    assert search("s_prime_not_prime", fields_only=True) is None
    hit = search("weakly_s_prime_not_weakly_prime")
    v = verdicts(hit.instance.sub, hit.instance.mset)
    assert v["weakly_s_prime"] and not v["weakly_prime"]


def test_search_intersection_predicate(small_corpus):
    hit = search("not_weakly_prime_but_weakly_s_prime_intersection", small_corpus)
    assert hit is not None and "K" in hit.extra


def test_custom_predicates(small_corpus):
    assert parse_custom("custom:prime=false,weakly_prime=true") == {"prime": False,
                                                                     "weakly_prime": True}
    hit = search("custom:prime=false,weakly_prime=true", small_corpus)
    v = verdicts(hit.instance.sub, hit.instance.mset)
    assert not v["prime"] and v["weakly_prime"]
    for bad in ("custom:", "custom:primeish=true", "custom:prime=maybe", "nonsense"):
        with pytest.raises(UnknownPredicate):
            search(bad, small_corpus)
    assert len(PREDICATES) == 4
