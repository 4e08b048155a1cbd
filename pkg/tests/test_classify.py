import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import module_with_sub, msets
from wsprime.classify import (
    METHODS,
    classify,
    classify_ideal,
    is_disjoint,
    is_maximal_weakly_s_prime,
    is_prime_submodule,
    is_weakly_prime,
    is_weakly_prime_submodule,
    is_weakly_s_prime,
    s_prime_witnesses,
    weakly_s_prime_witnesses,
)
from wsprime.errors import ImproperSubmodule, NotApplicable
from wsprime.modules import regular_module, span_submodule, zero_module
from wsprime.rings import make_cyclic_ring, make_mult_set, saturate, span_ideal


def sub(r, g):
    return span_submodule(regular_module(r), [g])


def test_prime_verdicts(z12):
    assert is_prime_submodule(sub(z12, 2)) == (True, None)
    assert is_prime_submodule(sub(z12, 4)) == (False, (2, 2))
    assert is_prime_submodule(sub(z12, 6)) == (False, (2, 3))


def test_weakly_prime_verdicts(z12):
    for n in (4, 7, 30):
        r = make_cyclic_ring(n)
        assert is_weakly_prime_submodule(regular_module(r).zero_submodule)[0]
    assert is_weakly_prime_submodule(sub(z12, 6)) == (False, (2, 3))
    assert is_weakly_prime_submodule(sub(z12, 2))[0]


def test_witness_sets(z12):
    s = make_mult_set(z12, [1, 3, 9])
    assert s_prime_witnesses(sub(z12, 6), s) == (3, 9)
    assert weakly_s_prime_witnesses(sub(z12, 6), s) == (3, 9)
    z4 = make_cyclic_ring(4)
    one = make_mult_set(z4, [1])
    zero = regular_module(z4).zero_submodule
    assert s_prime_witnesses(zero, one) == ()
    assert weakly_s_prime_witnesses(zero, one) == (1,)
    z30 = make_cyclic_ring(30)
    assert weakly_s_prime_witnesses(sub(z30, 6), make_mult_set(z30, [5])) == ()
    p = sub(z12, 2)
    assert s_prime_witnesses(p, s) == s.elements


def test_classify_report_all_methods(z12_example):
    _, n, s = z12_example
    for method in METHODS:
        rep = classify(n, s, method)
        assert (rep.prime, rep.weakly_prime) == (False, False)
        assert rep.s_prime_witnesses == (3, 9) and rep.weakly_s_prime_witnesses == (3, 9)
        assert rep.weakly_s_prime and rep.applicable


def test_classify_zero_and_not_applicable(z12):
    one = make_mult_set(z12, [1])
    zero = regular_module(z12).zero_submodule
    for method in METHODS:
        assert classify(zero, one, method).weakly_s_prime_witnesses == (1,)
    rep = classify(sub(z12, 3), make_mult_set(z12, [1, 3, 9]))
    assert not rep.applicable
    assert rep.s_prime is None and rep.weakly_s_prime is None
    with pytest.raises(ImproperSubmodule):
        classify(regular_module(z12).whole, one)
    with pytest.raises(ValueError):
        classify(zero, one, "char9")


def test_classify_ideal(z12):
    z30 = make_cyclic_ring(30)
    assert not classify_ideal(span_ideal(z30, [6]), make_mult_set(z30, [5, 25])).weakly_s_prime
    assert classify_ideal(z12.zero_ideal, make_mult_set(z12, [1, 3, 9])).weakly_s_prime_witnesses
    assert classify_ideal(span_ideal(z12, [2]), make_mult_set(z12, [1])).s_prime


def test_maximal(z12):
    z4 = make_cyclic_ring(4)
    one = make_mult_set(z4, [1])
    assert not is_maximal_weakly_s_prime(regular_module(z4).zero_submodule, one)
    assert is_maximal_weakly_s_prime(sub(z4, 2), one)
    with pytest.raises((NotApplicable, ImproperSubmodule)):
        is_maximal_weakly_s_prime(zero_module(z12).zero_submodule, make_mult_set(z12, [1]))


def test_lexicographic_counterexample(z12):
    # (2,3) is the smallest pair with 2*3 in <6>, 2 outside (N:M), 3 outside N
    n = sub(z12, 6)
    hits = [(a, m) for a in range(12) for m in range(12)
            if (a * m) % 12 in (0, 6) and (a * m) % 12 and a % 6 and m % 6]
    assert is_weakly_prime_submodule(n)[1] == min(hits)


# ------------------------------------------------------------------ properties


def _naive_witnesses(n, s, weak):
    m = n.host
    r = m.ring
    colon = {a for a in range(r.order) if all(m.act[a, x] in n for x in range(m.order))}
    out = []
    for t in s.elements:
        ok = True
        for a in range(r.order):
            for x in range(m.order):
                y = m.act[a, x]
                if y in n and (not weak or y != 0):
                    if r.mul[t, a] not in colon and m.act[t, x] not in n:
                        ok = False
                        break
            if not ok:
                break
        if ok:
            out.append(t)
    return tuple(out)


@given(module_with_sub(), st.data())
def test_methods_agree_with_naive_scan(mn, data):
    m, n = mn
    s = data.draw(msets(m.ring))
    if not is_disjoint(n, s):
        return
    naive = _naive_witnesses(n, s, True)
    for method in METHODS:
        if method == "char4" and len(m.submodules) > 40:
            continue
        assert weakly_s_prime_witnesses(n, s, method) == naive
        assert s_prime_witnesses(n, s, method) == _naive_witnesses(n, s, False)


@given(module_with_sub(), st.data())
def test_report_invariants(mn, data):
    m, n = mn
    s = data.draw(msets(m.ring, allow_zero=True))
    rep = classify(n, s)
    if rep.prime:
        assert rep.weakly_prime
    if not rep.applicable:
        assert rep.s_prime_witnesses is None and rep.weakly_s_prime_witnesses is None
        return
    assert set(rep.s_prime_witnesses) <= set(rep.weakly_s_prime_witnesses)
    if rep.prime:
        assert rep.s_prime_witnesses


@given(module_with_sub(), st.data())
def test_monotone_in_s(mn, data):
    m, n = mn
    s = data.draw(msets(m.ring))
    t = make_mult_set(m.ring, list(s.elements) + [data.draw(st.integers(1, m.ring.order - 1))])
    if is_disjoint(n, s) and is_disjoint(n, t):
        assert set(weakly_s_prime_witnesses(n, s)) <= set(weakly_s_prime_witnesses(n, t))


@given(module_with_sub(), st.data())
def test_saturation_invariance(mn, data):
    m, n = mn
    s = data.draw(msets(m.ring))
    if is_disjoint(n, s):
        assert is_disjoint(n, saturate(s))
        assert is_weakly_s_prime(n, s) == is_weakly_s_prime(n, saturate(s))


@given(module_with_sub())
def test_unit_collapse(mn):
    m, n = mn
    units = make_mult_set(m.ring, m.ring.units)
    if is_disjoint(n, units):
        assert is_weakly_s_prime(n, units) == is_weakly_prime(n)
