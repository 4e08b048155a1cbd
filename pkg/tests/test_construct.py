import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from wsprime.classify import classify, is_weakly_s_prime, weakly_s_prime_witnesses
from wsprime.construct import (
    build_amalgamation,
    build_duplication,
    build_idealization,
    build_product_structure,
    fold_lift,
    fold_products,
    identity_amalgamation,
)
from wsprime.errors import NotAnIdeal
from wsprime.modules import ModuleHom, cyclic_module, regular_module, span_submodule
from wsprime.rings import (
    enumerate_ideals,
    ideal_radical,
    make_cyclic_ring,
    make_mult_set,
    natural_hom,
    span_ideal,
)


def test_idealization_z4():
    z4 = make_cyclic_ring(4)
    b = build_idealization(z4, regular_module(z4))
    nil = ideal_radical(b.ring.zero_ideal)
    assert len(nil) == 8
    assert nil == span_ideal(b.ring, [b.encode(2, 0), b.encode(0, 1)])
    with pytest.raises(NotAnIdeal):
        b.lift_ideal(span_ideal(z4, [2]), b.module.zero_submodule)
    s = b.lift_mset(make_mult_set(z4, [1]), b.module.zero_submodule)
    assert s.elements == (b.encode(1, 0),)


def test_idealization_multiplication_rule(z12):
    m = cyclic_module(z12, 6)
    b = build_idealization(z12, m)
    for r1, m1, r2, m2 in [(3, 1, 2, 1), (5, 4, 7, 3), (0, 1, 2, 1)]:
        got = b.ring.times(b.encode(r1, m1), b.encode(r2, m2))
        want = b.encode(r1 * r2 % 12, (r1 * m2 + r2 * m1) % 6)
        assert got == want


def test_idealization_surrogate(z12):
    m = cyclic_module(z12, 6)
    b = build_idealization(z12, m)
    s = make_mult_set(z12, [3, 9])
    i = z12.zero_ideal
    n = span_submodule(m, [2])
    reg = regular_module(z12)
    assert is_weakly_s_prime(span_submodule(reg, []), s)
    assert is_weakly_s_prime(n, s)
    lifted = b.lift_ideal(i, n)
    big = make_mult_set(b.ring, [b.encode(3, 0)])
    assert big == b.lift_mset(s, m.zero_submodule)
    as_sub = span_submodule(regular_module(b.ring), list(lifted.elements))
    assert not is_weakly_s_prime(as_sub, big)
    # the offending product (0,1)(2,1) = (0,2)
    assert b.ring.times(b.encode(0, 1), b.encode(2, 1)) == b.encode(0, 2)


def test_duplication_counts(z12):
    j = span_ideal(z12, [2])
    d = build_duplication(z12, j, regular_module(z12))
    assert d.module.order == 72 and d.ring.order == 72
    for a, b in d.module_pairs:
        assert (a - b) % 2 == 0
    zero = build_duplication(z12, z12.zero_ideal, regular_module(z12))
    assert zero.ring.order == 12 and all(a == b for a, b in zero.ring_pairs)
    sbar = d.lift_s_bar(make_mult_set(z12, [1, 3, 9]))
    assert len(sbar) == 18


def test_amalgamation_order(z12):
    z6 = make_cyclic_ring(6)
    f = natural_hom(z12, z6)
    phi = ModuleHom(regular_module(z12), regular_module(z6), f.image, f)
    a = build_amalgamation(f, span_ideal(z6, [2]), phi)
    assert a.ring.order == 36 and a.epimorphic
    g = build_amalgamation(f, z6.zero_ideal, phi)
    assert g.ring.order == 12


def test_amalgamation_scalar_formula(z12):
    z6 = make_cyclic_ring(6)
    f = natural_hom(z12, z6)
    phi = ModuleHom(regular_module(z12), regular_module(z6), f.image, f)
    a = build_amalgamation(f, span_ideal(z6, [2]), phi)
    for ri in range(a.ring.order):
        r, fj = (int(v) for v in a.ring_pairs[ri])
        j = (fj - r) % 6
        for mi in range(a.module.order):
            m1, y = (int(v) for v in a.module_pairs[mi])
            m2 = (y - m1) % 6
            got = a.module.act[ri, mi]
            want = (r * m1 % 12, (r * m1 + r * m2 + j * m1 + j * m2) % 6)
            assert tuple(a.module_pairs[got]) == want


def test_identity_amalgamation_is_duplication(z12):
    j = span_ideal(z12, [2])
    m = regular_module(z12)
    d = build_duplication(z12, j, m)
    a = identity_amalgamation(z12, j, m)
    assert np.array_equal(a.ring_pairs, d.ring_pairs)
    assert np.array_equal(a.module_pairs, d.module_pairs)
    assert a.ring.digest == d.ring.digest and a.module.digest == d.module.digest


def test_product_structure_example():
    z4, z9 = make_cyclic_ring(4), make_cyclic_ring(9)
    m4, m9 = regular_module(z4), regular_module(z9)
    b = build_product_structure(z4, m4, z9, m9)
    n = b.lift_submodule(span_submodule(m4, [2]), span_submodule(m9, [3]))
    s = b.lift_mset(make_mult_set(z4, [1]), make_mult_set(z9, [1]))
    assert weakly_s_prime_witnesses(n, s) == ()
    r = b.ring
    colon = {a for a in range(r.order) if all(b.module.act[a, z] in n for z in range(36))}

    def violates(a, x):
        y = b.module.act[a, x]
        return y in n and y != 0 and a not in colon and x not in n

    # (1,0) * (2,1) = (2,0) is a witness pair; the reported one is the smallest index pair
    assert violates(1 * 9 + 0, 2 * 9 + 1)
    smallest = min((a, x) for a in range(r.order) for x in range(36) if violates(a, x))
    assert classify(n, s).counterexamples["weakly_s_prime"][1:] == smallest == (1, 12)


def test_three_fold_product():
    rings = [make_cyclic_ring(p) for p in (2, 3, 5)]
    parts = [(r, regular_module(r)) for r in rings]
    bundles = fold_products(parts)
    assert bundles[-1].ring.order == 30
    subs = [m.zero_submodule for _, m in parts]
    ones = [make_mult_set(r, [1]) for r in rings]
    n, s = fold_lift(bundles, subs, ones)
    assert n.is_zero and len(s) == 1


@given(st.integers(2, 12), st.data())
def test_duplication_lifts_closed(n, data):
    r = make_cyclic_ring(n)
    j = data.draw(st.sampled_from(enumerate_ideals(r)))
    d = build_duplication(r, j, regular_module(r))
    s = make_mult_set(r, [data.draw(st.integers(1, n - 1))])
    for lifted in (d.lift_s(s), d.lift_s_bar(s)):
        e = list(lifted.elements)
        assert set(d.ring.mul[np.ix_(e, e)].ravel()) <= set(e)
