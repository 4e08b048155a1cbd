import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import cyclic_rings, elements, msets, rings
from wsprime.errors import EmptySet, NotARing, UnknownElement, ZeroRing
from wsprime.rings import (
    FiniteRing,
    RingHom,
    combine_ideals,
    encode_pair,
    enumerate_ideals,
    ideal_colon,
    ideal_radical,
    localize_ring,
    make_cyclic_ring,
    make_mult_set,
    make_product_ring,
    quotient_ring,
    ring_iso,
    saturate,
    span_ideal,
    torsion_ideal,
    zero_divisors_on_quotient,
)


def els(x):
    return set(x.elements)


def test_cyclic_basics():
    z12 = make_cyclic_ring(12)
    assert z12.times(6, 4) == 0
    assert (z12.one, 0) == (1, 0)
    z2 = make_cyclic_ring(2)
    assert z2.order == 2 and z2.plus(1, 1) == 0
    with pytest.raises(ValueError):
        make_cyclic_ring(1)


def test_product_encoding():
    z4, z9 = make_cyclic_ring(4), make_cyclic_ring(9)
    p = make_product_ring(z4, z9)
    assert p.order == 36 and p.one == encode_pair(1, 1, 9) == 10
    x = encode_pair(2, 3, 9)
    assert p.times(x, x) == encode_pair(0, 0, 9)
    z2 = make_cyclic_ring(2)
    q = make_product_ring(z2, z2)
    e = encode_pair(1, 0, 2)
    assert q.times(e, e) == e


def test_quotients(z12):
    q, proj = quotient_ring(z12, span_ideal(z12, [4]))
    assert q.order == 4
    z4 = make_cyclic_ring(4)
    ring_iso(q, z4, [proj(x) % 4 for x in range(4)])  # reps {0,1,2,3}
    same, ident = quotient_ring(z12, z12.zero_ideal)
    assert same.order == 12 and list(ident.image) == list(range(12))
    with pytest.raises(ZeroRing):
        quotient_ring(z12, z12.unit_ideal)


def test_span_ideal(z12):
    assert els(span_ideal(z12, [6])) == {0, 6}
    assert els(span_ideal(z12, [])) == {0}
    assert els(span_ideal(z12, [4, 6])) == {0, 2, 4, 6, 8, 10}
    with pytest.raises(UnknownElement):
        span_ideal(z12, [12])


def test_colon_radical_combine(z12):
    i = lambda g: span_ideal(z12, [g])  # noqa: E731
    assert ideal_colon(i(4), i(2)) == i(2)
    assert ideal_colon(i(4), i(0)) == z12.unit_ideal
    assert ideal_colon(i(0), i(4)) == i(3)
    assert ideal_radical(i(4)) == i(2)
    assert ideal_radical(z12.unit_ideal) == z12.unit_ideal
    assert els(ideal_radical(i(0))) == {0, 6}
    assert combine_ideals("sum", i(4), i(6)) == i(2)
    assert combine_ideals("product", i(4), i(6)) == i(0)
    assert combine_ideals("intersection", i(4), i(4)) == i(4)


def test_mult_sets(z12):
    assert els(make_mult_set(z12, [3])) == {3, 9}
    assert els(make_mult_set(z12, [1, 3, 9])) == {1, 3, 9}
    s6 = make_mult_set(z12, [6])
    assert els(s6) == {0, 6} and s6.contains_zero
    assert els(saturate(make_mult_set(z12, [1, 3, 9]))) == {1, 3, 5, 7, 9, 11}
    with pytest.raises(EmptySet):
        make_mult_set(z12, [])


def test_enumerate_ideals(z12):
    assert sorted(len(i) for i in enumerate_ideals(z12)) == [1, 2, 3, 4, 6, 12]
    assert len(enumerate_ideals(make_cyclic_ring(2))) == 2
    p = make_product_ring(make_cyclic_ring(4), make_cyclic_ring(9))
    assert len(enumerate_ideals(p)) == 9


def test_zero_divisors_on_quotient(z12):
    zd = {0, 2, 3, 4, 6, 8, 9, 10}
    assert set(zero_divisors_on_quotient(z12, z12.zero_ideal)) == zd
    assert set(zero_divisors_on_quotient(z12, span_ideal(z12, [6]))) == zd
    f7 = make_cyclic_ring(7)
    assert zero_divisors_on_quotient(f7, f7.zero_ideal) == (0,)


def test_localization_examples(z12):
    loc, _ = localize_ring(z12, make_mult_set(z12, [1, 3, 9]))
    q, _ = quotient_ring(z12, span_ideal(z12, [4]))
    assert loc.order == 4 and loc.digest != q.digest
    assert torsion_ideal(make_mult_set(z12, [1, 3, 9])) == span_ideal(z12, [4])
    loc1, h1 = localize_ring(z12, make_mult_set(z12, [1]))
    assert loc1.order == 12 and h1.is_injective and h1.is_surjective
    locu, hu = localize_ring(z12, make_mult_set(z12, z12.units))
    assert locu.order == 12 and hu.is_injective


def test_bad_tables():
    add = [[0, 1], [1, 0]]
    with pytest.raises(NotARing):
        FiniteRing(add, [[0, 0], [0, 0]], 1, "bad")     # 1*1 != 1
    with pytest.raises(NotARing):
        FiniteRing(add, [[0, 0], [0, 1]], 0, "bad")     # one == zero


# ------------------------------------------------------------------ properties


@given(rings)
def test_ring_axioms_hold(r):
    a, m = r.add, r.mul
    n = r.order
    idx = np.arange(n)
    x, y, z = idx[:, None, None], idx[None, :, None], idx[None, None, :]
    assert (a[a[x, y], z] == a[x, a[y, z]]).all()
    assert (m[m[x, y], z] == m[x, m[y, z]]).all()
    assert (a == a.T).all() and (m == m.T).all()
    assert (m[r.one] == idx).all()
    dist = m[idx[:, None, None], a[None, :, :]] == a[m[:, :, None], m[:, None, :]]
    assert dist.all()


@given(rings, st.data())
def test_ideal_closure(r, data):
    ideal = span_ideal(r, data.draw(elements(r)))
    e = np.asarray(ideal.elements)
    assert 0 in ideal
    assert set(r.add[np.ix_(e, e)].ravel()) <= els(ideal)
    assert set(r.mul[:, e].ravel()) <= els(ideal)


@given(rings, st.data())
def test_saturation_laws(r, data):
    s = data.draw(msets(r, allow_zero=True))
    t = make_mult_set(r, list(s.elements) + data.draw(elements(r, 2)))
    sat = saturate(s)
    assert s.issubset(sat)
    assert saturate(sat) == sat
    assert sat.issubset(saturate(t))
    e = np.asarray(sat.elements)
    assert set(r.mul[np.ix_(e, e)].ravel()) <= els(sat)


@given(rings, st.data())
def test_radical_laws(r, data):
    ideals = enumerate_ideals(r)
    i = data.draw(st.sampled_from(ideals))
    j = data.draw(st.sampled_from(ideals))
    ri = ideal_radical(i)
    assert i.issubset(ri)
    assert ideal_radical(ri) == ri
    meet = combine_ideals("intersection", i, j)
    assert ideal_radical(meet) == combine_ideals("intersection", ri, ideal_radical(j))


@given(rings, st.data())
def test_colon_law(r, data):
    ideals = enumerate_ideals(r)
    i = data.draw(st.sampled_from(ideals))
    j = data.draw(st.sampled_from(ideals))
    assert combine_ideals("product", j, ideal_colon(i, j)).issubset(i)


@given(rings, st.data())
def test_localization_matches_torsion_quotient(r, data):
    s = data.draw(msets(r))
    if s.contains_zero:
        return
    loc, hom = localize_ring(r, s)
    tor = torsion_ideal(s)
    assert hom.kernel() == tor
    if tor.is_proper:
        q, proj = quotient_ring(r, tor)
        image = [0] * q.order
        for x in range(r.order):
            image[proj(x)] = hom(x)
        iso = ring_iso(q, loc, image)
        assert iso.is_surjective


@given(cyclic_rings)
def test_cyclic_ideal_count_is_divisor_count(r):
    n = r.order
    assert len(enumerate_ideals(r)) == sum(1 for d in range(1, n + 1) if n % d == 0)


def test_ring_hom_validation(z12):
    z6 = make_cyclic_ring(6)
    RingHom(z12, z6, np.arange(12) % 6)
    with pytest.raises(ValueError):
        RingHom(z12, z6, np.zeros(12, dtype=int))
