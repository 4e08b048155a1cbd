import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import module_with_sub, msets
from wsprime import _pykernels, kernels
from wsprime.modules import residual_in_ring

ck = pytest.importorskip("wsprime._ckernels")


def _tables(m, n):
    in_n = np.ascontiguousarray(n.array, dtype=np.uint8)
    colon = np.ascontiguousarray(residual_in_ring(n).array, dtype=np.uint8)
    return in_n, colon


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


@given(module_with_sub(), st.data())
def test_span_and_sumset_agree(mn, data):
    m, n = mn
    seed = np.asarray(data.draw(st.lists(st.integers(0, m.order - 1), max_size=3)), dtype=np.int32)
    assert np.array_equal(ck.span_closure(m.add, m.act, seed), _pykernels.span_closure(m.add, m.act, seed))
    a = np.asarray(data.draw(st.lists(st.booleans(), min_size=m.order, max_size=m.order)), dtype=np.uint8)
    in_n, _ = _tables(m, n)
    assert np.array_equal(ck.sumset(m.add, a, in_n), _pykernels.sumset(m.add, a, in_n))


@given(module_with_sub(), st.data(), st.booleans())
def test_scans_agree(mn, data, weak):
    m, n = mn
    in_n, colon = _tables(m, n)
    svals = np.arange(m.ring.order, dtype=np.int32)
    got = ck.witness_scan(m.act, m.ring.mul, in_n, colon, svals, int(weak))
    want = _pykernels.witness_scan(m.act, m.ring.mul, in_n, colon, svals, int(weak))
    assert np.array_equal(np.asarray(got), np.asarray(want))
    s = data.draw(st.integers(0, m.ring.order - 1))
    assert tuple(ck.first_violation(m.act, m.ring.mul, in_n, colon, s, int(weak))) == \
        tuple(_pykernels.first_violation(m.act, m.ring.mul, in_n, colon, s, int(weak)))


@given(module_with_sub(), st.data())
def test_fraction_classes_agree(mn, data):
    m, _ = mn
    s = data.draw(msets(m.ring))
    if s.contains_zero:
        return
    svals = np.asarray(s.elements, dtype=np.int32)
    assert np.array_equal(np.asarray(ck.fraction_classes(m.act, m.ring.mul, svals)),
                          np.asarray(_pykernels.fraction_classes(m.act, m.ring.mul, svals)))


def test_pure_python_import(monkeypatch):
    import importlib

    monkeypatch.setenv("WSPRIME_PURE_PYTHON", "1")
    try:
        mod = importlib.reload(kernels)
        assert mod.BACKEND == "python" and mod.witness_scan is _pykernels.witness_scan
    finally:
        monkeypatch.delenv("WSPRIME_PURE_PYTHON")
        importlib.reload(kernels)
