"""Compare the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5] [--ring 16] [--module 36]

Both backends are imported directly, so no environment variable is needed.
Results of every call are compared before timing starts.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from wsprime import _pykernels
from wsprime.modules import cyclic_module, direct_sum, regular_module
from wsprime.rings import make_cyclic_ring

try:
    from wsprime import _ckernels
except ImportError:
    _ckernels = None


def workloads(ring_order: int, module_order: int):
    r = make_cyclic_ring(ring_order)
    m = regular_module(r)
    k = module_order // ring_order
    if k > 1 and ring_order % k == 0:
        m = direct_sum(m, cyclic_module(r, k))
    subs = [s for s in m.submodules if s.is_proper]
    n = subs[len(subs) // 2]
    in_n = np.zeros(m.order, dtype=np.uint8)
    in_n[list(n.elements)] = 1
    colon = np.zeros(r.order, dtype=np.uint8)
    colon[list(n.residual.elements)] = 1
    units = np.asarray(r.units, dtype=np.int32)
    half = np.zeros(m.order, dtype=np.uint8)
    half[: m.order // 2] = 1
    seed = np.asarray([1], dtype=np.int32)
    label = f"{r.label} / {m.label} (|M|={m.order}, |N|={len(n)})"
    return label, {
        "span_closure": (m.add, m.act, seed),
        "sumset": (m.add, half, in_n),
        "witness_scan": (m.act, r.mul, in_n, colon, np.arange(r.order, dtype=np.int32), 1),
        "first_violation": (m.act, r.mul, in_n, colon, 1, 0),
        "fraction_classes": (m.act, r.mul, units),
    }


def _same(a, b) -> bool:
    return np.array_equal(np.asarray(a), np.asarray(b))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--ring", type=int, default=16)
    ap.add_argument("--module", type=int, default=36)
    args = ap.parse_args(argv)

    label, calls = workloads(args.ring, args.module)
    print(label)
    if _ckernels is None:
        print("compiled extension not built; timing the numpy fallback only")
    print(f"{'kernel':<18}{'numpy (us)':>14}{'cython (us)':>14}{'speedup':>10}")
    for name, call_args in calls.items():
        py_fn = getattr(_pykernels, name)
        t_py = min(timeit.repeat(lambda: py_fn(*call_args), number=20, repeat=args.repeat)) / 20
        if _ckernels is None:
            print(f"{name:<18}{t_py * 1e6:>14.1f}{'-':>14}{'-':>10}")
            continue
        c_fn = getattr(_ckernels, name)
        if not _same(py_fn(*call_args), c_fn(*call_args)):
            raise SystemExit(f"{name}: backends disagree")
        t_c = min(timeit.repeat(lambda: c_fn(*call_args), number=20, repeat=args.repeat)) / 20
        print(f"{name:<18}{t_py * 1e6:>14.1f}{t_c * 1e6:>14.1f}{t_py / t_c:>9.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
