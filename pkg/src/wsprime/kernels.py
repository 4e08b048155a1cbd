"""Kernel dispatch: compiled extension when importable, numpy otherwise.

Set ``WSPRIME_PURE_PYTHON=1`` to force the fallback (the benchmark and the
backend-agreement tests do this per call by importing both modules).
"""

from __future__ import annotations

import os

BACKEND = "python"
_impl = None

if os.environ.get("WSPRIME_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from wsprime import _ckernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = None

if _impl is None:
    from wsprime import _pykernels as _impl

span_closure = _impl.span_closure
sumset = _impl.sumset
witness_scan = _impl.witness_scan
first_violation = _impl.first_violation
fraction_classes = _impl.fraction_classes

__all__ = [
    "BACKEND",
    "span_closure",
    "sumset",
    "witness_scan",
    "first_violation",
    "fraction_classes",
]
