"""Backend selection for the enumeration kernels.

Importing this module picks the compiled kernels (``proxima._scan``) when the
extension was built, falling back to the pure-Python twin otherwise.  Setting
the environment variable ``PROXIMA_PURE_PYTHON`` to a non-empty value other
than ``0`` forces the fallback, which is how the parity tests and the
benchmark exercise both implementations in one process.
"""

from __future__ import annotations

import os

import numpy as np

from proxima import _scan_py

_FORCED_PURE = os.environ.get("PROXIMA_PURE_PYTHON", "") not in ("", "0")

try:
    if _FORCED_PURE:
        raise ImportError("pure-Python backend forced by PROXIMA_PURE_PYTHON")
    from proxima import _scan as _default_impl  # type: ignore[attr-defined]

    BACKEND = "compiled"
except ImportError:
    _default_impl = _scan_py
    BACKEND = "python"


def available_backends() -> tuple[str, ...]:
    names = ["python"]
    try:
        from proxima import _scan  # noqa: F401

        names.insert(0, "compiled")
    except ImportError:
        pass
    return tuple(names)


def _impl(backend: str | None):
    if backend is None:
        return _default_impl
    if backend == "python":
        return _scan_py
    if backend == "compiled":
        from proxima import _scan  # raises ImportError when not built

        return _scan
    raise ValueError(f"unknown backend {backend!r}")


def _as_float_matrix(m) -> np.ndarray:
    a = np.ascontiguousarray(m, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("kernel inputs must be square matrices")
    return a


def _as_mask(m, k: int) -> np.ndarray:
    a = np.ascontiguousarray(m, dtype=np.uint8)
    if a.shape != (k, k):
        raise ValueError("distinctness mask must match the matrices")
    return a


def scan_pairs(lhs, rhs, distinct, eps: float, backend: str | None = None):
    """Dispatch ``scan_pairs`` to the selected backend (see module docstring)."""
    l = _as_float_matrix(lhs)
    r = _as_float_matrix(rhs)
    m = _as_mask(distinct, l.shape[0])
    if r.shape != l.shape:
        raise ValueError("lhs and rhs must have identical shapes")
    return _impl(backend).scan_pairs(l, r, m, float(eps))


def scan_triples(lhs, rhs, distinct, eps: float, backend: str | None = None):
    """Dispatch ``scan_triples`` to the selected backend (see module docstring)."""
    l = _as_float_matrix(lhs)
    r = _as_float_matrix(rhs)
    m = _as_mask(distinct, l.shape[0])
    if r.shape != l.shape:
        raise ValueError("lhs and rhs must have identical shapes")
    return _impl(backend).scan_triples(l, r, m, float(eps))
