"""Float kernels, backed by the compiled extension when it is importable.

Set ``DIAGRATIO_PURE_PYTHON=1`` to force the pure-Python implementation.
:func:`get_backend` returns either module explicitly, which the tests and
the benchmark use to compare them.
"""

from __future__ import annotations

import os
from types import ModuleType

import numpy as np

from . import _kernels_py


def _load_compiled() -> ModuleType | None:
    try:
        from . import _kernels  # type: ignore[attr-defined]
    except ImportError:
        return None
    return _kernels


_compiled = _load_compiled()

if _compiled is not None and not os.environ.get("DIAGRATIO_PURE_PYTHON"):
    _impl: ModuleType = _compiled
else:
    _impl = _kernels_py

BACKEND: str = _impl.BACKEND


def get_backend(name: str | None = None) -> ModuleType:
    """``"cython"``, ``"python"`` or ``None`` for the active one."""
    if name is None:
        return _impl
    if name == "python":
        return _kernels_py
    if name == "cython":
        if _compiled is None:
            raise ImportError("compiled kernels are not built; run `pip install -e .`")
        return _compiled
    raise ValueError(f"unknown backend {name!r}")


def has_compiled() -> bool:
    return _compiled is not None


def _vec(v) -> np.ndarray:
    return np.ascontiguousarray(v, dtype=np.float64)


def polygon_area(xs, ys) -> float:
    return _impl.polygon_area(_vec(xs), _vec(ys))


def is_strictly_convex(xs, ys, rel_tol: float = 1e-12) -> bool:
    return bool(_impl.is_strictly_convex(_vec(xs), _vec(ys), rel_tol))


def peripheral_sum(xs, ys) -> float:
    return _impl.peripheral_sum(_vec(xs), _vec(ys))


def cevian_ratio(xs, ys, r: float) -> float:
    return _impl.cevian_ratio(_vec(xs), _vec(ys), float(r))


def cevian_ratios(X, Y, r: float) -> np.ndarray:
    return _impl.cevian_ratios(_vec(X), _vec(Y), float(r))


def convex_mask(X, Y, rel_tol: float = 1e-12) -> np.ndarray:
    return np.asarray(_impl.convex_mask(_vec(X), _vec(Y), rel_tol), dtype=bool)


def closed_form_ratio(a, b, c, d) -> float:
    return _impl.closed_form_ratio(float(a), float(b), float(c), float(d))


def closed_form_ratios(A, B, C, D) -> np.ndarray:
    return _impl.closed_form_ratios(_vec(A), _vec(B), _vec(C), _vec(D))


def params_valid(a, b, c, d) -> bool:
    return bool(_impl.params_valid(float(a), float(b), float(c), float(d)))


def params_feasible(a, b, c, d, rel_tol: float = 1e-12) -> bool:
    return bool(_impl.params_feasible(float(a), float(b), float(c), float(d), rel_tol))


def pentagon_ratio(a, b, c, d, r) -> float:
    return _impl.pentagon_ratio(float(a), float(b), float(c), float(d), float(r))


params_objective = _impl.params_objective
