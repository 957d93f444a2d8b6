"""Backend dispatch for the numeric inner loops.

Two interchangeable implementations of the hot kernels exist: a
numba-jitted one (preferred when numba imports) and a pure numpy twin.
The initial choice comes from the ``COLSEL_KERNELS`` environment variable
(``auto`` | ``numba`` | ``numpy``, default ``auto``); ``set_backend``
switches at runtime, which the tests and the kernel benchmark use to
compare both paths in one process.
"""
from __future__ import annotations

import os

import numpy as np

from . import _numpy_impl

_IMPLS = {"numpy": _numpy_impl}

try:
    from . import _numba_impl

    _IMPLS["numba"] = _numba_impl
except ImportError:  # pragma: no cover - exercised only without numba
    _numba_impl = None


def _from_env() -> str:
    choice = os.environ.get("COLSEL_KERNELS", "auto").strip().lower()
    if choice == "auto":
        return "numba" if "numba" in _IMPLS else "numpy"
    if choice not in ("numba", "numpy"):
        raise ValueError(
            f"COLSEL_KERNELS must be 'auto', 'numba' or 'numpy', got {choice!r}"
        )
    if choice not in _IMPLS:
        raise ImportError("COLSEL_KERNELS=numba requested but numba is not importable")
    return choice


_active = _from_env()


def active_backend() -> str:
    return _active


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_IMPLS))


def set_backend(name: str) -> None:
    if name not in _IMPLS:
        raise ValueError(f"unknown kernel backend {name!r}; have {available_backends()}")
    global _active
    _active = name


def get_impl(name: str):
    """Direct access to one backend module (used by the benchmark)."""
    return _IMPLS[name]


def jacobi_eigh(a: np.ndarray, max_sweeps: int = 64, off_tol: float = 1e-13):
    """Dispatch the Jacobi eigensolver kernel; see the backend modules."""
    return _IMPLS[_active].jacobi_eigh(
        np.ascontiguousarray(a, dtype=np.float64), max_sweeps, off_tol
    )


def secular_roots(
    poles: np.ndarray,
    weights: np.ndarray,
    head: float = 1.0,
    bisect_width: float = 1e-8,
    rel_tol: float = 1e-12,
    max_expand: int = 200,
    max_newton: int = 100,
):
    """Dispatch the secular root-finder kernel; see the backend modules."""
    return _IMPLS[_active].secular_roots(
        np.ascontiguousarray(poles, dtype=np.float64),
        np.ascontiguousarray(weights, dtype=np.float64),
        float(head),
        float(bisect_width),
        float(rel_tol),
        max_expand,
        max_newton,
    )
