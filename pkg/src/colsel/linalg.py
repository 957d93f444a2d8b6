"""Dense real matrix substrate: normalization, Gram products, symmetric
eigendecomposition and the operator norm.

Matrices are plain float64 numpy arrays with columns as the vectors of
interest. The eigensolver is a cyclic Jacobi iteration (see ``kernels``)
chosen for determinism and high relative accuracy at the sizes this
package targets, not for LAPACK-class speed.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from . import kernels
from .errors import NoConvergenceError, NotSymmetricError, ZeroColumnError

ZERO_COLUMN_TOL = 1e-14
SYMMETRY_TOL = 1e-12
OFFDIAG_TOL = 1e-13
MAX_SWEEPS = 64
DIM_CAP = 4096


class SymEig(NamedTuple):
    """Eigenvalues sorted descending and column-aligned orthonormal vectors."""

    values: np.ndarray
    vectors: np.ndarray


EMPTY_EIG = SymEig(np.empty(0), np.empty((0, 0)))


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Validate and convert to a 2-D float64 array with finite entries."""
    m = np.asarray(a, dtype=np.float64)
    if m.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got shape {m.shape}")
    if m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError(f"{name} must have at least one row and one column")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} contains non-finite entries")
    return m


def column_norms(m: np.ndarray) -> np.ndarray:
    return np.sqrt(np.sum(m * m, axis=0))


def normalize_columns(m) -> np.ndarray:
    """Scale every column to unit euclidean norm.

    Raises ZeroColumnError for any column with norm at or below
    ``ZERO_COLUMN_TOL``.
    """
    m = as_matrix(m)
    norms = column_norms(m)
    bad = np.where(norms <= ZERO_COLUMN_TOL)[0]
    if bad.size:
        raise ZeroColumnError(int(bad[0]))
    return m / norms


def gram(y) -> np.ndarray:
    """Return Y^T Y, symmetrized exactly."""
    y = as_matrix(y)
    b = y.T @ y
    return 0.5 * (b + b.T)


def sym_eig(a, dim_cap: int = DIM_CAP, max_sweeps: int = MAX_SWEEPS) -> SymEig:
    """Full eigendecomposition of a symmetric matrix via cyclic Jacobi.

    The input must be symmetric within ``SYMMETRY_TOL``; it is symmetrized
    as (A + A^T)/2 before iteration. Eigenvalues come back descending,
    with ties keeping the Jacobi output order.
    """
    a = as_matrix(a)
    n = a.shape[0]
    if a.shape[1] != n:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    if n > dim_cap:
        raise ValueError(f"dimension {n} exceeds the configured cap {dim_cap}")
    asym = float(np.max(np.abs(a - a.T)))
    if asym > SYMMETRY_TOL:
        raise NotSymmetricError(
            f"matrix asymmetry {asym:.3e} exceeds tolerance {SYMMETRY_TOL:.1e}"
        )
    s = 0.5 * (a + a.T)
    w, v, sweeps, off = kernels.jacobi_eigh(s, max_sweeps, OFFDIAG_TOL)
    target = OFFDIAG_TOL * float(np.sqrt(np.sum(s * s)))
    if off > target:
        raise NoConvergenceError(
            f"off-diagonal mass {off:.3e} above {target:.3e} after {sweeps} sweeps"
        )
    order = np.argsort(-w, kind="stable")
    return SymEig(w[order], v[:, order])


def operator_norm_sq(x) -> float:
    """Largest eigenvalue of X^T X, computed on the smaller Gram side."""
    x = as_matrix(x)
    n, p = x.shape
    if p <= n:
        s = gram(x)
    else:
        b = x @ x.T
        s = 0.5 * (b + b.T)
    return float(sym_eig(s).values[0])
