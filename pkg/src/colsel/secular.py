"""Spectrum of a Gram matrix after appending one unit-norm column.

Appending column x to Y turns Y^T Y into a matrix that, expressed in the
eigenbasis of Y^T Y, is an arrowhead: head entry 1 (the unit norm of x),
shaft the old eigenvalues, and couplings c_k = v_k^T Y^T x. Its
eigenvalues are the roots of the rational function

    q(t) = 1 - t + sum_k c_k^2 / (t - lam_k),

one per gap between consecutive poles plus one beyond each end. Roots are
located by bracketed bisection plus safeguarded Newton (see ``kernels``);
eigenvectors follow in closed form. Poles with negligible coupling are
deflated and pass through unchanged, and near-coincident poles are merged
onto a single representative direction before root-finding.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import (
    BracketFailureError,
    DegenerateRootError,
    PoleEvaluationError,
)
from .linalg import SymEig

DEFLATION_RTOL = 1e-12
CLUSTER_GAP = 1e-12
INTERLACE_TOL = 1e-10
MAX_EXPAND = 200


@dataclass(frozen=True)
class ArrowheadSpectrum:
    """Eigenvalues (descending) of the bordered Gram matrix, and optionally
    its eigenvectors expressed in the bordered basis (coordinate 0 is the
    appended column, coordinates 1..r the old eigendirections)."""

    roots: np.ndarray
    vectors_in_eigenbasis: np.ndarray | None = None


def couplings(spectral: SymEig, selected_columns: np.ndarray, new_column: np.ndarray) -> np.ndarray:
    """Projections of Y^T x onto the eigendirections of Y^T Y."""
    return spectral.vectors.T @ (selected_columns.T @ new_column)


def secular_eval(lam: float, values: np.ndarray, coup: np.ndarray) -> float:
    """Evaluate q(lam) = 1 - lam + sum of c_k^2 / (lam - lam_k).

    Poles with exactly zero coupling contribute nothing and may coincide
    with ``lam``; an active pole hit raises PoleEvaluationError.
    """
    values = np.asarray(values, dtype=np.float64)
    coup = np.asarray(coup, dtype=np.float64)
    active = coup != 0.0
    d = values[active]
    gaps = lam - d
    if np.any(np.abs(gaps) < 1e-300):
        k = int(np.where(active)[0][np.argmin(np.abs(gaps))])
        raise PoleEvaluationError(f"evaluation point coincides with active pole {k}")
    return float(1.0 - lam + np.sum(coup[active] ** 2 / gaps))


def _deflate(values: np.ndarray, coup: np.ndarray):
    """Split poles into solver input and pass-through values.

    Returns (reps, weights, groups, passthrough) where ``reps`` are the
    distinct representative poles fed to the root-finder, ``weights`` their
    combined squared couplings, ``groups`` the original index lists backing
    each representative, and ``passthrough`` the (index, value) pairs whose
    eigenvalues survive unchanged.
    """
    r = values.shape[0]
    lam_max = float(values[0]) if r else 1.0
    thr = DEFLATION_RTOL * max(1.0, lam_max)
    passthrough = []
    active_idx = []
    for k in range(r):
        if abs(coup[k]) < thr:
            passthrough.append(k)
        else:
            active_idx.append(k)
    reps, weights, groups = [], [], []
    for k in active_idx:
        if groups and values[groups[-1][-1]] - values[k] <= CLUSTER_GAP:
            groups[-1].append(k)
            weights[-1] += coup[k] ** 2
        else:
            groups.append([k])
            reps.append(float(values[k]))
            weights.append(coup[k] ** 2)
    for g in groups:
        # all but the group leader pass through; the leader's pole carries
        # the root-sum-square coupling of the whole cluster
        passthrough.extend(g[1:])
    return (
        np.asarray(reps, dtype=np.float64),
        np.asarray(weights, dtype=np.float64),
        groups,
        [(k, float(values[k])) for k in sorted(passthrough)],
    )


def _decompose(values: np.ndarray, coup: np.ndarray, want_vectors: bool):
    values = np.asarray(values, dtype=np.float64)
    coup = np.asarray(coup, dtype=np.float64)
    r = values.shape[0]
    if coup.shape[0] != r:
        raise ValueError(f"couplings length {coup.shape[0]} != eigenvalue count {r}")
    if r > 1 and np.any(np.diff(values) > 0):
        raise ValueError("eigenvalues must be sorted descending")
    reps, weights, groups, passthrough = _deflate(values, coup)
    solved, status = kernels.secular_roots(reps, weights, 1.0, max_expand=MAX_EXPAND)
    if status != 0:
        side = "above" if status == 1 else "below"
        raise BracketFailureError(
            f"no sign change bracket {side} the poles after {MAX_EXPAND} expansions"
        )
    all_vals = np.concatenate(
        [solved, np.array([v for _, v in passthrough], dtype=np.float64)]
    )
    order = np.argsort(-all_vals, kind="stable")
    roots = all_vals[order]
    if not want_vectors:
        return roots, None
    dim = r + 1
    n_solved = solved.shape[0]
    cols = np.zeros((dim, dim))
    # solved roots: closed-form arrowhead eigenvector with head coordinate 1;
    # each original coupling divides by the gap to its cluster representative
    for j in range(n_solved):
        mu = solved[j]
        u = np.zeros(dim)
        u[0] = 1.0
        for gi, g in enumerate(groups):
            gap = mu - reps[gi]
            if gap == 0.0:
                raise DegenerateRootError(
                    f"root {j} coincides with pole {gi} despite deflation"
                )
            for k in g:
                u[1 + k] = coup[k] / gap
        cols[:, j] = u / np.linalg.norm(u)
    # pass-through vectors: a deflated pole keeps its old eigendirection; a
    # merged cluster member gets one direction orthogonal to the cluster's
    # combined coupling (columns 1.. of a Householder reflector sending e1
    # to that coupling direction)
    vec_for: dict[int, np.ndarray] = {}
    for g in groups:
        m = len(g)
        if m < 2:
            continue
        gvec = np.array([coup[k] for k in g])
        w = gvec / np.linalg.norm(gvec)
        w[0] += 1.0 if w[0] >= 0 else -1.0
        h = np.eye(m) - 2.0 * np.outer(w, w) / float(w @ w)
        for i in range(1, m):
            u = np.zeros(dim)
            for row, k in enumerate(g):
                u[1 + k] = h[row, i]
            vec_for[g[i]] = u
    for k, _v in passthrough:
        if k not in vec_for:
            u = np.zeros(dim)
            u[1 + k] = 1.0
            vec_for[k] = u
    for j, (k, _v) in enumerate(passthrough):
        cols[:, n_solved + j] = vec_for[k]
    return roots, cols[:, order]


def append_column_spectrum(values, coup, want_vectors: bool = False) -> ArrowheadSpectrum:
    """Eigenvalues of the Gram matrix grown by one unit-norm column.

    ``values`` is the current spectrum (descending) and ``coup`` the
    couplings of the new column in the current eigenbasis. Roots are
    accurate to 1e-12 (absolute or relative, whichever is looser).
    """
    roots, vecs = _decompose(values, coup, want_vectors)
    return ArrowheadSpectrum(roots, vecs)


def arrowhead_eigenvectors(values, coup, roots) -> np.ndarray:
    """Orthonormal eigenvectors of the bordered matrix in the bordered basis.

    ``roots`` must be the output of ``append_column_spectrum`` for the same
    inputs; they are recomputed internally and cross-checked.
    """
    roots = np.asarray(roots, dtype=np.float64)
    computed, vecs = _decompose(values, coup, want_vectors=True)
    if computed.shape != roots.shape or np.max(np.abs(computed - roots)) > 1e-8:
        raise ValueError("supplied roots do not match these eigenvalues/couplings")
    return vecs


def check_interlacing(old_values, new_values, tol: float = INTERLACE_TOL) -> bool:
    """True iff the new spectrum interlaces the old one within ``tol``:
    new[j] >= old[j] and old[j] >= new[j+1] for every j."""
    old = np.asarray(old_values, dtype=np.float64)
    new = np.asarray(new_values, dtype=np.float64)
    r = old.shape[0]
    if new.shape[0] != r + 1:
        raise ValueError(f"expected sizes r and r+1, got {r} and {new.shape[0]}")
    if r == 0:
        return True
    upper_ok = bool(np.all(new[: r] >= old - tol))
    lower_ok = bool(np.all(new[1 : r + 1] <= old + tol))
    return upper_ok and lower_ok
