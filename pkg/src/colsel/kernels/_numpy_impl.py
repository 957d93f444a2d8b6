"""Pure numpy kernel implementations.

Fallback twins of the jitted kernels in ``_numba_impl``: same algorithms,
same iteration policies, plain numpy array operations inside Python loops.
"""
from __future__ import annotations

import numpy as np


def _offdiag_norm(a: np.ndarray) -> float:
    # Frobenius norm of the strictly off-diagonal part, computed directly
    # (never as ||A||_F^2 - sum(diag^2), which cancels near convergence).
    return float(np.sqrt(2.0 * np.sum(np.triu(a, 1) ** 2)))


def jacobi_eigh(a_in: np.ndarray, max_sweeps: int, off_tol: float):
    """Cyclic-by-row Jacobi diagonalization of a symmetric matrix.

    Returns ``(diag, vectors, sweeps, off)`` where ``off`` is the final
    off-diagonal Frobenius mass. Convergence means
    ``off <= off_tol * ||A||_F``; the caller decides what to do when the
    sweep budget runs out first. Eigenvalues are unsorted.
    """
    a = np.array(a_in, dtype=np.float64, copy=True)
    n = a.shape[0]
    v = np.eye(n)
    target = off_tol * float(np.sqrt(np.sum(a * a)))
    off = _offdiag_norm(a)
    sweeps = 0
    while off > target and sweeps < max_sweeps:
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = 0.5 * (a[q, q] - a[p, p]) / apq
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap = a[p, :].copy()
                aq = a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = 0.0
                a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
        sweeps += 1
        off = _offdiag_norm(a)
    return np.diag(a).copy(), v, sweeps, off


def _qval(x: float, d: np.ndarray, z: np.ndarray, head: float) -> float:
    return head - x + float(np.sum(z / (x - d)))


def _qval_dq(x: float, d: np.ndarray, z: np.ndarray, head: float):
    t = x - d
    r = z / t
    return head - x + float(r.sum()), -1.0 - float(np.sum(r / t))


def _root_between(d, z, head, lo, hi, bisect_width, rel_tol, max_newton):
    # The rational function is strictly decreasing on (lo, hi): positive at
    # the left end, negative at the right. Endpoints may be poles and are
    # never evaluated.
    for _ in range(200):
        if hi - lo <= bisect_width:
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            return mid
        q = _qval(mid, d, z, head)
        if q > 0.0:
            lo = mid
        elif q < 0.0:
            hi = mid
        else:
            return mid
    x = 0.5 * (lo + hi)
    if x <= lo or x >= hi:
        return x
    for _ in range(max_newton):
        q, dq = _qval_dq(x, d, z, head)
        if q == 0.0:
            return x
        if q > 0.0:
            lo = x
        else:
            hi = x
        xn = x - q / dq
        if xn <= lo or xn >= hi:
            xn = 0.5 * (lo + hi)
        if abs(xn - x) <= rel_tol * max(1.0, abs(xn)):
            return xn
        x = xn
    return x


def secular_roots(d, z, head, bisect_width, rel_tol, max_expand, max_newton):
    """All roots of ``head - x + sum(z_k / (x - d_k))`` for distinct poles.

    ``d`` must be sorted descending with every ``z_k > 0``. Returns
    ``(roots, status)`` with roots descending; status 0 on success, 1/2 when
    the outer bracket above/below the poles could not be established.
    """
    m = d.shape[0]
    roots = np.empty(m + 1)
    if m == 0:
        roots[0] = head
        return roots, 0
    s = float(z.sum())
    grow = s if s > 1e-15 else 1e-15
    base = head if head > d[0] else d[0]
    hi = base + grow
    established = False
    for _ in range(max_expand):
        if _qval(hi, d, z, head) <= 0.0:
            established = True
            break
        grow *= 2.0
        hi = base + grow
    if not established:
        return roots, 1
    roots[0] = _root_between(d, z, head, d[0], hi, bisect_width, rel_tol, max_newton)
    for j in range(1, m):
        roots[j] = _root_between(
            d, z, head, d[j], d[j - 1], bisect_width, rel_tol, max_newton
        )
    grow = s if s > 1e-15 else 1e-15
    base = head if head < d[m - 1] else d[m - 1]
    lo = base - grow
    established = False
    for _ in range(max_expand):
        if _qval(lo, d, z, head) >= 0.0:
            established = True
            break
        grow *= 2.0
        lo = base - grow
    if not established:
        return roots, 2
    roots[m] = _root_between(
        d, z, head, lo, d[m - 1], bisect_width, rel_tol, max_newton
    )
    return roots, 0
