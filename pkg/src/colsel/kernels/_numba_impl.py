"""Numba-jitted kernel implementations.

Same algorithms and iteration policies as ``_numpy_impl``, written as
element loops for nopython compilation.
"""
import numpy as np
from numba import njit


@njit(cache=True)
def _offdiag_norm(a):
    n = a.shape[0]
    s = 0.0
    for i in range(n - 1):
        for j in range(i + 1, n):
            s += a[i, j] * a[i, j]
    return np.sqrt(2.0 * s)


@njit(cache=True)
def jacobi_eigh(a_in, max_sweeps, off_tol):
    n = a_in.shape[0]
    a = a_in.copy()
    v = np.eye(n)
    fro = 0.0
    for i in range(n):
        for j in range(n):
            fro += a[i, j] * a[i, j]
    target = off_tol * np.sqrt(fro)
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
                app = a[p, p]
                aqq = a[q, q]
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for i in range(n):
                    if i != p and i != q:
                        aip = a[i, p]
                        aiq = a[i, q]
                        a[i, p] = c * aip - s * aiq
                        a[i, q] = s * aip + c * aiq
                        a[p, i] = a[i, p]
                        a[q, i] = a[i, q]
                for i in range(n):
                    vip = v[i, p]
                    viq = v[i, q]
                    v[i, p] = c * vip - s * viq
                    v[i, q] = s * vip + c * viq
        sweeps += 1
        off = _offdiag_norm(a)
    w = np.empty(n)
    for i in range(n):
        w[i] = a[i, i]
    return w, v, sweeps, off


@njit(cache=True)
def _qval(x, d, z, head):
    acc = head - x
    for k in range(d.shape[0]):
        acc += z[k] / (x - d[k])
    return acc


@njit(cache=True)
def _qval_dq(x, d, z, head):
    q = head - x
    dq = -1.0
    for k in range(d.shape[0]):
        t = x - d[k]
        rk = z[k] / t
        q += rk
        dq -= rk / t
    return q, dq


@njit(cache=True)
def _root_between(d, z, head, lo, hi, bisect_width, rel_tol, max_newton):
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


@njit(cache=True)
def secular_roots(d, z, head, bisect_width, rel_tol, max_expand, max_newton):
    m = d.shape[0]
    roots = np.empty(m + 1)
    if m == 0:
        roots[0] = head
        return roots, 0
    s = 0.0
    for k in range(m):
        s += z[k]
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
