#!/usr/bin/env python3
"""Benchmark the numba kernels against their pure-numpy twins.

Times the two hot kernels (cyclic Jacobi eigensolver, secular root finder)
at several sizes, plus one end-to-end selection run under each backend,
and checks numerical agreement between the paths.

Usage:
    python scripts/benchmark_kernels.py [--repeats N] [--sizes 16,32,64,128]
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from colsel import GeneratorSpec, generate, run_selection
from colsel import kernels


def _time(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_jacobi(sizes, repeats):
    print(f"{'jacobi_eigh':<18}" + "".join(f"{f'n={n}':>12}" for n in sizes))
    rows = {}
    for backend in kernels.available_backends():
        impl = kernels.get_impl(backend)
        times = []
        for n in sizes:
            rng = np.random.default_rng(n)
            a = rng.standard_normal((n, n))
            a = 0.5 * (a + a.T)
            impl.jacobi_eigh(a, 64, 1e-13)  # warmup / jit compile
            times.append(_time(lambda: impl.jacobi_eigh(a, 64, 1e-13), repeats))
        rows[backend] = times
        print(f"  {backend:<16}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times))
    if len(rows) == 2:
        print("  speedup (np/nb) "
              + "".join(f"{a / b:>11.1f}x" for a, b in zip(rows["numpy"], rows["numba"])))
    print()


def bench_secular(sizes, repeats):
    print(f"{'secular_roots':<18}" + "".join(f"{f'm={m}':>12}" for m in sizes))
    rows = {}
    for backend in kernels.available_backends():
        impl = kernels.get_impl(backend)
        times = []
        for m in sizes:
            rng = np.random.default_rng(m)
            d = np.sort(rng.uniform(0.2, 1.8, m))[::-1].copy()
            z = rng.uniform(1e-4, 0.3, m)
            impl.secular_roots(d, z, 1.0, 1e-8, 1e-12, 200, 100)
            times.append(
                _time(lambda: impl.secular_roots(d, z, 1.0, 1e-8, 1e-12, 200, 100),
                      repeats)
            )
        rows[backend] = times
        print(f"  {backend:<16}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times))
    if len(rows) == 2:
        print("  speedup (np/nb) "
              + "".join(f"{a / b:>11.1f}x" for a, b in zip(rows["numpy"], rows["numba"])))
    print()


def bench_end_to_end(repeats):
    x = generate(GeneratorSpec("random_sphere", 96, 384, seed=1))
    print("run_selection on random_sphere 96x384, epsilon=0.9")
    reports = {}
    original = kernels.active_backend()
    try:
        for backend in kernels.available_backends():
            kernels.set_backend(backend)
            run_selection(x, 0.9)  # warmup
            t = _time(lambda: run_selection(x, 0.9), repeats)
            reports[backend] = (t, run_selection(x, 0.9))
            print(f"  {backend:<16}{t * 1e3:>10.2f}ms")
    finally:
        kernels.set_backend(original)
    if len(reports) == 2:
        (t_np, rep_np), (t_nb, rep_nb) = reports["numpy"], reports["numba"]
        print(f"  speedup (np/nb) {t_np / t_nb:>10.1f}x")
        dev = max(
            max(abs(a - b) for a, b in zip(ra, rb))
            for ra, rb in zip(rep_np.trajectory, rep_nb.trajectory)
        )
        same = rep_np.selected == rep_nb.selected
        print(f"  agreement: same selection={same}, max trajectory dev={dev:.2e}")
    print()


def check_agreement(sizes):
    worst_jac, worst_sec = 0.0, 0.0
    for n in sizes:
        rng = np.random.default_rng(1000 + n)
        a = rng.standard_normal((n, n))
        a = 0.5 * (a + a.T)
        results = []
        for backend in kernels.available_backends():
            w, _, _, _ = kernels.get_impl(backend).jacobi_eigh(a, 64, 1e-13)
            results.append(np.sort(w))
        if len(results) == 2:
            worst_jac = max(worst_jac, float(np.max(np.abs(results[0] - results[1]))))
        d = np.sort(rng.uniform(0.2, 1.8, n))[::-1].copy()
        z = rng.uniform(1e-4, 0.3, n)
        roots = [
            kernels.get_impl(b).secular_roots(d, z, 1.0, 1e-8, 1e-12, 200, 100)[0]
            for b in kernels.available_backends()
        ]
        if len(roots) == 2:
            worst_sec = max(worst_sec, float(np.max(np.abs(roots[0] - roots[1]))))
    print(f"cross-backend agreement: jacobi {worst_jac:.2e}, secular {worst_sec:.2e}")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5,
                        help="timing repetitions, best-of (default 5)")
    parser.add_argument("--sizes", default="16,32,64,128",
                        help="comma-separated matrix sizes (default 16,32,64,128)")
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    print(f"backends: {', '.join(kernels.available_backends())} "
          f"(active: {kernels.active_backend()})\n")
    bench_jacobi(sizes, args.repeats)
    bench_secular(sizes, args.repeats)
    bench_end_to_end(max(1, args.repeats // 2))
    check_agreement(sizes)


if __name__ == "__main__":
    main()
