#!/usr/bin/env python3
"""Time the numba-compiled kernels against their interpreted originals.

Each kernel is called with identical inputs through the compiled entry point
and through ``kernel.py_func``; the two results are compared before timing.

Usage:
    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --sizes 256 2560 25600 --repeat 5
    python3 benchmarks/bench_kernels.py --end-to-end

Set ``CCEXP_DISABLE_NUMBA=1`` to make the package itself run interpreted;
this script compiles the kernels explicitly either way.
"""
import argparse
import time

import numpy as np

from ccexp import _kernels
from ccexp._accel import NUMBA_ENABLED, compile_kernel


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def pair(name):
    """(compiled, interpreted) versions of a kernel."""
    k = getattr(_kernels, name)
    py = k.py_func
    fast = k if NUMBA_ENABLED else compile_kernel(py)
    return fast, py


def case_recurrence(n, z=1e6j):
    # purely imaginary |z| > n keeps the raw recurrence in its stable range
    fast, py = pair("recurrence_fill")
    rho0, rho1 = _kernels.seeds(z)
    ge, go = _kernels.gamma_pair(z)

    def run(fn):
        rho = np.zeros(n + 1, dtype=np.complex128)
        om = np.zeros(n + 1, dtype=np.complex128)
        rho[0], rho[1] = rho0, rho1
        om[0], om[1] = rho0, 0.5 * rho1
        fn(rho, om, z, n, ge, go)
        return rho

    return (lambda: run(fast)), (lambda: run(py))


def case_thomas(n, z=-300.0 + 50j):
    fast, py = pair("skew_thomas")
    d = np.arange(1, n + 1, dtype=float)
    off = 1.0 / np.sqrt(d[:-1] * d[1:])
    c = np.random.default_rng(0).standard_normal(n) + 0j
    return (lambda: fast(off, c, z)[0]), (lambda: py(off, c, z)[0])


def case_moments(n, z=-40.0j):
    fast, py = pair("theta_moments")
    from ccexp.oracle import _theta_nodes

    theta, w = _theta_nodes(max(16, n // 8), 16)
    return (lambda: fast(n, z, theta, w)[0]), (lambda: py(n, z, theta, w)[0])


CASES = {
    "recurrence_fill": case_recurrence,
    "skew_thomas": case_thomas,
    "theta_moments": case_moments,
}


def end_to_end(sizes, repeat):
    """compute_weights wall time at a few |z| (uses whatever mode is active)."""
    from ccexp import compute_weights

    compute_weights(-10.0, 64)
    print(f"\ncompute_weights (numba {'on' if NUMBA_ENABLED else 'off'})")
    print(f"{'L':>8} {'z':>14} {'seconds':>12}")
    for L in sizes:
        for z in (-1e2, -1e3 + 1e3j, 1e6j):
            t, _ = best_of(lambda: compute_weights(z, L), repeat)
            print(f"{L:>8} {str(z):>14} {t:12.3e}")


def main():
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[256, 2560, 25600])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--kernels", nargs="+", choices=sorted(CASES), default=sorted(CASES))
    parser.add_argument("--end-to-end", action="store_true", help="also time compute_weights")
    args = parser.parse_args()

    print(f"{'kernel':<16} {'size':>7} {'numba s':>11} {'python s':>11} {'speedup':>9} {'max diff':>10}")
    for name in args.kernels:
        for n in args.sizes:
            if name == "theta_moments" and n > 2560:
                continue  # interpreted version takes minutes here
            fast, slow = CASES[name](n)
            fast()  # compile / warm cache
            tf, a = best_of(fast, args.repeat)
            ts, b = best_of(slow, 1 if name == "theta_moments" else args.repeat)
            with np.errstate(invalid="ignore"):
                diff = np.nanmax(np.abs(a - b)) if np.all(np.isfinite(a)) else float("nan")
            print(f"{name:<16} {n:>7} {tf:11.3e} {ts:11.3e} {ts / tf:9.1f} {diff:10.2e}")

    if args.end_to_end:
        end_to_end(args.sizes, args.repeat)


if __name__ == "__main__":
    main()
