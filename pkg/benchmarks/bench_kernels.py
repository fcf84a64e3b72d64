"""Benchmark the compiled kernels against the NumPy/SciPy fallback.

Usage: python benchmarks/bench_kernels.py [--n 10000] [--res 51]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from tilerank._kernels import _fallback

try:
    from tilerank._kernels import _native
except ImportError:
    _native = None


def bench(fn, *args, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=10_000, help="samples per cell")
    parser.add_argument("--res", type=int, default=51, help="grid resolution")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    comps = rng.dirichlet((1.0, 1.0, 1.0, 1.0), args.n)
    tn, fp, fn_, tp = (np.ascontiguousarray(comps[:, k]) for k in range(4))
    target = tn / (tn + fp)
    coords = np.linspace(0.0, 1.0, args.res)
    x = rng.standard_normal(args.n)
    y = x + rng.standard_normal(args.n)

    impls = [("fallback", _fallback)] + ([("native", _native)] if _native else [])
    print(f"kendall_tau_b, n={args.n}:")
    base = None
    for name, impl in impls:
        t = bench(impl.kendall_tau_b, x, y, repeat=args.repeat)
        base = base or t
        print(f"  {name:<9} {t * 1e3:8.2f} ms   x{base / t:.1f}")

    print(f"tau_grid, {args.res}x{args.res} cells, n={args.n}:")
    base = None
    for name, impl in impls:
        t = bench(impl.tau_grid, target, tn, fp, fn_, tp, coords, coords, repeat=args.repeat)
        base = base or t
        print(f"  {name:<9} {t:8.2f} s    x{base / t:.1f}")
    if _native is None:
        print("(native kernel not built; rebuild with a C compiler to compare)")
    else:
        g_f = _fallback.tau_grid(target, tn, fp, fn_, tp, coords[:6], coords[:6])
        g_n = _native.tau_grid(target, tn, fp, fn_, tp, coords[:6], coords[:6])
        print(f"max |native - fallback| on a 6x6 probe: {np.nanmax(np.abs(g_f - g_n)):.2e}")


if __name__ == "__main__":
    main()
