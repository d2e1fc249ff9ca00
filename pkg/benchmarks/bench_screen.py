"""Time the box screen and the 5x^2 - y^2 = +-4 scan on each backend.

    python3 benchmarks/bench_screen.py [--B 400] [--x 1000000] [--repeat 3]

Each backend's output is checked against the numpy result before timing
is reported. The first numba call includes JIT compilation, so it is run
once as a warm-up and excluded.
"""

import argparse
import time

import numpy as np

from pellgf import _kernels
from pellgf.classifier import pell_system
from pellgf.sequences import PellContext, SeqKind


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--B", type=int, default=400)
    ap.add_argument("--x", type=int, default=1_000_000, help="upper x for the +-4 scan")
    ap.add_argument("--m", type=int, default=13)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-python", action="store_true", help="the pure-Python backend is slow for large B")
    args = ap.parse_args()

    backends = ["numpy"] + (["numba"] if _kernels.HAS_NUMBA else []) + ([] if args.skip_python else ["python"])
    gf = pell_system(PellContext.from_m(args.m), SeqKind.L).gf
    coeffs = (gf.c0, gf.c1, gf.d1, gf.d2)
    if _kernels.HAS_NUMBA:
        _kernels.screen(1, 2, 2, coeffs, "numba")
        _kernels.pm4_scan(0, 10, "numba")

    print(f"screen  m={args.m} L  B={args.B}  ({(2 * args.B + 1) * args.B} cells)")
    ref = None
    for name in backends:
        t, out = best_of(lambda: _kernels.screen(1, args.B + 1, args.B, coeffs, name), args.repeat)
        ref = out if ref is None else ref
        same = "ok" if np.array_equal(out, ref) else "MISMATCH"
        print(f"  {name:<7}{t * 1e3:10.1f} ms  {same}")

    print(f"pm4     x < {args.x}")
    ref = None
    for name in backends:
        t, out = best_of(lambda: _kernels.pm4_scan(0, args.x, name), args.repeat)
        ref = out if ref is None else ref
        same = "ok" if out == ref else "MISMATCH"
        print(f"  {name:<7}{t * 1e3:10.1f} ms  {same}  ({len(out)} solutions)")


if __name__ == "__main__":
    main()
