"""Timing of the compiled kernels against the pure-Python fallback.

Run ``python3 benchmarks/bench_kernels.py``.  Prints one line per kernel and
matrix size with the best-of-repeats time per call for each backend.
"""
import argparse
import timeit

import numpy as np

from heunqes import _kernels_py as py

try:
    from heunqes import _kernels as cy
except ImportError:  # extension not built
    cy = None


def _bands(rng, n):
    z = lambda k: rng.normal(size=k) + 1j * rng.normal(size=k)
    return z(n - 1), z(n), z(n - 1)


def _cases(n, rng):
    sub, diag, sup = _bands(rng, n)
    off = sub * sup
    z0 = 3 * np.exp(2j * np.pi * (np.arange(n) + 0.25) / n)
    rhs = rng.normal(size=n) + 0j
    # Kummer's equation z y'' + (b - z) y' - a y = 0 with a = 0.7, b = 1.3
    parts = np.array([[0, 0, 0], [0, -1, -0.7], [1, 1.3, 0], [0, 0, 0]], dtype=complex)
    return {
        "charpoly_newton": lambda k: k.charpoly_newton(diag, off, 0.3 + 0.1j),
        "aberth": lambda k: k.aberth(diag, off, z0, 300, 4e-16),
        "tridiag_solve": lambda k: k.tridiag_solve(sub, diag, sup, rhs),
        "series_recurrence": lambda k: k.series_recurrence(parts, 2, 0j, 4 * n, 4 * n,
                                                           0.0, 1e-11),
    }


def bench(sizes, repeat, number):
    rng = np.random.default_rng(0)
    backends = [("python", py)] + ([("cython", cy)] if cy is not None else [])
    print(f"{'kernel':<18} {'n':>4} " + " ".join(f"{b:>12}" for b, _ in backends)
          + ("   speedup" if cy is not None else ""))
    for n in sizes:
        for name, call in _cases(n, rng).items():
            times = [min(timeit.repeat(lambda: call(k), repeat=repeat, number=number)) / number
                     for _, k in backends]
            line = f"{name:<18} {n:>4} " + " ".join(f"{t * 1e6:>10.1f}us" for t in times)
            if len(times) == 2:
                line += f"  {times[0] / times[1]:>7.1f}x"
            print(line)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[4, 16, 64])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--number", type=int, default=20)
    args = ap.parse_args(argv)
    if cy is None:
        print("compiled extension not built; timing the Python fallback only")
    bench(args.sizes, args.repeat, args.number)


if __name__ == "__main__":
    main()
