"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import time

import numpy as np

from cohfilt import _pykernels, measures, states

try:
    from cohfilt import _kernels
except ImportError:
    _kernels = None


def timeit(fn, repeat):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_jacobi(mod, d, calls, rng):
    G = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    A = G + G.conj().T
    return lambda: [mod.jacobi_eigh(A, 1e-14, 200) for _ in range(calls)]


def bench_fidelities(mod, d, n, rng):
    rho = states.random_density(d, seed=0).mat
    a = rng.standard_normal((n, d)) + 1j * rng.standard_normal((n, d))
    return lambda: mod.diag_kraus_fidelities(rho, a)


def bench_bisection(mod, d, n):
    from cohfilt import _backend
    batch = [states.random_density(d, seed=s) for s in range(n)]

    def run():
        saved = _backend.jacobi_eigh
        _backend.jacobi_eigh = mod.jacobi_eigh
        try:
            for rho in batch:
                measures.delta_robustness_bisection(rho)
        finally:
            _backend.jacobi_eigh = saved
    return run


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    mods = [("python", _pykernels)] + ([("cython", _kernels)] if _kernels else [])
    rng = np.random.default_rng(0)
    rows = []
    for d in (2, 4, 8, 16, 32):
        rows.append((f"jacobi_eigh d={d} x100", {n: timeit(bench_jacobi(m, d, 100, rng), args.repeat) for n, m in mods}))
    for d in (2, 4, 8):
        rows.append((f"diag_kraus_fidelities d={d} n=1e5",
                     {n: timeit(bench_fidelities(m, d, 100_000, rng), args.repeat) for n, m in mods}))
    rows.append(("bisection d=6 x20 states", {n: timeit(bench_bisection(m, 6, 20), args.repeat) for n, m in mods}))
    print(f"{'kernel':40s} {'python [s]':>12s} {'cython [s]':>12s} {'speedup':>9s}")
    for label, t in rows:
        cy = t.get("cython")
        speed = f"{t['python'] / cy:8.1f}x" if cy else "      n/a"
        print(f"{label:40s} {t['python']:12.4f} {cy if cy else float('nan'):12.4f} {speed}")


if __name__ == "__main__":
    main()
