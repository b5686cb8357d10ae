"""Compare the numba and numpy kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each kernel is called once per backend before timing so JIT compilation is
excluded.  Reported times are the best of ``--repeat`` runs.
"""

import argparse
import timeit

import numpy as np

from momentreg import _kernels
from momentreg.linalg import JACOBI_TOL, MAX_SWEEPS


def cases(rng):
    for m, n in ((200, 20), (2000, 100), (5000, 200)):
        values = rng.uniform(-1, 1, m * n)
        offsets = np.arange(0, m * n + 1, n, dtype=np.int64)
        yield (f"bag_moment_sums M={m} N={n} d=10", "bag_moment_sums",
               (values, offsets, _kernels.CHEBYSHEV, 10, -1.0, 1.0))
    for m, d in ((2000, 10), (20000, 10), (2000, 30)):
        yield (f"accumulate_statistics M={m} d={d}", "accumulate_statistics",
               (rng.normal(size=(m, d)), rng.normal(size=m)))
    for d in (10, 30, 60):
        a = rng.normal(size=(d, d))
        yield (f"jacobi_eigh d={d}", "jacobi_eigh", (a @ a.T, JACOBI_TOL, MAX_SWEEPS))


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    backends = _kernels.backends()
    names = list(backends)
    print(f"{'kernel':<40}" + "".join(f"{n:>12}" for n in names) + f"{'speedup':>10}")
    for label, fn_name, fn_args in cases(np.random.default_rng(0)):
        best = {}
        for name, module in backends.items():
            fn = getattr(module, fn_name)
            fn(*fn_args)
            best[name] = min(timeit.repeat(lambda: fn(*fn_args), number=1, repeat=args.repeat))
        speedup = best["numpy"] / best["numba"] if "numba" in best else float("nan")
        print(f"{label:<40}" + "".join(f"{best[n] * 1e3:>10.2f}ms" for n in names)
              + f"{speedup:>9.1f}x")


if __name__ == "__main__":
    main()
