"""Compare the numba and numpy GF(p) row-reduction kernels (and exact Fractions for scale).

    python benchmarks/bench_modp_rref.py [--sizes 50 100 200] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time
from fractions import Fraction

import numpy as np

from syzkit._config import DEFAULT_PRIME
from syzkit._kernels import HAS_NUMBA, rref_modp_numba, rref_modp_numpy
from syzkit.exact_linalg import rank_exact


def _best(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[50, 100, 200, 400])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--exact-max", type=int, default=60, help="largest size also timed with Fractions")
    args = ap.parse_args()
    p = DEFAULT_PRIME
    rng = np.random.default_rng(0)
    if HAS_NUMBA:
        rref_modp_numba(np.eye(2, dtype=np.int64), p)  # compile outside the timings
    print(f"{'n':>5} {'numba [s]':>11} {'numpy [s]':>11} {'speedup':>8} {'Fraction [s]':>13}")
    for n in args.sizes:
        a = rng.integers(-50, 51, size=(n, n + n // 2)).astype(np.int64)
        t_np = _best(lambda: rref_modp_numpy(a, p), args.repeat)
        t_nb = _best(lambda: rref_modp_numba(a, p), args.repeat) if HAS_NUMBA else float("nan")
        if HAS_NUMBA:
            assert rref_modp_numba(a, p)[1] == rref_modp_numpy(a, p)[1]
        exact = ""
        if n <= args.exact_max:
            rows = [[Fraction(int(v)) for v in row] for row in a]
            exact = f"{_best(lambda: rank_exact(rows), 1):13.4f}"
        print(f"{n:>5} {t_nb:11.5f} {t_np:11.5f} {t_np / t_nb:8.1f} {exact}")


if __name__ == "__main__":
    main()
