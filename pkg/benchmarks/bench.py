"""Compiled-vs-pure kernel benchmark.

Runs the hot kernels through both backends and prints a timing table.
Usage: python benchmarks/bench.py [--quick]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from cslcs import _pure
from cslcs._rng import stream_seed
from cslcs.strings import Seed, random_string

try:
    from cslcs import _kernels
except ImportError:
    _kernels = None


def timeit(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true", help="smaller sizes")
    args = parser.parse_args()

    n = 512 if args.quick else 2048
    trials = 4 if args.quick else 16
    a = random_string(n, Seed(1, 0))
    b = random_string(n, Seed(1, 1))
    ic = (np.arange(-n, n) < 0).astype(np.uint8)

    cases = {
        "lcs_dp_u8": lambda k: k.lcs_dp_u8(a.bits, b.bits),
        "lcs_bp": lambda k: k.lcs_bp(a.bits, b.words, n),
        "evolve_cells": lambda k: k.evolve_cells(
            ic.copy(), -n, a.bits, b.bits, 0, n
        ),
        "evolve_b_cells": lambda k: k.evolve_b_cells(
            ic.copy(), -n, 0, n, 0.5, stream_seed(1, 2)
        ),
        "gamma_trials": lambda k: k.gamma_trials(n, trials, 1),
    }

    backends = [("pure", _pure)]
    if _kernels is not None:
        backends.insert(0, ("compiled", _kernels))
    else:
        print("compiled extension not available; timing pure backend only")

    print(f"{'kernel':<16}" + "".join(f"{name:>12}" for name, _ in backends)
          + ("     speedup" if len(backends) == 2 else ""))
    for label, call in cases.items():
        times = [timeit(lambda k=kernel: call(k)) for _, kernel in backends]
        row = f"{label:<16}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[1] / times[0]:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
