"""Compare the compiled banded-update kernel against the numpy fallback.

Run:  python benchmarks/bench_backends.py [--steps 2000] [--repeats 3]

Times evolve_banded on a localized start for each backend that is importable
in this build, checks they agree to rounding error, and prints steps/second.
"""

from __future__ import annotations

import argparse
import math
import time

import numpy as np

from dqca_lab import _kernels_py
from dqca_lab.evolution import DQCA, band_matrices

try:
    from dqca_lab import _kernels
except ImportError:
    _kernels = None


def run(backend, amps, mats, steps):
    t0 = time.perf_counter()
    out = backend.evolve_banded(amps, *mats, steps)
    return out, time.perf_counter() - t0


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--steps", type=int, default=2000)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    mats = band_matrices(DQCA(1.0 / math.sqrt(2.0)))
    amps = np.zeros((1, 2), dtype=np.complex128)
    amps[0] = [1.0 / math.sqrt(2.0), 1j / math.sqrt(2.0)]

    backends = [("numpy", _kernels_py)]
    if _kernels is not None:
        backends.append(("compiled", _kernels))
    else:
        print("compiled kernel not built; timing numpy fallback only")

    results = {}
    for name, backend in backends:
        best = math.inf
        for _ in range(args.repeats):
            out, dt = run(backend, amps, mats, args.steps)
            best = min(best, dt)
        results[name] = (out, best)
        print(f"{name:>9}: {best:8.3f} s  ({args.steps / best:10.0f} steps/s)  "
              f"norm drift {abs((np.abs(out) ** 2).sum() - 1.0):.2e}")

    if len(results) == 2:
        diff = np.abs(results["numpy"][0] - results["compiled"][0]).max()
        ratio = results["numpy"][1] / results["compiled"][1]
        print(f"max |numpy - compiled| = {diff:.2e}; speedup x{ratio:.1f}")


if __name__ == "__main__":
    main()
