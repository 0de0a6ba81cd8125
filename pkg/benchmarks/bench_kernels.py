"""Benchmark the numba kernels against the pure-Python fallback.

The workload is the package's hot path: build preservers over a seeded
random suite and exhaustively verify each one (thousands of unit max-flow
calls per instance).  The kernel implementation is chosen at import time
from FLOWPRESERVE_NUMBA, so each mode runs in a fresh interpreter.

    python benchmarks/bench_kernels.py            # compare both modes
    python benchmarks/bench_kernels.py --mode pure --seeds 6
"""

import argparse
import os
import subprocess
import sys
import time


def workload(seeds):
    from flowpreserve import _kernels
    from flowpreserve.generators import random_digraph
    from flowpreserve.preserver import ftbfp
    from flowpreserve.verify import verify_ftbfp

    # warm-up / JIT compile outside the timed region
    g0 = random_digraph(5, 8, 0)
    verify_ftbfp(g0, ftbfp(g0, 0, 1, 1).h, 0, 1, 1)

    start = time.perf_counter()
    instances = 0
    for seed in range(seeds):
        g = random_digraph(9, 20, seed)
        for lam, k in [(1, 1), (2, 1), (2, 2)]:
            result = ftbfp(g, 0, lam, k)
            assert verify_ftbfp(g, result.h, 0, lam, k) is None
            instances += 1
    elapsed = time.perf_counter() - start
    mode = "numba" if _kernels.NUMBA_ENABLED else "pure"
    print(f"mode={mode} instances={instances} seconds={elapsed:.3f}")
    return elapsed


def run_mode(mode, seeds):
    env = dict(os.environ)
    env["FLOWPRESERVE_NUMBA"] = "1" if mode == "numba" else "0"
    out = subprocess.run(
        [sys.executable, os.path.abspath(__file__),
         "--mode", mode, "--seeds", str(seeds)],
        env=env, capture_output=True, text=True, check=True)
    line = out.stdout.strip().split("\n")[-1]
    print(line)
    return float(line.split("seconds=")[1])


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--mode", choices=["numba", "pure"],
                        help="run one mode in-process (used by the driver)")
    parser.add_argument("--seeds", type=int, default=8)
    args = parser.parse_args()
    if args.mode:
        workload(args.seeds)
        return
    t_numba = run_mode("numba", args.seeds)
    t_pure = run_mode("pure", args.seeds)
    print(f"speedup: {t_pure / t_numba:.1f}x")


if __name__ == "__main__":
    main()
