#!/usr/bin/env python3
"""Compare the compiled kernels against the pure-Python fallback.

Runs each workload in a subprocess with MDSCONV_BACKEND forced, so the
import-time backend selection is exercised exactly as users hit it.

    python benchmarks/bench_backends.py [--full] [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOADS = [
    ("superregular cauchy q=11 (5x5, 251 minors)", "sr", [11], False),
    ("superregular cauchy q=19 (9x9, 48619 minors)", "sr", [19], False),
    ("superregular cauchy q=23 (11x11, 705431 minors)", "sr", [23], True),
    ("trellis (7,1,2) q=59 (3481 states)", "trellis_cauchy", [7, 1, 2], False),
    ("trellis (2,1,1) GF(2^8) (256 states)", "trellis_exp", [2, 1, 1, 8], False),
    ("trellis (5,1,2) q=47 (2209 states)", "trellis_cauchy", [5, 1, 2], False),
]

WORKER = r"""
import json, sys, time
from mdsconv import kernels
from mdsconv.constructions import cauchy_matrix, construct_high
from mdsconv.distance import free_distance_trellis
from mdsconv.linalg import is_superregular

kind, args, repeat = sys.argv[1], json.loads(sys.argv[2]), int(sys.argv[3])

if kind == "sr":
    target = cauchy_matrix(args[0])
    job = lambda: is_superregular(target, budget=10**7)
elif kind == "trellis_cauchy":
    code = construct_high("cauchy", *args).code
    job = lambda: free_distance_trellis(code)
elif kind == "trellis_exp":
    n, k, delta, N = args
    code = construct_high("exponential", n, k, delta, N=N).code
    job = lambda: free_distance_trellis(code)
else:
    raise SystemExit(f"unknown workload {kind}")

job()  # warm caches (field tables, primitive elements)
best = min(
    (lambda s: (job(), time.perf_counter() - s)[1])(time.perf_counter())
    for _ in range(repeat)
)
print(json.dumps({"backend": kernels.BACKEND, "seconds": best}))
"""


def run_worker(backend, kind, args, repeat):
    env = dict(os.environ, MDSCONV_BACKEND=backend)
    out = subprocess.run(
        [sys.executable, "-c", WORKER, kind, json.dumps(args), str(repeat)],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    result = json.loads(out.stdout)
    assert result["backend"] == backend, f"backend selection failed: {result}"
    return result["seconds"]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--full", action="store_true", help="include the slow rows")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    try:
        run_worker("compiled", "sr", [3], 1)
        have_compiled = True
    except subprocess.CalledProcessError:
        have_compiled = False
        print("compiled backend not built; showing pure timings only\n")

    name_w = max(len(name) for name, *_ in WORKLOADS)
    header = f"{'workload':<{name_w}}  {'pure':>9}  {'compiled':>9}  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, kind, wargs, slow in WORKLOADS:
        if slow and not args.full:
            continue
        pure = run_worker("pure", kind, wargs, args.repeat)
        if have_compiled:
            comp = run_worker("compiled", kind, wargs, args.repeat)
            print(
                f"{name:<{name_w}}  {pure:>8.4f}s  {comp:>8.4f}s  {pure / comp:>7.1f}x"
            )
        else:
            print(f"{name:<{name_w}}  {pure:>8.4f}s  {'-':>9}  {'-':>8}")


if __name__ == "__main__":
    main()
