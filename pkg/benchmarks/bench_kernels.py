"""Time the pure-Python kernel against the compiled one.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--quick]

Each case runs propagation or branch-and-prune with both kernels, checks that
the projection counts match, and prints the best wall time and the speedup.
"""

import argparse
import sys
import time

from bcsolve import _backend, _pykernel
from bcsolve.bench import generate
from bcsolve.propagate import Stats, propagate
from bcsolve.solve import branch_and_prune

CASES = [
    ("propagate", "bratu", 20, "hc4"),
    ("propagate", "broyden_banded", 20, "hc3"),
    ("propagate", "feigenbaum", 10, "hc4sb"),
    ("solve", "feigenbaum_factored", 3, "hc4"),
    ("solve", "bratu", 4, "hc3sb"),
    ("solve", "more_cosnard", 3, "hc4"),
]
QUICK = [c for c in CASES if c[0] == "propagate"]


def run_case(kind, family, n, method, kernel):
    p = generate(family, n)
    t = time.perf_counter()
    if kind == "propagate":
        s = Stats()
        propagate(p, method, stats=s, kernel=kernel)
        count = s.projections
    else:
        count = branch_and_prune(p, method, 1e-8, kernel=kernel).stats.projections
    return time.perf_counter() - t, count


def best_of(repeat, *args):
    runs = [run_case(*args) for _ in range(repeat)]
    return min(t for t, _ in runs), runs[0][1]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="propagation cases only")
    args = ap.parse_args(argv)
    if "compiled" not in _backend.available():
        print("compiled kernel is not built; run `pip install -e . --no-build-isolation`",
              file=sys.stderr)
        return 1
    compiled = _backend.load("compiled")
    print(f"{'case':<42}{'projections':>12}{'python s':>11}{'compiled s':>12}{'speedup':>9}")
    for case in QUICK if args.quick else CASES:
        tp, cp = best_of(args.repeat, *case, _pykernel)
        tc, cc = best_of(args.repeat, *case, compiled)
        if cp != cc:
            print(f"projection counts differ on {case}: {cp} vs {cc}", file=sys.stderr)
            return 1
        label = f"{case[0]} {case[1]}({case[2]}) {case[3]}"
        print(f"{label:<42}{cp:>12}{tp:>11.3f}{tc:>12.4f}{tp / tc:>8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
