"""Run every randomized identity check over a sweep of dimensions and print
the worst relative residual per identity and dimension.

    python scripts/verify_sweep.py --dims 2,4,8,16,32 --trials 100 --threads 4
"""

import argparse
import sys
from collections import defaultdict

from uplab.report import RunConfig, run_verify


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dims", default="2,4,8,16")
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args(argv)

    dims = tuple(int(d) for d in args.dims.split(","))
    report = run_verify(RunConfig(dims=dims, trials=args.trials, seed=args.seed,
                                  threads=args.threads))
    worst = defaultdict(float)
    for r in report.records:
        worst[r.identity, r.dim] = max(worst[r.identity, r.dim], r.relative)

    names = sorted(report.summaries)
    width = max(map(len, names))
    print(" " * width + "".join(f"{d:>11d}" for d in dims) + "   tol")
    for name in names:
        cells = "".join(f"{worst[name, d]:11.2e}" for d in dims)
        print(f"{name:<{width}}{cells}   {report.summaries[name].tolerance:g}")
    print("overall:", "PASS" if report.passed else "FAIL")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
