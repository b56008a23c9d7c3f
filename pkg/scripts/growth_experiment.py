"""Trace-norm growth of T+(K) and ad*_A B for every witness family.

    python scripts/growth_experiment.py --max-n 128 --out growth.csv
"""

import argparse
import csv
import sys
import time

from uplab.growth import WITNESSES, witness_growth


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=128)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--out", default=None, help="CSV with one row per (witness, N)")
    args = ap.parse_args(argv)

    ns, n = [], 4
    while n <= args.max_n:
        ns.append(n)
        n *= 2

    rows = []
    for name in sorted(WITNESSES):
        t0 = time.perf_counter()
        s = witness_growth(ns, name, threads=args.threads)
        dt = time.perf_counter() - t0
        print(f"{name} ({dt:.1f}s)")
        for r in s.rows:
            print(f"  N={r.N:4d}  witness={r.witness_ratio:.4f}  coadjoint={r.coadjoint_ratio:.4f}")
            rows.append((name, r.N, r.witness_ratio, r.coadjoint_ratio))
        if s.witness_fit is not None:
            w, c = s.witness_fit, s.coadjoint_fit
            print(f"  fit witness   {w.slope:.4f} ln N + {w.intercept:.4f}  R2={w.r2:.4f}")
            print(f"  fit coadjoint {c.slope:.4f} ln N + {c.intercept:.4f}  R2={c.r2:.4f}")
            print(f"  slope ratio coadjoint/witness = {c.slope / w.slope:.4f}")

    if args.out:
        with open(args.out, "w", newline="") as fh:
            wr = csv.writer(fh)
            wr.writerow(["witness", "N", "witness_ratio", "coadjoint_ratio"])
            wr.writerows(rows)
    return 0


if __name__ == "__main__":
    sys.exit(main())
