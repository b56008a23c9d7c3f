"""Command-line entry point.

Exit status: 0 pass, 1 verification failure, 2 usage or I/O error.
Every flag falls back to an environment variable ``UPLAB_<FLAG>`` and then to
the built-in default.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys

import numpy as np

from . import __version__
from .growth import DEFAULT_WITNESS, WITNESSES, witness_growth
from .matrix_io import MatrixFormatError, load_matrix, matrix_to_json
from .pairing import class_of, pairing_gram
from .poisson import b_plus_recovery, quotient_bracket
from .matrix_core import commutator
from .report import CHECKS, DEFAULT_TOLERANCES, RunConfig, run_verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
PAIRING_THRESHOLD = 1e-8

DEFAULT_DIMS = {
    "verify": "2,4,8,16",
    "witness": "4,8,16,32,64,128",
    "pairing": "1,2,3,4,5,6,7,8",
    "bracket": "2",
    "info": "2",
}


class UsageError(Exception):
    pass


def _env(name, default):
    return os.environ.get(f"UPLAB_{name}", default)


def parse_int_list(text):
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}")


def parse_tolerances(items):
    out = {}
    for item in items:
        for part in item.split(","):
            if not part.strip():
                continue
            name, sep, value = part.partition("=")
            if not sep:
                raise UsageError(f"tolerance must look like name=value, got {part!r}")
            try:
                out[name.strip()] = float(value)
            except ValueError:
                raise UsageError(f"bad tolerance value in {part!r}")
    return out


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dims", default=None,
                        help="comma-separated dims (verify), N values (witness) or n (pairing)")
    common.add_argument("--trials", type=int, default=None)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--tol", action="append", default=None, metavar="NAME=VALUE",
                        help="tolerance override, repeatable")
    common.add_argument("--output", choices=("json", "csv", "pretty"), default=None)
    common.add_argument("--out", default=None, metavar="PATH")
    common.add_argument("--threads", type=int, default=None)

    parser = argparse.ArgumentParser(prog="uplab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", parents=[common], help="randomized identity checks")
    v.add_argument("--checks", default=None, help="comma-separated subset of checks")
    v.add_argument("--records", default=None, metavar="PATH",
                   help="also write every residual record as JSON lines")
    w = sub.add_parser("witness", parents=[common], help="norm growth experiment")
    w.add_argument("--witness", choices=sorted(WITNESSES), default=None)
    b = sub.add_parser("bracket", parents=[common], help="quotient bracket of two matrices")
    b.add_argument("x1")
    b.add_argument("x2")
    sub.add_parser("pairing", parents=[common], help="pairing nondegeneracy")
    sub.add_parser("info", parents=[common], help="identities, tolerances, witnesses")
    return parser


def config_from_args(args) -> RunConfig:
    cmd = args.command
    dims = parse_int_list(args.dims or _env("DIMS", DEFAULT_DIMS[cmd]))
    trials = args.trials if args.trials is not None else int(_env("TRIALS", "100"))
    seed = args.seed if args.seed is not None else int(_env("SEED", "42"))
    tol_items = args.tol if args.tol is not None else [_env("TOL", "")]
    threads = args.threads if args.threads is not None else int(_env("THREADS", "1"))
    output = args.output or _env("OUTPUT", "json")
    out_path = args.out or _env("OUT", None)
    kw = {}
    if cmd == "witness":
        kw["witness"] = args.witness or _env("WITNESS", DEFAULT_WITNESS)
    if cmd == "verify":
        checks = args.checks or _env("CHECKS", None)
        if checks:
            kw["checks"] = tuple(sorted(c.strip() for c in checks.split(",") if c.strip()))
    try:
        return RunConfig(command=cmd, dims=dims, trials=trials, seed=seed,
                         tolerances=parse_tolerances(tol_items), output=output,
                         out_path=out_path, threads=threads, **kw)
    except ValueError as exc:
        raise UsageError(str(exc))


# ------------------------------------------------------------------ render


def _table(header, rows):
    cells = [header] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    return "\n".join(lines) + "\n"


def _csv(header, rows):
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for r in rows:
        buf.write(",".join(str(c) for c in r) + "\n")
    return buf.getvalue()


def _dump(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def render_verify(report, output):
    if output == "json":
        return _dump(report.to_json())
    header = ["identity", "count", "max_relative", "mean_relative", "tolerance", "pass"]
    rows = [[s.identity, s.count, repr(s.max_relative), repr(s.mean_relative),
             repr(s.tolerance), s.passed] for s in report.summaries.values()]
    if output == "csv":
        return _csv(header, rows)
    verdict = "PASS" if report.passed else "FAIL"
    return _table(header, rows) + f"overall: {verdict}\n"


def render_witness(series, output):
    header = ["N", "witness_ratio", "coadjoint_ratio"]
    rows = [[r.N, repr(r.witness_ratio), repr(r.coadjoint_ratio)] for r in series.rows]
    if output == "json":
        return _dump(series.to_json())
    if output == "csv":
        return _csv(header, rows)
    text = _table(header, rows)
    if series.witness_fit is not None:
        for name, fit in (("witness_ratio", series.witness_fit),
                          ("coadjoint_ratio", series.coadjoint_fit)):
            text += (f"fit {name}: slope={fit.slope!r} intercept={fit.intercept!r} "
                     f"r2={fit.r2!r}\n")
    return text


# ---------------------------------------------------------------- commands


def cmd_verify(cfg, args):
    report = run_verify(cfg)
    if args.records:
        with open(args.records, "w") as fh:
            for r in report.records:
                fh.write(json.dumps(r.to_json(), sort_keys=True) + "\n")
    return render_verify(report, cfg.output), (EXIT_OK if report.passed else EXIT_FAIL)


def cmd_witness(cfg, args):
    try:
        series = witness_growth(cfg.dims, cfg.witness, threads=cfg.threads)
    except ValueError as exc:
        raise UsageError(str(exc))
    return render_witness(series, cfg.output), EXIT_OK


def cmd_pairing(cfg, args):
    rows = []
    for n in cfg.dims:
        _, smin = pairing_gram(int(n))
        rows.append([int(n), smin, smin > PAIRING_THRESHOLD])
    ok = all(r[2] for r in rows)
    if cfg.output == "json":
        text = _dump({"threshold": PAIRING_THRESHOLD,
                      "rows": [{"n": n, "smallest_singular_value": s, "pass": p}
                               for n, s, p in rows],
                      "pass": ok})
    else:
        header = ["n", "smallest_singular_value", "pass"]
        fmt = [[n, repr(s), p] for n, s, p in rows]
        text = _csv(header, fmt) if cfg.output == "csv" else _table(header, fmt)
    return text, (EXIT_OK if ok else EXIT_FAIL)


def cmd_bracket(cfg, args):
    try:
        x1, x2 = load_matrix(args.x1), load_matrix(args.x2)
    except (OSError, MatrixFormatError) as exc:
        raise UsageError(str(exc))
    if x1.shape != x2.shape:
        raise UsageError(f"dimension mismatch: {x1.shape[0]} vs {x2.shape[0]}")
    c1, c2 = class_of(x1), class_of(x2)
    cls = quotient_bracket(c1, c2)
    comm = commutator(b_plus_recovery(c1), b_plus_recovery(c2))
    if cfg.output == "csv":
        raise UsageError("bracket supports json and pretty output only")
    if cfg.output == "json":
        return _dump({"class": matrix_to_json(cls.rep, hermitian=True),
                       "commutator": matrix_to_json(comm)}), EXIT_OK
    with np.printoptions(precision=6, suppress=True):
        text = f"class representative:\n{cls.rep}\nb+ commutator:\n{comm}\n"
    return text, EXIT_OK


def cmd_info(cfg, args):
    info = {
        "version": __version__,
        "checks": sorted(CHECKS),
        "default_tolerances": DEFAULT_TOLERANCES,
        "witnesses": sorted(WITNESSES),
        "default_witness": DEFAULT_WITNESS,
    }
    if cfg.output == "json":
        return _dump(info), EXIT_OK
    rows = [[k, repr(v)] for k, v in sorted(DEFAULT_TOLERANCES.items())]
    text = _table(["identity", "tolerance"], rows) if cfg.output == "pretty" \
        else _csv(["identity", "tolerance"], rows)
    return text, EXIT_OK


COMMAND_FUNCS = {
    "verify": cmd_verify,
    "witness": cmd_witness,
    "pairing": cmd_pairing,
    "bracket": cmd_bracket,
    "info": cmd_info,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        text, status = COMMAND_FUNCS[cfg.command](cfg, args)
        if cfg.out_path:
            with open(cfg.out_path, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except UsageError as exc:
        print(f"uplab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"uplab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return status


if __name__ == "__main__":
    sys.exit(main())
