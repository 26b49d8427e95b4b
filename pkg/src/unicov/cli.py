"""Command-line entry point: ``unicov {region,entangle,clone,verify,entropy-table}``.

Exit codes: 0 success, 1 usage error, 2 I/O error, 3 property-suite failure.
"""

import argparse
import csv
import io
import math
import sys

import numpy as np

from . import serialization as ser
from .analysis import (
    epsilon_separation,
    partial_trace,
    partial_transpose_min_eig,
    trace_distance,
    von_neumann_entropy,
)
from .bloch import canonical_bloch_vector
from .covmap import apply, region_scan, triple_points
from .processes import (
    cloning_output,
    cloning_params,
    entangled_output,
    optimal_entropy,
)
from .suites import SUITES, run_suite

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_FAIL = 0, 1, 2, 3
SPECTRAL_N_MAX = 32


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _dimension(text):
    n = int(text)
    if n < 2:
        raise argparse.ArgumentTypeError(f"dimension must be >= 2, got {n}")
    return n


def _emit(text, out_path):
    if out_path is None:
        sys.stdout.write(text)
        return
    try:
        with open(out_path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {out_path}: {exc}") from exc


def _human(x):
    return f"{x:.6g}"


def cmd_region(args):
    scan = region_scan(args.n, args.alpha, (args.x_min, args.x_max),
                       (args.y_min, args.y_max), args.resolution)
    _emit(ser.region_csv(scan), args.out)
    log = sys.stderr if args.out is None else sys.stdout
    n_phys = int(scan.physical.sum())
    print(f"grid {len(scan.xs)}x{len(scan.ys)}: {n_phys} physical points, "
          f"{len(scan.disagreements())} oracle disagreements", file=log)
    for x, y, nz in triple_points(args.n, args.alpha, (args.x_min, args.x_max),
                                  (args.y_min, args.y_max)):
        print(f"boundary point with all constraints active: x={_human(x)} y={_human(y)} "
              f"({nz} eigenvalue families zero)", file=log)
    return EXIT_OK


def cmd_entangle(args):
    rho = entangled_output(args.n)
    target = np.eye(args.n) / args.n
    report = {
        "N": args.n,
        "entropy": von_neumann_entropy(rho),
        "entropy_closed_form": optimal_entropy(args.n),
        "ppt_min_eig": partial_transpose_min_eig(rho),
        "epsilon": epsilon_separation(rho),
        "marginal_distance": max(trace_distance(partial_trace(rho, k), target) for k in (1, 2)),
    }
    if args.emit == "json":
        payload = dict(report, state=ser.matrix_to_dict(rho))
        _emit(ser.dumps(payload) + "\n", args.out)
    elif args.emit == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(list(report))
        w.writerow([report["N"]] + [ser.fmt(v) for k, v in report.items() if k != "N"])
        _emit(buf.getvalue(), args.out)
    else:
        for k, v in report.items():
            print(f"{k}: {_human(v)}")
    return EXIT_OK


def cmd_clone(args):
    N = args.n
    rho = apply(cloning_params(N), canonical_bloch_vector(N))
    p11 = float(rho[0, 0].real)
    closed = 2 / (N + 1)
    state_diff = float(np.abs(rho - cloning_output(N)).max())
    if args.emit == "json":
        payload = {"N": N, "P11": p11, "P11_closed_form": closed,
                   "difference": abs(p11 - closed), "state_difference": state_diff,
                   "params": cloning_params(N).to_dict()}
        _emit(ser.dumps(payload) + "\n", args.out)
    else:
        print(f"P11 (map): {ser.fmt(p11)}")
        print(f"P11 (closed form 2/(N+1)): {ser.fmt(closed)}")
        print(f"difference: {abs(p11 - closed):.3e}")
        print(f"max |map output - closed-form state|: {state_diff:.3e}")
    return EXIT_OK


def cmd_verify(args):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    failed = False
    for name in names:
        res = run_suite(name, args.n, args.trials, args.seed)
        if args.verbose:
            for k, dev in enumerate(res.deviations):
                print(f"{name} trial {k}: max deviation {dev:.3e}")
        status = "PASS" if res.passed else "FAIL"
        print(f"{status} {name}: {len(res.deviations)} trials, "
              f"max deviation {res.max_deviation:.3e} (tol {res.tolerance:g})")
        failed |= not res.passed
    return EXIT_FAIL if failed else EXIT_OK


def entropy_table_rows(n_max):
    for N in range(2, n_max + 1):
        closed = optimal_entropy(N)
        spectral = von_neumann_entropy(entangled_output(N)) if N <= SPECTRAL_N_MAX else None
        S = closed if spectral is None else spectral
        yield N, spectral, closed, 2 * math.log(N) - S


def cmd_entropy_table(args):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["N", "spectral_entropy", "closed_form", "gap"])
    for N, spectral, closed, gap in entropy_table_rows(args.n_max):
        w.writerow([N, "" if spectral is None else ser.fmt(spectral), ser.fmt(closed),
                    ser.fmt(gap)])
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def build_parser():
    p = _Parser(prog="unicov", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("region", help="scan the physical (beta*m11, C) region")
    r.add_argument("--n", type=_dimension, default=3)
    r.add_argument("--alpha", type=float, default=0.0)
    r.add_argument("--x-min", type=float, default=-0.3)
    r.add_argument("--x-max", type=float, default=0.3)
    r.add_argument("--y-min", type=float, default=-0.3)
    r.add_argument("--y-max", type=float, default=0.3)
    r.add_argument("--resolution", type=int, default=201)
    r.set_defaults(func=cmd_region)

    e = sub.add_parser("entangle", help="optimal entangler diagnostics")
    e.add_argument("--n", type=_dimension, required=True)
    e.add_argument("--emit", choices=["json", "csv"], default=None)
    e.set_defaults(func=cmd_entangle)

    c = sub.add_parser("clone", help="optimal cloner fidelity")
    c.add_argument("--n", type=_dimension, required=True)
    c.add_argument("--emit", choices=["json"], default=None)
    c.set_defaults(func=cmd_clone)

    v = sub.add_parser("verify", help="run a seeded property suite")
    v.add_argument("--suite", choices=[*SUITES, "all"], required=True)
    v.add_argument("--n", type=_dimension, default=3)
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--verbose", action="store_true", help="print every trial")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("entropy-table", help="entangler entropy versus N")
    t.add_argument("--n-max", type=_dimension, required=True)
    t.set_defaults(func=cmd_entropy_table)

    for sp in (r, e, c, v, t):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", default=None, help="write output here instead of stdout")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"unicov: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"unicov: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
