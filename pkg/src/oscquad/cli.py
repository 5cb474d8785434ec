"""
Command-line front end.

Subcommands: ``sweep``, ``auto``, ``table1``, ``nodes``.  Exit status is
0 on success, 2 on bad arguments and 3 when a computation did not
converge.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys

import numpy as np

from .autoquad import auto_integrate
from .bench import get_problem, get_rule, records_as_dicts, sweep, table1_replay
from .ef import EFConvergenceError, dump_branch_csv
from .nodes import FAMILIES, dump_trajectories

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NONCONVERGED = 3

SWEEP_FIELDS = ["rule", "omega", "abs_error", "norm_error", "n_fev"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _grid(lo, hi, points, log, allow_zero=False):
    if not (0 <= lo if allow_zero and not log else 0 < lo) or not lo <= hi:
        raise ValueError("need 0 < omega-min <= omega-max" + (" (0 allowed on linear grids)" if allow_zero else ""))
    if points < 1:
        raise ValueError("need at least one point")
    return np.geomspace(lo, hi, points) if log else np.linspace(lo, hi, points)


def _cmd_sweep(args):
    get_problem(args.problem)
    get_rule(args.rule)
    records = sweep(args.rule, args.problem, _grid(args.omega_min, args.omega_max, args.points, args.log))
    with open(args.out, "w", newline="") as fh:
        if args.json:
            json.dump(records_as_dicts(records), fh, indent=1)
        else:
            writer = csv.writer(fh)
            writer.writerow(SWEEP_FIELDS)
            for r in records:
                writer.writerow([r.rule_id, repr(r.omega), repr(r.abs_error), repr(r.normalized_error), r.n_fev])
    print(f"wrote {len(records)} records to {args.out}")
    return EXIT_OK


def _cmd_auto(args):
    problem = get_problem(args.problem)
    res = auto_integrate(problem.at(args.omega), args.nu, args.tol)
    err = abs(res.value - problem.exact(args.omega))
    print(f"value      {res.value.real:.16e} {res.value.imag:+.16e}j")
    print(f"n_it       {res.n_it}")
    print(f"n_fev      {res.n_fev}")
    print(f"est_error  {res.est_error:.3e}")
    print(f"true_error {err:.3e}")
    print(f"converged  {res.converged}")
    return EXIT_OK if res.converged else EXIT_NONCONVERGED


def _cmd_table1(args):
    rows = table1_replay(args.tol)
    print(f"{'omega':>8} {'nu':>3} {'error':>10} {'n_it':>5} {'n_fev':>6}")
    for r in rows:
        print(f"{r['omega']:8g} {r['nu']:3d} {r['error']:10.2e} {r['n_it']:5d} {r['n_fev']:6d}")
    return EXIT_OK if all(r["converged"] for r in rows) else EXIT_NONCONVERGED


def _cmd_nodes(args):
    omegas = _grid(args.omega_min, args.omega_max, args.points, args.log, allow_zero=True)
    fam = args.family
    if fam.startswith("EF") and fam[2:].isdigit():
        dump_branch_csv(int(fam[2:]), omegas, args.out)
    elif fam in FAMILIES:
        dump_trajectories(fam, omegas, args.out)
    else:
        raise ValueError(f"unknown family {fam!r}; known: {sorted(FAMILIES)} plus EF1..EF4")
    print(f"wrote {len(omegas)} rows to {args.out}")
    return EXIT_OK


def build_parser():
    p = _Parser(prog="oscquad", description="Quadrature for int f(x) exp(i w x) dx.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("sweep", help="error of one rule over a frequency grid")
    s.add_argument("--rule", required=True)
    s.add_argument("--problem", required=True)
    s.add_argument("--omega-min", type=float, required=True)
    s.add_argument("--omega-max", type=float, required=True)
    s.add_argument("--points", type=int, default=400)
    s.add_argument("--log", action="store_true", help="logarithmic grid")
    s.add_argument("--out", required=True)
    s.add_argument("--json", action="store_true", help="write JSON instead of CSV")
    s.set_defaults(func=_cmd_sweep)

    a = sub.add_parser("auto", help="automatic integration of a registered problem")
    a.add_argument("--problem", required=True)
    a.add_argument("--omega", type=float, required=True)
    a.add_argument("--nu", type=int, choices=(0, 2, 4), default=2)
    a.add_argument("--tol", type=float, default=1e-9)
    a.set_defaults(func=_cmd_auto)

    t = sub.add_parser("table1", help="iteration and evaluation counts of the automatic scheme")
    t.add_argument("--tol", type=float, default=1e-9)
    t.set_defaults(func=_cmd_table1)

    n = sub.add_parser("nodes", help="dump node trajectories as CSV")
    n.add_argument("--family", required=True, help="FA2..FC4, FCA2, FCC-C2 or EF1..EF4")
    n.add_argument("--omega-min", type=float, required=True)
    n.add_argument("--omega-max", type=float, required=True)
    n.add_argument("--points", type=int, default=400)
    n.add_argument("--log", action="store_true")
    n.add_argument("--out", required=True)
    n.set_defaults(func=_cmd_nodes)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except EFConvergenceError as exc:
        print(f"oscquad: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGED
    except ValueError as exc:
        print(f"oscquad: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
