"""Command-line entry point.

Subcommands: construct, dual, verify, ball, roots, selfdual-basis,
experiment.  Exit codes: 0 success, 1 domain error (single machine-parsable
line ``error: <code>: <message>`` on stderr), 2 usage error.  The default
seed is the constant 0, never wall-clock entropy: reruns must be
byte-identical.
"""

from __future__ import annotations

import argparse
import math
import random
import sys

from . import balls, construct, experiments, words
from .errors import FormatError, ParamError, ToolkitError
from .fields import ext_field, field_from_q, find_self_dual_basis
from .quadforms import QuadraticForm, count_roots_brute, count_roots_formula, rank_of_form, sample_root


def _build_parser():
    p = argparse.ArgumentParser(prog="sorank", description="Self-orthogonal rank-metric code toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="construct a self-orthogonal code")
    c.add_argument("--repr", choices=["matrix", "vector"], default="matrix")
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--m", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--seed", type=int, default=0)

    d = sub.add_parser("dual", help="dual of a code read from stdin")

    v = sub.add_parser("verify", help="verify a code read from stdin")

    b = sub.add_parser("ball", help="rank-metric ball size")
    b.add_argument("--q", type=int, required=True)
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--m", type=int, required=True)
    b.add_argument("--r", type=int)
    b.add_argument("--exact", action="store_true")
    b.add_argument("--bound", action="store_true")
    b.add_argument("--tau", type=float)

    r = sub.add_parser("roots", help="root counts of a quadratic form")
    r.add_argument("--q", type=int, required=True)
    r.add_argument("--ext-m", type=int, default=0, help="work over GF(q^m) instead of GF(q)")
    r.add_argument("--nvars", type=int, required=True)
    r.add_argument("--coeffs", required=True, help="upper-triangular coefficients, comma separated")
    r.add_argument("--sample", action="store_true", help="also print one uniform root")
    r.add_argument("--nonzero", action="store_true")
    r.add_argument("--seed", type=int, default=0)

    s = sub.add_parser("selfdual-basis", help="find a self-dual basis of GF(q^m)")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)

    e = sub.add_parser("experiment", help="run a seeded list-size experiment")
    e.add_argument("--config", required=True, help="key=value config file")
    e.add_argument("--emit-hist", metavar="PATH", help="write a two-column histogram CSV")
    return p


def _log(msg):
    print(msg, file=sys.stderr)


def _cmd_construct(args, out):
    field = field_from_q(args.q)
    rng = random.Random(args.seed)
    if args.repr == "matrix":
        code = construct.so_code(field, args.n, args.m, args.k, rng)
    else:
        code = construct.so_code(field, args.n, args.m, args.k, rng, repr="vector", ext=ext_field(args.q, args.m))
    out.write(words.dump_code(code))
    return 0


def _cmd_dual(args, out):
    code = words.load_code(sys.stdin.read())
    out.write(words.dump_code(words.dual(code)))
    return 0


def _cmd_verify(args, out):
    code = words.load_code(sys.stdin.read())
    # Independence is checked at load; re-derive the remaining invariants.
    if not words.is_self_orthogonal(code):
        out.write("violated: basis pair with nonzero inner product\n")
        return 1
    if not words.is_contained_in_dual(code):
        out.write("violated: code not contained in its dual\n")
        return 1
    out.write("OK\n")
    return 0


def _cmd_ball(args, out):
    if args.bound:
        if args.tau is None:
            raise ParamError("--bound requires --tau")
        r = int(math.floor(args.tau * args.n))
        exact = balls.ball_size_exact(args.n, args.m, args.q, r)
        logq_exact = math.log(exact, args.q) if exact > 1 else 0.0
        logq_bound = balls.ball_size_upper_bound(args.n, args.m, args.q, args.tau)
        out.write("tau,r,log_q_exact,log_q_bound\n")
        out.write(f"{args.tau},{r},{logq_exact:.9f},{logq_bound:.9f}\n")
        return 0
    if args.r is None:
        raise ParamError("--exact requires --r")
    out.write(str(balls.ball_size_exact(args.n, args.m, args.q, args.r)) + "\n")
    return 0


def _cmd_roots(args, out):
    F = ext_field(args.q, args.ext_m) if args.ext_m else field_from_q(args.q)
    try:
        coeffs = tuple(int(c) for c in args.coeffs.split(","))
    except ValueError as exc:
        raise FormatError("coefficients must be comma-separated integers") from exc
    f = QuadraticForm(args.nvars, coeffs, F)
    out.write(f"rank={rank_of_form(f)}\n")
    out.write(f"brute={count_roots_brute(f)}\n")
    out.write("formula=" + ",".join(str(c) for c in count_roots_formula(f)) + "\n")
    if args.sample:
        root = sample_root(f, random.Random(args.seed), nonzero=args.nonzero)
        out.write("root=" + " ".join(str(v) for v in root) + "\n")
    return 0


def _cmd_selfdual_basis(args, out):
    ext = ext_field(args.q, args.m)
    basis = find_self_dual_basis(ext, random.Random(args.seed))
    if basis is None:
        out.write("absent\n")
    else:
        out.write(" ".join(str(b) for b in basis) + "\n")
    return 0


def _parse_config(path):
    data = {}
    try:
        with open(path) as fh:
            for ln in fh:
                ln = ln.split("#", 1)[0].strip()
                if not ln:
                    continue
                if "=" not in ln:
                    raise FormatError(f"bad config line: {ln!r}")
                key, val = (s.strip() for s in ln.split("=", 1))
                data[key] = val
    except OSError as exc:
        raise FormatError(f"cannot read config: {exc}") from exc
    known = {
        "q": int, "n": int, "m": int, "tau": float, "epsilon": float,
        "trials": int, "seed": int, "repr": str, "ensemble": str,
    }
    parsed = {}
    for key, val in data.items():
        if key not in known:
            raise FormatError(f"unknown config key {key!r}")
        try:
            parsed[key] = known[key](val)
        except ValueError as exc:
            raise FormatError(f"bad value for {key!r}: {val!r}") from exc
    missing = [k for k in ("q", "n", "m", "tau", "epsilon", "trials") if k not in parsed]
    if missing:
        raise FormatError("missing config keys: " + ", ".join(missing))
    return experiments.ExperimentConfig(**parsed)


def _cmd_experiment(args, out):
    cfg = _parse_config(args.config)
    _log(f"resolved config: {cfg.as_dict()}")
    report = experiments.max_list_size_experiment(cfg)
    _log(f"wall time: {report.wall_time:.3f}s")
    out.write(report.to_csv())
    if args.emit_hist:
        with open(args.emit_hist, "w") as fh:
            fh.write(report.histogram_csv())
    return 0


_COMMANDS = {
    "construct": _cmd_construct,
    "dual": _cmd_dual,
    "verify": _cmd_verify,
    "ball": _cmd_ball,
    "roots": _cmd_roots,
    "selfdual-basis": _cmd_selfdual_basis,
    "experiment": _cmd_experiment,
}


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args, sys.stdout)
    except ToolkitError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
