"""Command-line front end.

Exit codes: 0 success, 2 failed check or reproduction, 64 usage error,
65 degenerate input (empty subdifferential at a point the run needs).
"""

from __future__ import annotations

import argparse
import os
import sys
import warnings
from pathlib import Path

import numpy as np

from . import checks, tables
from .algorithms import LambdaMode, Schedule, StopRule, mirror_run, prox_run
from .bregman import divergence, example_generator
from .exceptions import DegeneratePointError, InfeasibleError, LambdaConsistencyWarning
from .functions import DEFAULT_DOMAIN, Domain, example_f
from .serialize import trace_to_csv, trace_to_json
from .solver1d import SolverConfig, Tiebreak

EXIT_OK = 0
EXIT_FAIL = 2
EXIT_USAGE = 64
EXIT_DEGENERATE = 65

TOL_SCALE_ENV = "LCONVEX_CHECK_TOL_SCALE"

# config-file keys and the run options they feed
RUN_KEYS = {
    "method": "method",
    "x0": "x0",
    "schedule": "schedule",
    "domain": "domain",
    "grid": "grid",
    "max-iters": "max_iters",
    "f-tol": "f_tol",
    "lambda-mode": "lambda_mode",
    "tiebreak": "tiebreak",
    "format": "format",
}
RUN_DEFAULTS = {
    "method": "prox",
    "x0": None,
    "schedule": "harmonic",
    "domain": f"{DEFAULT_DOMAIN.lo:g}:{DEFAULT_DOMAIN.hi:g}",
    "grid": str(SolverConfig().grid_points),
    "max_iters": str(StopRule().max_iters),
    "f_tol": repr(StopRule().f_tol),
    "lambda_mode": "literal",
    "tiebreak": "smallest-abs",
    "format": "csv",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_domain(text: str) -> Domain:
    try:
        lo, hi = (float(p) for p in text.split(":"))
        return Domain(lo, hi)
    except ValueError as exc:
        raise UsageError(f"bad domain {text!r}: expected lo:hi with lo < hi") from exc


def parse_schedule(text: str) -> Schedule:
    try:
        if text == "harmonic":
            return Schedule.harmonic()
        if text.startswith("constant:"):
            return Schedule.constant(float(text.split(":", 1)[1]))
        if text.startswith("file:"):
            raw = Path(text.split(":", 1)[1]).read_text()
            return Schedule.explicit([float(v) for v in raw.replace(",", " ").split()])
    except (OSError, ValueError) as exc:
        raise UsageError(f"bad schedule {text!r}: {exc}") from exc
    raise UsageError(f"bad schedule {text!r}: use harmonic, constant:<c> or file:<path>")


def read_config(path: str) -> dict:
    """Flat ``key = value`` file; ``#`` starts a comment."""
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    out = {}
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("_", "-")
        if key not in RUN_KEYS:
            raise UsageError(f"{path}:{n}: unknown key {key!r}")
        out[RUN_KEYS[key]] = value
    return out


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lconvex", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    rep = sub.add_parser("reproduce", help="rerun a reference iterate table and compare")
    rep.add_argument("--table", type=int, required=True, choices=sorted(tables.TABLES))
    rep.add_argument("--lambda-mode", choices=[m.value for m in LambdaMode], default="literal")

    run = sub.add_parser("run", help="run one method on the worked example")
    run.add_argument("--config")
    run.add_argument("--method", choices=["prox", "mirror"])
    run.add_argument("--x0")
    run.add_argument("--schedule", help="harmonic | constant:<c> | file:<path>")
    run.add_argument("--domain", help="lo:hi (write --domain=-5:5)")
    run.add_argument("--grid")
    run.add_argument("--max-iters")
    run.add_argument("--f-tol")
    run.add_argument("--lambda-mode", choices=[m.value for m in LambdaMode])
    run.add_argument("--tiebreak", choices=[t.value for t in Tiebreak])
    run.add_argument("--format", choices=["csv", "json"])

    div = sub.add_parser("divergence", help="dump the curve x -> D(x, y)")
    div.add_argument("--y", type=float, required=True)
    div.add_argument("--domain", default="-2:2")
    div.add_argument("--samples", type=int, default=401)

    chk = sub.add_parser("check", help="run the invariant suites")
    chk.add_argument("--list", action="store_true")
    return p


def _run_options(args) -> dict:
    opts = dict(RUN_DEFAULTS)
    if args.config:
        opts.update(read_config(args.config))
    for key in RUN_KEYS.values():
        value = getattr(args, key)
        if value is not None:
            opts[key] = value
    if opts["x0"] is None:
        raise UsageError("x0 is required (flag --x0 or config key x0)")
    return opts


def cmd_run(args, out) -> int:
    opts = _run_options(args)
    try:
        x0 = float(opts["x0"])
        domain = parse_domain(opts["domain"])
        sched = parse_schedule(opts["schedule"])
        cfg = SolverConfig(grid_points=int(opts["grid"]))
        stop = StopRule(max_iters=int(opts["max_iters"]), f_tol=float(opts["f_tol"]))
        mode = LambdaMode(opts["lambda_mode"])
        tiebreak = Tiebreak(opts["tiebreak"])
        method = opts["method"]
        fmt = opts["format"]
        if method not in ("prox", "mirror") or fmt not in ("csv", "json"):
            raise ValueError(f"bad method {method!r} or format {fmt!r}")
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if not domain.contains(x0):
        raise UsageError(f"x0={x0} outside domain {domain.lo}:{domain.hi}")

    f, gen = example_f(domain), example_generator(domain)
    runner = prox_run if method == "prox" else mirror_run
    trace = runner(f, gen, x0, sched, stop, cfg, mode, tiebreak)
    if fmt == "csv":
        out.write(trace_to_csv(trace))
    else:
        out.write(trace_to_json(trace, x0=x0, schedule=sched.spec(),
                                domain=[domain.lo, domain.hi]))
    return EXIT_OK


def cmd_reproduce(args, out) -> int:
    res = tables.reproduce(args.table, mode=LambdaMode(args.lambda_mode))
    preset = tables.TABLES[args.table]
    out.write(f"table {args.table}: {preset.method}, schedule {preset.schedule.spec()}\n")
    for col in res.columns:
        out.write(f"\nx0 = {col.x0:g}\n")
        out.write(f"{'row':>4} {'|x_k|':>10} {'f(x_k)':>12} {'ref |x|':>10} {'ref f':>10}\n")
        for i, r in enumerate(col.trace):
            ex, ef = col.expected[i] if i < len(col.expected) else (np.nan, np.nan)
            out.write(f"{i + 1:>4} {abs(r.x):>10.4f} {r.f_x:>12.4f} {ex:>10g} {ef:>10g}\n")
        out.write(f"max error |x| {col.x_err:.2e}, f {col.f_err:.2e}\n")
    verdict = "PASS" if res.passed else "FAIL"
    out.write(f"\n{verdict} (tolerance {tables.TABLE_TOL:g})\n")
    return EXIT_OK if res.passed else EXIT_FAIL


def cmd_divergence(args, out) -> int:
    domain = parse_domain(args.domain)
    if args.samples < 2:
        raise UsageError("--samples must be at least 2")
    gen = example_generator(domain)
    lam = gen.lambda_of(args.y)
    xs = np.linspace(domain.lo, domain.hi, args.samples)
    ds = divergence(gen, xs, args.y, lam)
    out.write("x,D\n")
    for x, d in zip(xs, ds):
        out.write(f"{x:.17g},{d:.17g}\n")
    return EXIT_OK


def cmd_check(args, out) -> int:
    if args.list:
        for name in checks.SUITES:
            out.write(name + "\n")
        return EXIT_OK
    raw = os.environ.get(TOL_SCALE_ENV, "1")
    try:
        scale = float(raw)
    except ValueError as exc:
        raise UsageError(f"{TOL_SCALE_ENV}={raw!r} is not a number") from exc
    all_ok = True
    for name, ok, detail in checks.run_all(scale):
        all_ok &= ok
        out.write(f"{'PASS' if ok else 'FAIL'} {name}: {detail}\n")
    return EXIT_OK if all_ok else EXIT_FAIL


COMMANDS = {
    "run": cmd_run,
    "reproduce": cmd_reproduce,
    "divergence": cmd_divergence,
    "check": cmd_check,
}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always", LambdaConsistencyWarning)
            warnings.showwarning = _show_warning
            return COMMANDS[args.command](args, out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"lconvex: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DegeneratePointError, InfeasibleError) as exc:
        print(f"lconvex: degenerate input: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


def _show_warning(message, category, filename, lineno, file=None, line=None):
    print(f"lconvex: warning: {message}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
