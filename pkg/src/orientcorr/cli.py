"""orientcorr command line.

Every subcommand writes one table (CSV with a schema line, or JSON) to
--out or stdout.  Precondition failures exit with status 2 and a JSON
object {"error": ..., "message": ...} on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import mpmath

from . import analysis, asymptotics
from .csvio import expand_row, write_csv
from .gnm import gnm_tables, m_from_fraction, q_exact
from .gnp import SYMBOLIC, SYMBOLIC_MAX_N, Backend, SizeGuardError, cov_gnp
from .montecarlo import Model, estimate_annealed, estimate_quenched
from .oracle import OracleSizeError
from .poly import as_rational
from .report import to_decimal

EXIT_USAGE = 2
CURVE_DEFAULT_MAX_N = 30
TABLE_GRID = 64


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        _fail("usage", message)


def _fail(kind: str, message: str, command: str | None = None):
    payload = {"error": kind, "message": message}
    if command:
        payload["command"] = command
    sys.stderr.write(json.dumps(payload) + "\n")
    sys.exit(EXIT_USAGE)


def parse_n(text: str) -> list[int]:
    """"8", "4-8" or "4,6,8"."""
    out: list[int] = []
    try:
        for part in text.split(","):
            if "-" in part:
                a, b = part.split("-", 1)
                out.extend(range(int(a), int(b) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad n list {text!r}") from None
    if not out:
        raise argparse.ArgumentTypeError("empty n list")
    return out


def parse_rational(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (ValueError, ZeroDivisionError, TypeError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _positive(text: str) -> Fraction:
    v = parse_rational(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return v


def _common() -> argparse.ArgumentParser:
    c = argparse.ArgumentParser(add_help=False)
    g = c.add_argument_group("global options")
    g.add_argument("--backend", choices=("symbolic", "numeric", "float"), default=None)
    g.add_argument("--precision-bits", type=int, default=2560)
    g.add_argument("--out", default=None, help="output file (default stdout)")
    g.add_argument("--format", choices=("csv", "json"), default="csv")
    g.add_argument("--digits", type=int, default=17)
    g.add_argument("--tol", type=_positive, default=Fraction(1, 10**6))
    g.add_argument("--grid", type=int, default=None,
                   help="p grid points (zero scan: 2048, tables: 64)")
    g.add_argument("--no-exact", action="store_true", help="omit the a/b columns")
    g.add_argument("--allow-large", action="store_true", help="lift size guards")
    g.add_argument("--long-run", action="store_true", help="permit hour-scale computations")
    g.add_argument("--progress", action="store_true", help="progress lines on stderr")
    return c


def _mc(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("sampling options")
    g.add_argument("--trials", type=int, default=100_000)
    g.add_argument("--seed", type=int, default=1)
    g.add_argument("--streams", type=int, default=8)
    g.add_argument("--workers", type=int, default=1)
    g.add_argument("--model", choices=("gnp", "gnm"), default="gnp")
    g.add_argument("--p", type=parse_rational, default=None)
    g.add_argument("--m", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = _Parser(prog="orientcorr", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("curve", parents=[common], help="relative covariance curves on a p grid")
    s.add_argument("--n", type=parse_n, required=True)
    s.add_argument("--p", type=parse_rational, action="append", help="explicit points instead of the grid")

    s = sub.add_parser("zeros", parents=[common], help="sign changes of the covariance in p")
    s.add_argument("--n", type=parse_n, required=True)
    s.add_argument("--no-quenched", action="store_true")

    s = sub.add_parser("decompose", parents=[common], help="split Cov over the edge count")
    s.add_argument("--n", type=parse_n, required=True)
    s.add_argument("--p", type=parse_rational, action="append", help="repeatable; default: grid")

    s = sub.add_parser("quenched", parents=[common], help="annealed vs quenched covariance")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--mc-trials", type=int, default=0,
                   help="with n > 7: graph trials per grid point for a sampled quenched curve")
    s.add_argument("--seed", type=int, default=1)
    s.add_argument("--workers", type=int, default=1)

    sub.add_parser("pc", parents=[common], help="critical G(n, m) density")

    s = sub.add_parser("gnm-table", parents=[common], help="exact G(n, m) probabilities")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, default=None, help="single row")
    s.add_argument("--m-frac", type=parse_rational, default=None, help="single row at m = round(x N)")

    s = sub.add_parser("q-exact", parents=[common], help="probability that l oriented edges avoid G(n, m)")
    s.add_argument("--l", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, required=True)

    s = sub.add_parser("simulate", parents=[common], help="Monte-Carlo estimate")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--estimator", choices=("annealed", "quenched"), default="annealed")
    s.add_argument("--se", choices=("delta", "jackknife"), default="delta")
    _mc(s)
    return ap


def _backend(args, p=None) -> Backend:
    mode = args.backend or "symbolic"
    if mode == "symbolic":
        return SYMBOLIC
    if p is None:
        return Backend(mode, Fraction(1, 2), args.precision_bits)
    return Backend(mode, p, args.precision_bits)


def _progress(args):
    if not args.progress:
        return None

    def report(info):
        sys.stderr.write(json.dumps({"progress": info}) + "\n")
        sys.stderr.flush()
    return report


def _emit(args, table: str, rows: list[dict], notes=()) -> None:
    if args.format == "csv":
        text = write_csv(table, rows, args.digits, not args.no_exact, notes=notes)
    else:
        doc = {"table": table, "notes": list(notes),
               "rows": [expand_row(r, args.digits, not args.no_exact) for r in rows]}
        text = json.dumps(doc, indent=1, default=str) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_curve(args) -> None:
    if args.backend in (None, "symbolic"):
        big = [n for n in args.n if n > CURVE_DEFAULT_MAX_N]
        if big and not args.allow_large:
            raise SizeGuardError(f"symbolic curves beyond n = {CURVE_DEFAULT_MAX_N} need --allow-large")
    grid = sorted(args.p) if args.p else analysis.p_grid(args.grid or TABLE_GRID)
    if any(not 0 < p <= 1 for p in grid):
        raise UsageError("curve points must lie in (0, 1]")
    rows = []
    for n in args.n:
        rows.extend(analysis.curve_rows(n, grid, _backend(args), allow_large=args.allow_large,
                                        long_running=args.long_run, progress=_progress(args)))
    _emit(args, "curve", rows, ["normalized_cov = cov / (3 (1 - p/2)^(2n-3))"])


def cmd_zeros(args) -> None:
    backend = _backend(args)
    if backend.mode == "float":
        raise UsageError("zeros need an exact backend (symbolic or numeric)")
    zr = analysis.zero_rows(args.n, args.tol, args.grid or analysis.DEFAULT_GRID, backend,
                            quenched=not args.no_quenched, long_running=args.long_run)
    _emit(args, "zeros", [z.to_dict() for z in zr], [f"tol={args.tol}"])


def cmd_decompose(args) -> None:
    ps = args.p or analysis.p_grid(args.grid or TABLE_GRID)
    rows = []
    for n in args.n:
        if n > SYMBOLIC_MAX_N and not args.allow_large:
            raise SizeGuardError(f"decomposition needs symbolic tables; n = {n} is beyond the guard")
        for p in ps:
            rows.append(analysis.decompose(n, p).to_row())
    _emit(args, "decompose", rows, ["*_norm columns are divided by 3 (1 - p/2)^(2n-3)"])


def cmd_quenched(args) -> None:
    n = args.n
    grid = analysis.p_grid(args.grid or TABLE_GRID)
    if n <= 7:
        res = analysis.quenched_curves(n, grid, long_running=args.long_run)
        if n <= 6:
            bad = [r["p"] for r in res["gnp"] if r["quenched_cov"] > r["annealed_cov"]]
            if bad:
                raise ArithmeticError(f"quenched exceeds annealed at p = {bad[0]}")
        rows = [dict(r, kind="gnp") for r in res["gnp"]] + [dict(r, kind="gnm") for r in res["gnm"]]
        _emit(args, "quenched", rows, [f"max_gnm_gap={to_decimal(res['max_gap'], 8)}"])
        return
    if args.mc_trials < 1:
        raise UsageError("n > 7 is sampled: pass --mc-trials")
    rows = []
    for p in grid:
        r = estimate_quenched(n, Model.gnp(float(p)), args.mc_trials, args.seed, workers=args.workers)
        rows.append({"n": n, "p": p, "quenched_cov": r.cov, "se": r.se_cov,
                     "annealed_cov": cov_gnp(n, p, SYMBOLIC).cov})
    _emit(args, "quenched-mc", rows, [f"trials={args.mc_trials} seed={args.seed}"])


def cmd_pc(args) -> None:
    digits = args.digits
    tol = min(args.tol, Fraction(1, 10 ** (digits + 3)))
    bits = max(asymptotics.DEFAULT_BITS, 4 * digits + 64)
    pc = asymptotics.solve_pc(tol, bits)
    with mpmath.workprec(bits):
        resid = abs(asymptotics.pc_function(pc, bits))
        row = {"p_c": mpmath.nstr(pc, digits), "residual": mpmath.nstr(resid, 5), "tol": tol}
    _emit(args, "pc", [row])


def cmd_gnm_table(args) -> None:
    if args.n > SYMBOLIC_MAX_N and not args.allow_large:
        raise SizeGuardError(f"G(n, m) tables need symbolic polynomials; n = {args.n} is beyond the guard")
    t = gnm_tables(args.n, args.allow_large)
    rows = t.rows()
    m = args.m
    if args.m_frac is not None:
        m = m_from_fraction(args.m_frac, args.n)
    if m is not None:
        if not 0 <= m <= t.N:
            raise UsageError(f"m must lie in [0, {t.N}]")
        rows = [rows[m]]
    for r in rows:
        r["relcov"] = t.relcov(r["m"])
    _emit(args, "gnm-table", rows, [f"n={args.n} N={t.N}"])


def cmd_q_exact(args) -> None:
    v = q_exact(args.l, args.n, args.m)
    N = args.n * (args.n - 1) // 2
    p = Fraction(args.m, N)
    bound = (1 - p / 2) ** args.l
    row = {"l": args.l, "n": args.n, "m": args.m, "q": v, "bound": bound}
    if args.l <= 10 * args.n:  # the approximation is only meant for l = O(n)
        row["approx"] = asymptotics.approx_q(args.l, args.n, args.m)
    _emit(args, "q-exact", [row])


def cmd_simulate(args) -> None:
    if args.model == "gnp":
        if args.p is None:
            raise UsageError("--model gnp needs --p")
        model = Model.gnp(float(args.p))
    else:
        if args.m is None:
            raise UsageError("--model gnm needs --m")
        model = Model.gnm(args.m)
    if args.estimator == "annealed":
        r = estimate_annealed(args.n, model, args.trials, args.seed, args.streams, args.workers, args.se)
    else:
        r = estimate_quenched(args.n, model, args.trials, args.seed, args.streams, args.workers)
    row = {k: v for k, v in r.to_dict().items() if k not in ("model", "counts")}
    row.update(model.describe())
    row.update(r.counts)
    _emit(args, "simulate", [row])


COMMANDS = {
    "curve": cmd_curve,
    "zeros": cmd_zeros,
    "decompose": cmd_decompose,
    "quenched": cmd_quenched,
    "pc": cmd_pc,
    "gnm-table": cmd_gnm_table,
    "q-exact": cmd_q_exact,
    "simulate": cmd_simulate,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.digits < 1:
        _fail("usage", "--digits must be >= 1", args.command)
    if args.grid is not None and args.grid < 1:
        _fail("usage", "--grid must be >= 1", args.command)
    try:
        COMMANDS[args.command](args)
    except (SizeGuardError, OracleSizeError) as e:
        _fail("size-guard", str(e), args.command)
    except (UsageError, ValueError) as e:
        _fail("precondition", str(e), args.command)
    return 0


if __name__ == "__main__":
    sys.exit(main())
