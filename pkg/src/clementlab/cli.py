"""Command-line interface: ``clementlab {gen,exact,solve,verify,sweep,plot}``.

Exit codes: 0 success, 1 domain or I/O error, 2 usage error.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import dualhahn, harness, matgen, plotting, spectra, verify
from .eigensolve import SolverConfig, bisection_spectrum, solve_symmetric, solve_unsymmetric
from .errors import ClementLabError

__all__ = ["main", "build_parser", "format_values"]


class UsageError(Exception):
    pass


def format_values(values) -> str:
    return "".join(f"{v.real:.17g} {v.imag:.17g}\n" for v in np.asarray(values, dtype=complex))


def _emit(text: str, dest) -> None:
    if dest is None:
        sys.stdout.write(text)
        return
    try:
        Path(dest).write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write {dest}: {exc.strerror}") from exc


def _matrix_flags(p, with_special=True):
    p.add_argument("--n", type=int, required=True, help="matrix order minus one")
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--b", type=float, default=None)
    if with_special:
        p.add_argument("--special-a", type=float, default=None, dest="special_a",
                       help="use H_n(a, -a) for even n, H_n(a, a) for odd n")


def _solver_flags(p):
    p.add_argument("--solver", choices=[k.value for k in harness.SolverKind], default="unsymmetric")
    p.add_argument("--balance", action="store_true", help="diagonal balancing before QR")
    p.add_argument("--max-sweeps", type=int, default=30, dest="max_sweeps",
                   help="QR sweeps per eigenvalue (pooled over the matrix)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="clementlab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a tridiagonal matrix")
    _matrix_flags(g)
    g.add_argument("--symmetric", action="store_true", help="emit the symmetrized form")
    g.add_argument("--scale", type=float, default=None)
    g.add_argument("--out", default=None)

    e = sub.add_parser("exact", help="closed-form eigenvalues")
    _matrix_flags(e)
    e.add_argument("--multiplicity", action="store_true")
    e.add_argument("--vectors", action="store_true",
                   help="also print eigenvectors of the symmetrized matrix")
    e.add_argument("--out", default=None)

    s = sub.add_parser("solve", help="numerical eigenvalues")
    _matrix_flags_optional(s)
    s.add_argument("--matrix", default=None, help="read the matrix from a file written by gen")
    _solver_flags(s)
    s.add_argument("--tol", type=float, default=1e-13, help="bisection tolerance")
    s.add_argument("--out", default=None)

    v = sub.add_parser("verify", help="run the built-in check suites")
    v.add_argument("--suite", choices=list(verify.SUITES) + ["all"], default="all")
    v.add_argument("--seed", type=int, default=0)

    w = sub.add_parser("sweep", help="accuracy sweep over a parameter grid")
    w.add_argument("--n", type=int, required=True)
    w.add_argument("--family", choices=[f.value for f in harness.Family], default="special-a")
    w.add_argument("--a-range", dest="a_range", default=None, metavar="START:STOP:STEP")
    w.add_argument("--b-range", dest="b_range", default=None, metavar="START:STOP:STEP")
    w.add_argument("--b", type=float, default=None)
    w.add_argument("--b-lock", dest="b_lock", choices=["a", "-a"], default=None)
    _solver_flags(w)
    w.add_argument("--csv", default=None)
    w.add_argument("--no-timing", dest="timing", action="store_false")
    w.add_argument("--jobs", type=int, default=os.cpu_count() or 1)

    pl = sub.add_parser("plot", help="SVG plot of a sweep CSV")
    pl.add_argument("--csv", required=True)
    pl.add_argument("--x", choices=["a", "b"], default="a")
    pl.add_argument("--y", choices=["rel_error", "max_imag"], default="rel_error")
    pl.add_argument("--svg", default=None)
    scale = pl.add_mutually_exclusive_group()
    scale.add_argument("--log", dest="log", action="store_true", default=None)
    scale.add_argument("--linear", dest="log", action="store_false")
    return ap


def _matrix_flags_optional(p):
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--b", type=float, default=None)
    p.add_argument("--special-a", type=float, default=None, dest="special_a")


def _check_special(args):
    if args.special_a is not None and (args.a is not None or args.b is not None):
        raise UsageError("--special-a cannot be combined with --a or --b")


def _build_matrix(args):
    if args.special_a is not None:
        return matgen.special(args.n, args.special_a)
    return matgen.extended(args.n, args.a or 0.0, args.b or 0.0)


def _special_b(n, a):
    return -a if n % 2 == 0 else a


def _cmd_gen(args):
    _check_special(args)
    m = _build_matrix(args)
    if args.scale is not None:
        m = matgen.scale(m, args.scale)
    if args.symmetric:
        m = matgen.symmetrize(m)
    _emit(matgen.format_matrix(m), args.out)


def _cmd_exact(args):
    _check_special(args)
    if args.special_a is not None:
        a, b = args.special_a, _special_b(args.n, args.special_a)
        spec = spectra.special_eigenvalues(args.n, a)
    else:
        a, b = args.a or 0.0, args.b or 0.0
        spec = spectra.exact_eigenvalues(args.n, a, b)
    out = [f"# source={spec.source.value}\n", format_values(spec.values)]
    if args.multiplicity:
        rep = spectra.classify(spec)
        doubles = sum(1 for _, c in rep.distinct if c > 1)
        out.append(f"# distinct={len(rep.distinct)} repeated={doubles} "
                   f"max_multiplicity={rep.max_multiplicity} simple={str(rep.is_simple).lower()}\n")
        out.extend(f"# {v.real:.17g} {v.imag:.17g} x{c}\n" for v, c in rep.distinct)
    if args.vectors:
        es = dualhahn.eigenvector_set(args.n, a, b)
        out.append("# eigenvectors of the symmetrized matrix, one per line after its eigenvalue\n")
        for lam, u in zip(es.eigenvalues, es.vectors.T):
            out.append(f"# lambda={lam:.17g}\n")
            out.append(" ".join(f"{x:.17g}" for x in u) + "\n")
    _emit("".join(out), args.out)


def _cmd_solve(args):
    if args.matrix is not None:
        if args.n is not None or args.a is not None or args.b is not None or args.special_a is not None:
            raise UsageError("--matrix cannot be combined with --n, --a, --b or --special-a")
        try:
            text = Path(args.matrix).read_text()
        except OSError as exc:
            raise OSError(f"cannot read {args.matrix}: {exc.strerror}") from exc
        m = matgen.parse_matrix(text, label=str(args.matrix))
    else:
        if args.n is None:
            raise UsageError("solve needs --n or --matrix")
        _check_special(args)
        m = _build_matrix(args)
    cfg = SolverConfig(max_sweeps_per_eigenvalue=args.max_sweeps, balance=args.balance)
    if args.solver == "unsymmetric":
        res = solve_unsymmetric(m, cfg)
    elif args.solver == "symmetric":
        res = solve_symmetric(matgen.symmetrize(m), cfg)
    else:
        res = bisection_spectrum(matgen.symmetrize(m), args.tol)
    text = format_values(res.values) + (
        f"# sweeps={res.iterations} deflations={res.deflations} "
        f"converged={str(res.converged).lower()}\n"
    )
    _emit(text, args.out)
    return 0 if res.converged else 1


def _cmd_verify(args):
    results = verify.run_suite(args.suite, args.seed)
    sys.stdout.write(verify.format_report(results))
    failed = [r for r in results if not r.passed]
    if failed:
        sys.stdout.write(f"FAILED {len(failed)} of {len(results)} checks; first: {failed[0].line()}\n")
        return 1
    sys.stdout.write(f"OK {len(results)} checks\n")
    return 0


def _grid(text, flag):
    try:
        return harness.Grid.parse(text)
    except ValueError as exc:
        raise UsageError(f"{flag}: {exc}") from exc


def _cmd_sweep(args):
    family = harness.Family(args.family)
    given = [x is not None for x in (args.b_range, args.b, args.b_lock)]
    if sum(given) > 1:
        raise UsageError("use at most one of --b-range, --b and --b-lock")
    if family is not harness.Family.EXTENDED and any(given):
        raise UsageError("--b-range/--b/--b-lock apply to the extended family only")
    if family is not harness.Family.CLEMENT and args.a_range is None:
        raise UsageError(f"family {family.value} needs --a-range")
    if family is harness.Family.CLEMENT and args.a_range is not None:
        raise UsageError("the clement family takes no --a-range")
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    a_grid = _grid(args.a_range, "--a-range") if args.a_range else None
    if args.b_range:
        b_spec = _grid(args.b_range, "--b-range")
    elif args.b_lock:
        b_spec = args.b_lock
    else:
        b_spec = args.b
    cfg = harness.SweepConfig(
        n=args.n, family=family, a_grid=a_grid, b_grid=b_spec,
        solver=harness.SolverKind(args.solver), balance=args.balance, max_sweeps=args.max_sweeps,
    )
    records = harness.run_sweep(cfg, jobs=args.jobs)
    harness.write_csv(records, args.csv if args.csv else sys.stdout, timing=args.timing)


def _cmd_plot(args):
    records = harness.read_csv(args.csv)
    plotting.render_svg(records, args.x, args.y, args.svg if args.svg else sys.stdout, log=args.log)


COMMANDS = {
    "gen": _cmd_gen,
    "exact": _cmd_exact,
    "solve": _cmd_solve,
    "verify": _cmd_verify,
    "sweep": _cmd_sweep,
    "plot": _cmd_plot,
}


DASH_VALUE_FLAGS = ("--a-range", "--b-range", "--b-lock")


def _join_dash_values(argv):
    """Glue values that may start with a minus onto their flag: argparse
    would read ``--a-range -10:5:0.25`` as two options."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in DASH_VALUE_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_join_dash_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        rc = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"clementlab {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (ClementLabError, ValueError, OSError) as exc:
        print(f"clementlab {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return rc or 0
