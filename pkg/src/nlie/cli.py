"""Command-line front end: ``nlie <command> ...``.

Exit codes: 0 success, 1 mathematical negative (identity fails, not
isomorphic, outside the classification), 2 usage or input error.
"""
from __future__ import annotations

import argparse
import io
import sys
from contextlib import redirect_stderr

from .algebra import filippov_check
from .catalog import LABEL_NAMES, catalog_list, label, make
from .classify import classify, fingerprint
from .errors import FieldNotFinite, FilippovViolation, InvalidParams, NLieError, OutOfCatalog
from .io import emit_algebra, read_algebra
from .iso import IsoSearchBudget, find_isomorphism, random_basis_change
from .scalars import field_from_spec
from .series import center, centralizer, derived_subalgebra, lower_central_series, upper_central_series

__all__ = ["main", "run_command", "build_parser"]


class _Negative(Exception):
    """A well-formed question with a negative answer (exit 1)."""


def _fmt_violation(v) -> str:
    x, y = v
    return f"x=({','.join(map(str, x))}) y=({','.join(map(str, y))})"


def cmd_check(args, out):
    A = read_algebra(args.file, validate=False)
    report = filippov_check(A)
    if report.ok:
        out.append(f"Filippov identity holds (n={A.n}, d={A.d}, field {A.field.spec_string()})")
        return 0
    out.append(f"Filippov identity fails in {len(report.violations)} basis instance(s)")
    for v in report.violations[:10]:
        out.append("  " + _fmt_violation(v))
    if len(report.violations) > 10:
        out.append(f"  ... {len(report.violations) - 10} more")
    raise _Negative("check failed")


def cmd_invariants(args, out):
    A = read_algebra(args.file)
    lcs = lower_central_series(A)
    ucs = upper_central_series(A)
    sq = derived_subalgebra(A)
    out.append(f"n = {A.n}")
    out.append(f"d = {A.d}")
    out.append(f"dim A^2 = {sq.dim}")
    out.append(f"class = {lcs.length if lcs.nilpotent else 'not nilpotent'}")
    out.append(f"dim Z = {center(A).dim}")
    out.append(f"dim centralizer(A^2) = {centralizer(A, sq).dim}")
    out.append("lower central series dims = " + " ".join(map(str, lcs.dims)))
    out.append("upper central series dims = " + " ".join(map(str, ucs.dims)))
    if lcs.nilpotent:
        out.append(f"fingerprint = {fingerprint(A, validate=False)}")
    return 0


def cmd_classify(args, out):
    A = read_algebra(args.file)
    verdict = classify(A, validate=False)
    out.append(str(verdict))
    if not verdict.classified:
        raise _Negative(verdict.outcome)
    return 0


def cmd_iso(args, out):
    A = read_algebra(args.file_a)
    B = read_algebra(args.file_b)
    budget = IsoSearchBudget(max_nodes=args.max_nodes, time_limit=args.time_limit)
    res = find_isomorphism(A, B, budget)
    out.append(str(res))
    if res.found:
        out.append("T =")
        for row in res.matrix.rows:
            out.append("  " + " ".join(A.field.format(x) for x in row))
        return 0
    if res.reason:
        out.append(f"reason: {res.reason}")
    out.append(f"nodes: {res.nodes}")
    raise _Negative(res.outcome)


def cmd_catalog_list(args, out):
    labs = catalog_list(args.n, args.dim, args.cls)
    for lab in labs:
        out.append(str(lab))
    out.append(f"{len(labs)} classes")
    return 0


def cmd_catalog_emit(args, out):
    F = field_from_spec(args.field)
    eps = F.parse(args.eps) if args.eps is not None else None
    lab = label(args.label, args.n, m=args.m, k=args.k, d=args.dim, eps=eps)
    out.append(f"# {lab}")
    out.append(emit_algebra(make(lab, F)).rstrip("\n"))
    return 0


def cmd_scramble(args, out):
    A = read_algebra(args.file)
    B, T = random_basis_change(A, args.seed)
    out.append(f"# scrambled with seed {args.seed}; column j of T is the new e_j in the original basis")
    for row in T.rows:
        out.append("# T: " + " ".join(A.field.format(x) for x in row))
    out.append(emit_algebra(B).rstrip("\n"))
    return 0


def cmd_selftest(args, out):
    from .selftest import run_selftest

    ok = run_selftest(out, seeds=args.seeds)
    if not ok:
        raise _Negative("selftest failed")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nlie", description="Exact computations with nilpotent n-Lie algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", help="verify the Filippov identity")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("invariants", help="print structural invariants")
    s.add_argument("file")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("classify", help="name the isomorphism class")
    s.add_argument("file")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("iso", help="search for an isomorphism over GF(p)")
    s.add_argument("file_a")
    s.add_argument("file_b")
    s.add_argument("--max-nodes", type=int, default=IsoSearchBudget.max_nodes)
    s.add_argument("--time-limit", type=float, default=IsoSearchBudget.time_limit)
    s.set_defaults(func=cmd_iso)

    cat = sub.add_parser("catalog", help="list or emit catalog algebras")
    csub = cat.add_subparsers(dest="catalog_command", required=True)
    s = csub.add_parser("list")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--class", dest="cls", type=int, default=None)
    s.set_defaults(func=cmd_catalog_list)
    s = csub.add_parser("emit")
    s.add_argument("label", choices=LABEL_NAMES)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--eps")
    s.add_argument("--dim", type=int)
    s.add_argument("--field", default="rational")
    s.set_defaults(func=cmd_catalog_emit)

    s = sub.add_parser("scramble", help="apply a reproducible random change of basis")
    s.add_argument("file")
    s.add_argument("--seed", type=int, required=True)
    s.set_defaults(func=cmd_scramble)

    s = sub.add_parser("selftest", help="run the built-in property checks")
    s.add_argument("--seeds", type=int, default=10)
    s.set_defaults(func=cmd_selftest)
    return p


def run_command(argv) -> tuple[int, str, str]:
    """Run one command; returns (exit code, stdout text, stderr text).

    Output is buffered so a failing command never leaves a partial report.
    """
    err = io.StringIO()
    parser = build_parser()
    try:
        with redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0), "", err.getvalue()
    out: list[str] = []
    try:
        code = args.func(args, out)
    except _Negative as e:
        out.append(f"status: negative ({e})")
        return 1, "\n".join(out) + "\n", ""
    except FilippovViolation as e:
        lines = [f"status: invalid algebra: {e}"]
        return 1, "", "\n".join(lines) + "\n"
    except OutOfCatalog as e:
        return 1, "", f"status: out of catalog: {e}\n"
    except (InvalidParams, FieldNotFinite) as e:
        return 2, "", f"status: usage error: {e}\n"
    except NLieError as e:
        return 2, "", f"status: input error: {type(e).__name__}: {e}\n"
    except OSError as e:
        return 2, "", f"status: cannot read input: {e}\n"
    if args.func in (cmd_catalog_emit, cmd_scramble):
        out.append("# status: ok")
    else:
        out.append("status: ok")
    return code, "\n".join(out) + "\n", ""


def main(argv=None) -> int:
    code, text, err = run_command(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(text)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
