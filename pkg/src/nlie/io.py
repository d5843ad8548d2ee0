"""Line-oriented text format for algebra tables (version 1).

::

    nlie v1
    arity 3
    dim 4
    field rational
    bracket 1 2 3 -> 4:1

``#`` starts a comment.  Coefficients are integers or ``a/b``; over GF(p)
they are reduced mod p.  Omitted tuples are zero.
"""
from __future__ import annotations

import re

from .algebra import NLieAlgebra, filippov_check, new_algebra
from .errors import DuplicateKey, FilippovViolation, NLieError, ParseError
from .scalars import field_from_spec

__all__ = ["parse_algebra", "emit_algebra", "read_algebra", "write_algebra"]

_HEADER = ("nlie", "arity", "dim", "field")
_TERM = re.compile(r"(\d+):(\S+)")


def _attach_line(err: NLieError, lineno: int) -> NLieError:
    if getattr(err, "line", None) is None:
        err.line = lineno
        err.args = (f"line {lineno}: {err}",) + err.args[1:]
    return err


def _int(tok: str, what: str, lineno: int) -> int:
    if not re.fullmatch(r"\d+", tok):
        raise ParseError(f"{what} must be a non-negative integer, got {tok!r}", lineno)
    return int(tok)


def parse_algebra(text: str, *, validate: bool = True) -> NLieAlgebra:
    """Parse an algebra file; with ``validate`` the Filippov identity is checked."""
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((lineno, body.split()))
    last = lines[-1][0] if lines else 1
    header = {}
    for want, (lineno, toks) in zip(_HEADER, lines[:4]):
        if toks[0] != want or len(toks) < 2:
            raise ParseError(f"expected '{want} ...' header line", lineno)
        header[want] = (lineno, toks[1:])
    if len(header) < 4:
        raise ParseError("incomplete header: need nlie/arity/dim/field lines", last)
    lineno, toks = header["nlie"]
    if toks != ["v1"]:
        raise ParseError(f"unsupported format version {' '.join(toks)!r}", lineno)
    lineno, toks = header["arity"]
    n = _int(toks[0], "arity", lineno)
    lineno, toks = header["dim"]
    d = _int(toks[0], "dim", lineno)
    lineno, toks = header["field"]
    try:
        F = field_from_spec(" ".join(toks))
    except NLieError as e:
        raise _attach_line(e, lineno)
    if n < 2:
        raise ParseError(f"arity must be at least 2, got {n}", header["arity"][0])

    entries = []
    seen = {}
    for lineno, toks in lines[4:]:
        if toks[0] != "bracket":
            raise ParseError(f"unexpected keyword {toks[0]!r}", lineno)
        if "->" not in toks:
            raise ParseError("bracket line needs '->'", lineno)
        arrow = toks.index("->")
        idx = tuple(_int(t, "basis index", lineno) for t in toks[1:arrow])
        coeffs = {}
        for term in toks[arrow + 1:]:
            m = _TERM.fullmatch(term)
            if not m:
                raise ParseError(f"malformed term {term!r}, expected j:c", lineno)
            j = int(m.group(1))
            try:
                c = F.parse(m.group(2))
            except NLieError as e:
                raise _attach_line(e, lineno)
            coeffs[j] = F.add(coeffs.get(j, F.zero), c)
        try:
            new_algebra(n, d, F, [(idx, coeffs)])
        except NLieError as e:
            raise _attach_line(e, lineno)
        key = tuple(sorted(idx))
        if key in seen:
            raise _attach_line(DuplicateKey(f"bracket {key} already given on line {seen[key]}"), lineno)
        seen[key] = lineno
        entries.append((idx, coeffs))
    A = new_algebra(n, d, F, entries)
    if validate:
        report = filippov_check(A)
        if not report.ok:
            raise FilippovViolation(report.violations)
    return A


def emit_algebra(A: NLieAlgebra) -> str:
    F = A.field
    out = ["nlie v1", f"arity {A.n}", f"dim {A.d}", f"field {F.spec_string()}"]
    for key, vec in A.table.items():
        terms = " ".join(f"{j}:{F.format(c)}" for j, c in enumerate(vec, start=1) if c)
        out.append(f"bracket {' '.join(map(str, key))} -> {terms}")
    return "\n".join(out) + "\n"


def read_algebra(path, *, validate: bool = True) -> NLieAlgebra:
    with open(path, encoding="utf-8") as fh:
        return parse_algebra(fh.read(), validate=validate)


def write_algebra(A: NLieAlgebra, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(emit_algebra(A))
