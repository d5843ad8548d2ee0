"""Exact linear algebra over a :class:`FieldSpec`.

Vectors are tuples of canonical field values.  Subspaces are always held in
reduced row echelon form so that equality of subspaces is equality of bases.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import AmbientMismatch, DimensionMismatch, SingularMatrix
from .scalars import FieldSpec

__all__ = [
    "Matrix",
    "Subspace",
    "rref",
    "kernel",
    "subspace_sum",
    "subspace_intersect",
    "complement_basis",
    "unit_vector",
]


def unit_vector(field: FieldSpec, d: int, j: int) -> tuple:
    """Standard basis vector with a one at 0-based position ``j``."""
    v = [field.zero] * d
    v[j] = field.one
    return tuple(v)


def _rref_rows(field: FieldSpec, rows: Iterable[Sequence], ncols: int):
    """Row-reduce ``rows`` and return ``(nonzero_rows, pivots)``.

    Rows are consumed one at a time and reduced against the basis built so
    far, so long redundant inputs stay cheap once full rank is reached.
    """
    p = field.p
    if p is None:
        return _rref_rows_rational(rows, ncols)
    basis: list[list] = []
    pivots: list[int] = []
    for row in rows:
        if len(basis) == ncols:
            break
        r = list(row)
        for b, c in zip(basis, pivots):
            f = r[c]
            if f:
                if p is None:
                    for j in range(c, ncols):
                        if b[j]:
                            r[j] -= f * b[j]
                else:
                    for j in range(c, ncols):
                        if b[j]:
                            r[j] = (r[j] - f * b[j]) % p
        lead = next((j for j in range(ncols) if r[j]), None)
        if lead is None:
            continue
        inv = field.inv(r[lead])
        if p is None:
            r = [x * inv for x in r]
        else:
            r = [x * inv % p for x in r]
        # eliminate the new pivot column from earlier rows
        for b in basis:
            f = b[lead]
            if f:
                if p is None:
                    for j in range(lead, ncols):
                        if r[j]:
                            b[j] -= f * r[j]
                else:
                    for j in range(lead, ncols):
                        if r[j]:
                            b[j] = (b[j] - f * r[j]) % p
        # keep pivots increasing
        pos = 0
        while pos < len(pivots) and pivots[pos] < lead:
            pos += 1
        basis.insert(pos, r)
        pivots.insert(pos, lead)
    return [tuple(b) for b in basis], tuple(pivots)


def _primitive(r: list[int]) -> list[int]:
    g = 0
    for x in r:
        if x:
            g = gcd(g, x)
            if g == 1:
                return r
    return [x // g for x in r] if g > 1 else r


def _rref_rows_rational(rows: Iterable[Sequence], ncols: int):
    """Rational RREF computed on primitive integer rows, normalized at the end."""
    basis: list[list[int]] = []
    pivots: list[int] = []
    for row in rows:
        if len(basis) == ncols:
            break
        row = [x if isinstance(x, (int, Fraction)) else Fraction(x) for x in row]
        den = lcm(1, *(x.denominator for x in row if type(x) is not int))
        r = [x * den if type(x) is int else x.numerator * (den // x.denominator) for x in row]
        for b, c in zip(basis, pivots):
            f = r[c]
            if f:
                bc = b[c]
                r = [x * bc - f * y for x, y in zip(r, b)]
        lead = next((j for j in range(ncols) if r[j]), None)
        if lead is None:
            continue
        r = _primitive(r)
        for i, b in enumerate(basis):
            f = b[lead]
            if f:
                rl = r[lead]
                basis[i] = _primitive([x * rl - f * y for x, y in zip(b, r)])
        pos = 0
        while pos < len(pivots) and pivots[pos] < lead:
            pos += 1
        basis.insert(pos, r)
        pivots.insert(pos, lead)
    out = []
    for b, c in zip(basis, pivots):
        lead = b[c]
        out.append(tuple(Fraction(x, lead) for x in b))
    return out, tuple(pivots)


@dataclass(frozen=True)
class Matrix:
    field: FieldSpec
    rows: tuple
    ncols: int

    @classmethod
    def from_rows(cls, field: FieldSpec, rows, ncols: int | None = None) -> "Matrix":
        rows = tuple(tuple(field(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise DimensionMismatch("cannot infer the column count of an empty matrix")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(field, rows, ncols)

    @classmethod
    def from_columns(cls, field: FieldSpec, cols, nrows: int) -> "Matrix":
        cols = [tuple(c) for c in cols]
        return cls.from_rows(field, list(zip(*cols)) if cols else [()] * nrows, len(cols))

    @classmethod
    def identity(cls, field: FieldSpec, d: int) -> "Matrix":
        return cls(field, tuple(unit_vector(field, d, i) for i in range(d)), d)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, tuple(zip(*self.rows)) if self.rows else (), self.nrows)

    def apply(self, v: Sequence) -> tuple:
        """Matrix-vector product ``M v``."""
        if len(v) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.shape} matrix")
        F = self.field
        out = []
        for r in self.rows:
            s = F.zero
            for a, b in zip(r, v):
                if a and b:
                    s = s + a * b
            out.append(F(s) if F.p is not None else s)
        return tuple(out)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field:
            from .errors import FieldMismatch

            raise FieldMismatch(f"{self.field} vs {other.field}")
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        cols = [other.column(j) for j in range(other.ncols)]
        return Matrix.from_columns(self.field, [self.apply(c) for c in cols], self.nrows)

    def rank(self) -> int:
        return len(_rref_rows(self.field, self.rows, self.ncols)[0])

    def inverse(self) -> "Matrix":
        d = self.nrows
        if d != self.ncols:
            raise SingularMatrix(f"non-square {self.shape} matrix")
        F = self.field
        aug = [r + unit_vector(F, d, i) for i, r in enumerate(self.rows)]
        red, piv = _rref_rows(F, aug, 2 * d)
        if len(red) < d or piv[d - 1] != d - 1:
            raise SingularMatrix("matrix is not invertible")
        return Matrix(F, tuple(r[d:] for r in red), d)

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def __str__(self):
        f = self.field.format
        return "\n".join(" ".join(f(x) for x in r) for r in self.rows)


def rref(m: Matrix) -> tuple[Matrix, int, tuple[int, ...]]:
    """Reduced row echelon form of ``m`` (same shape, zero rows last)."""
    red, piv = _rref_rows(m.field, m.rows, m.ncols)
    zero = tuple([m.field.zero] * m.ncols)
    rows = tuple(red) + (zero,) * (m.nrows - len(red))
    return Matrix(m.field, rows, m.ncols), len(red), piv


@dataclass(frozen=True)
class Subspace:
    field: FieldSpec
    ambient_dim: int
    basis: tuple  # RREF rows, no zero rows
    pivots: tuple

    @classmethod
    def span(cls, field: FieldSpec, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        vecs = []
        for v in vectors:
            if len(v) != ambient_dim:
                raise AmbientMismatch(f"vector of length {len(v)} in F^{ambient_dim}")
            vecs.append(v)
        red, piv = _rref_rows(field, vecs, ambient_dim)
        return cls(field, ambient_dim, tuple(red), piv)

    @classmethod
    def zero(cls, field: FieldSpec, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, (), ())

    @classmethod
    def full(cls, field: FieldSpec, ambient_dim: int) -> "Subspace":
        return cls(
            field,
            ambient_dim,
            tuple(unit_vector(field, ambient_dim, i) for i in range(ambient_dim)),
            tuple(range(ambient_dim)),
        )

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return self.dim

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim or self.field != other.field:
            raise AmbientMismatch(
                f"F^{self.ambient_dim} over {self.field} vs F^{other.ambient_dim} over {other.field}"
            )

    def reduce(self, v: Sequence) -> tuple:
        """Remainder of ``v`` after eliminating the pivot columns."""
        p = self.field.p
        r = list(v)
        for b, c in zip(self.basis, self.pivots):
            f = r[c]
            if f:
                if p is None:
                    r = [x - f * y if y else x for x, y in zip(r, b)]
                else:
                    r = [(x - f * y) % p if y else x for x, y in zip(r, b)]
        return tuple(r)

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise AmbientMismatch(f"vector of length {len(v)} in F^{self.ambient_dim}")
        return not any(self.reduce(v))

    def __contains__(self, v):
        return self.contains(v)

    def coordinates(self, v: Sequence) -> tuple:
        """Coefficients of ``v`` in the RREF basis (``v`` must lie in the subspace)."""
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return tuple(v[c] for c in self.pivots)

    def issubspace(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(b) for b in self.basis)

    def __le__(self, other):
        return self.issubspace(other)

    def __add__(self, other):
        return subspace_sum(self, other)

    def __and__(self, other):
        return subspace_intersect(self, other)

    def as_matrix(self) -> Matrix:
        return Matrix(self.field, self.basis, self.ambient_dim)

    def __str__(self):
        f = self.field.format
        vecs = ", ".join("(" + ",".join(f(x) for x in b) + ")" for b in self.basis)
        return f"span{{{vecs}}}"


def kernel(m: Matrix) -> Subspace:
    """Null space ``{x : m x = 0}`` with the standard free-variable basis."""
    F = m.field
    red, piv = _rref_rows(F, m.rows, m.ncols)
    pivset = set(piv)
    vecs = []
    for free in range(m.ncols):
        if free in pivset:
            continue
        v = [F.zero] * m.ncols
        v[free] = F.one
        for r, c in zip(red, piv):
            if r[free]:
                v[c] = F.neg(r[free])
        vecs.append(v)
    return Subspace.span(F, m.ncols, vecs)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    a._check(b)
    return Subspace.span(a.field, a.ambient_dim, a.basis + b.basis)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """Zassenhaus: reduce ``[[a|a],[b|0]]``; rows with empty left half span a∩b."""
    a._check(b)
    F, d = a.field, a.ambient_dim
    zero = (F.zero,) * d
    rows = [r + r for r in a.basis] + [r + zero for r in b.basis]
    red, piv = _rref_rows(F, rows, 2 * d)
    return Subspace.span(F, d, [r[d:] for r, c in zip(red, piv) if c >= d])


def complement_basis(s: Subspace) -> list[tuple]:
    """Standard basis vectors at the non-pivot columns of ``s``."""
    piv = set(s.pivots)
    return [unit_vector(s.field, s.ambient_dim, j) for j in range(s.ambient_dim) if j not in piv]
