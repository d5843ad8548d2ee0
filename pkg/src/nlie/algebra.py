"""Finite-dimensional n-Lie (Filippov) algebras given by structure constants.

Basis indices in bracket keys are 1-based, matching the e_1, ..., e_d notation
of the classification tables; coordinate vectors are 0-based tuples.
"""
from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from math import lcm

import numpy as np

from .errors import (
    ArityMismatch,
    DimensionMismatch,
    DuplicateKey,
    FieldMismatch,
    FilippovViolation,
    IndexOutOfRange,
    NotAnIdeal,
    ReductionError,
    RepeatedIndex,
    AmbientMismatch,
)
from .linalg import Matrix, Subspace, complement_basis, unit_vector
from .scalars import FieldSpec, GF

__all__ = [
    "NLieAlgebra",
    "FilippovReport",
    "new_algebra",
    "abelian",
    "bracket_eval",
    "filippov_check",
    "change_basis",
    "is_ideal",
    "quotient",
    "direct_sum",
    "reduce_mod_p",
    "perm_sign",
]

# int64 is used for GF(p) kernels below this bound; larger p falls back to Python ints
_INT64_P = 1 << 24
# scaled rational tables with entries below this bound are held as int64
_SMALL_Q = 1 << 20


def perm_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (0 if an entry repeats)."""
    s = list(seq)
    if len(set(s)) != len(s):
        return 0
    sign = 1
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            if s[i] > s[j]:
                sign = -sign
    return sign


def _det_int(m: list[list[int]]) -> int:
    """Fraction-free (Bareiss) determinant of an integer matrix."""
    k = len(m)
    sign, prev = 1, 1
    for c in range(k - 1):
        if not m[c][c]:
            piv = next((r for r in range(c + 1, k) if m[r][c]), None)
            if piv is None:
                return 0
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        for r in range(c + 1, k):
            m[r] = [(m[r][j] * m[c][c] - m[r][c] * m[c][j]) // prev for j in range(k)]
        prev = m[c][c]
    return sign * m[k - 1][k - 1] if k else 1


def _det(field: FieldSpec, rows: list[list]) -> object:
    """Determinant by Gaussian elimination over ``field``."""
    if field.p is None and all(type(x) is int or x.denominator == 1 for r in rows for x in r):
        return Fraction(_det_int([[int(x) for x in r] for r in rows]))
    m = [list(r) for r in rows]
    k = len(m)
    det = field.one
    for c in range(k):
        piv = next((r for r in range(c, k) if m[r][c]), None)
        if piv is None:
            return field.zero
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = field.neg(det)
        pv = m[c][c]
        det = field.mul(det, pv)
        inv = field.inv(pv)
        for r in range(c + 1, k):
            f = m[r][c]
            if f:
                f = field.mul(f, inv)
                m[r] = [field.sub(a, field.mul(f, b)) for a, b in zip(m[r], m[c])]
    return det


@dataclass(frozen=True, eq=False)
class NLieAlgebra:
    """An n-ary alternating bracket on F^d.

    ``table`` maps strictly increasing 1-based index tuples to nonzero
    coefficient vectors; absent tuples bracket to zero.
    """

    n: int
    d: int
    field: FieldSpec
    table: Mapping

    def __eq__(self, other):
        if not isinstance(other, NLieAlgebra):
            return NotImplemented
        return (self.n, self.d, self.field, dict(self.table)) == (
            other.n,
            other.d,
            other.field,
            dict(other.table),
        )

    def __hash__(self):
        return hash((self.n, self.d, self.field, tuple(sorted(self.table.items()))))

    def __repr__(self):
        return f"NLieAlgebra(n={self.n}, d={self.d}, field={self.field}, {len(self.table)} brackets)"

    def basis_vector(self, i: int) -> tuple:
        """e_i for 1-based ``i``."""
        return unit_vector(self.field, self.d, i - 1)

    def bracket(self, *vectors) -> tuple:
        return bracket_eval(self, *vectors)

    def is_abelian(self) -> bool:
        return not self.table

    def brackets(self):
        """Iterate ``(key, {target: coeff})`` with 1-based targets, in key order."""
        for key in sorted(self.table):
            vec = self.table[key]
            yield key, {j + 1: c for j, c in enumerate(vec) if c}

    # -- numeric kernels (0-based) -------------------------------------------

    @cached_property
    def _keys(self) -> list[tuple[int, ...]]:
        return list(combinations(range(self.d), self.n))

    @cached_property
    def _key_index(self) -> dict:
        return {k: i for i, k in enumerate(self._keys)}

    @cached_property
    def _dtype(self):
        p = self.field.p
        return np.int64 if p is not None and p < _INT64_P else object

    @cached_property
    def _tab(self) -> np.ndarray:
        """(K, d) array of coefficient vectors over all sorted keys.

        Over Q the constants are scaled by the lcm of their denominators;
        kernels built on this array are only used for scale-invariant
        questions (spans, kernels, vanishing).
        """
        K = len(self._keys)
        tab = np.zeros((K, self.d), dtype=self._dtype)
        if self.field.p is None:
            den = 1
            for vec in self.table.values():
                for c in vec:
                    den = lcm(den, Fraction(c).denominator)
            for key, vec in self.table.items():
                row = self._key_index[tuple(i - 1 for i in key)]
                tab[row] = [int(c * den) for c in vec]
            if not tab.size or np.max(np.abs(tab)) < _SMALL_Q:
                # quadratic expressions in these stay far below 2**63
                tab = tab.astype(np.int64)
        else:
            for key, vec in self.table.items():
                tab[self._key_index[tuple(i - 1 for i in key)]] = vec
        return tab

    @cached_property
    def _sub_keys(self) -> list[tuple[int, ...]]:
        """Sorted (n-1)-subsets of the 0-based basis."""
        return list(combinations(range(self.d), self.n - 1))

    @cached_property
    def _ad(self) -> np.ndarray:
        """(Y, d, d): ``_ad[y] @ x = [x, e_y]`` up to the Q scale factor."""
        Y, d = len(self._sub_keys), self.d
        ad = np.zeros((Y, d, d), dtype=self._tab.dtype)
        if not self.table:
            return ad
        tab = self._tab
        for yi, y in enumerate(self._sub_keys):
            ys = set(y)
            for i in range(d):
                if i in ys:
                    continue
                key = tuple(sorted((i,) + y))
                pos = key.index(i)
                row = tab[self._key_index[key]]
                ad[yi, :, i] = row if pos % 2 == 0 else -row
        if self.field.p is not None:
            ad %= self.field.p
        return ad

    def _mod(self, arr: np.ndarray) -> np.ndarray:
        return arr % self.field.p if self.field.p is not None else arr

    def _to_field(self, arr) -> list[tuple]:
        """Convert rows of a numeric array back to canonical field values."""
        F = self.field
        if F.p is None:
            return [tuple(Fraction(x) for x in row) for row in arr.tolist()]
        return [tuple(int(x) % F.p for x in row) for row in arr.tolist()]

    def _as_numeric(self, vectors) -> np.ndarray:
        """Stack field vectors as an (r, d) array, clearing denominators row-wise over Q."""
        if self.field.p is not None:
            return np.array([list(v) for v in vectors], dtype=self._dtype).reshape(-1, self.d)
        rows = []
        for v in vectors:
            den = lcm(1, *(Fraction(x).denominator for x in v))
            rows.append([int(Fraction(x) * den) for x in v])
        return np.array(rows, dtype=object).reshape(-1, self.d)

    def _ad_images(self, vectors) -> list[tuple]:
        """All ``[v, e_J]`` for v in ``vectors``, up to nonzero scalars per vector."""
        if not vectors or not self.table:
            return []
        V = self._as_numeric(vectors)  # (r, d)
        out = np.einsum("yki,ri->ryk", self._ad, V).reshape(-1, self.d)
        out = self._mod(out)
        out = out[np.any(out != 0, axis=1)]
        if out.dtype != object:
            out = np.unique(out, axis=0)
        return self._to_field(out)


def _coerce_vector(field: FieldSpec, d: int, vec) -> tuple:
    if isinstance(vec, Mapping):
        out = [field.zero] * d
        for j, c in vec.items():
            if not 1 <= j <= d:
                raise IndexOutOfRange(f"target index {j} outside 1..{d}")
            out[j - 1] = field.add(out[j - 1], field(c))
        return tuple(out)
    if len(vec) != d:
        raise DimensionMismatch(f"coefficient vector of length {len(vec)}, expected {d}")
    return tuple(field(c) for c in vec)


def new_algebra(n: int, d: int, field: FieldSpec, entries=(), *, validate: bool = False) -> NLieAlgebra:
    """Build an algebra from ``(index_tuple, coefficients)`` pairs.

    Index tuples are 1-based and may come in any order; they are sorted and
    the permutation sign is applied to the coefficients.  ``coefficients`` is
    either a length-d sequence or a ``{target_index: coeff}`` mapping.
    """
    if n < 2:
        raise ArityMismatch(f"arity must be at least 2, got {n}")
    if d < 0:
        raise DimensionMismatch(f"negative dimension {d}")
    if isinstance(entries, Mapping):
        entries = entries.items()
    table = {}
    for idx, vec in entries:
        idx = tuple(idx)
        if len(idx) != n:
            raise ArityMismatch(f"bracket {idx} has {len(idx)} arguments, arity is {n}")
        for i in idx:
            if not 1 <= i <= d:
                raise IndexOutOfRange(f"index {i} in {idx} outside 1..{d}")
        if len(set(idx)) != n:
            raise RepeatedIndex(f"repeated index in {idx}")
        key = tuple(sorted(idx))
        if key in table:
            raise DuplicateKey(f"bracket {key} given twice")
        v = _coerce_vector(field, d, vec)
        if perm_sign(idx) < 0:
            v = tuple(field.neg(c) for c in v)
        table[key] = v
    table = {k: v for k, v in sorted(table.items()) if any(v)}
    alg = NLieAlgebra(n, d, field, table)
    if validate:
        report = filippov_check(alg)
        if not report.ok:
            raise FilippovViolation(report.violations)
    return alg


def abelian(n: int, d: int, field: FieldSpec) -> NLieAlgebra:
    """F(d): all brackets vanish."""
    return new_algebra(n, d, field)


def bracket_eval(A: NLieAlgebra, *args) -> tuple:
    """Evaluate the bracket on ``n`` coordinate vectors by full multilinear expansion."""
    if len(args) != A.n:
        raise ArityMismatch(f"{len(args)} arguments for an arity-{A.n} bracket")
    F = A.field
    vecs = [tuple(F(x) for x in v) for v in args]
    for v in vecs:
        if len(v) != A.d:
            raise DimensionMismatch(f"vector of length {len(v)}, algebra has dimension {A.d}")
    out = [F.zero] * A.d
    for key, coeffs in A.table.items():
        cols = [i - 1 for i in key]
        det = _det(F, [[v[c] for c in cols] for v in vecs])
        if det:
            out = [F.add(o, F.mul(det, c)) for o, c in zip(out, coeffs)]
    return tuple(out)


@dataclass(frozen=True)
class FilippovReport:
    """Outcome of :func:`filippov_check`; ``violations`` holds (x, y) 1-based tuples."""

    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


@lru_cache(maxsize=64)
def _slot_tables(n: int, d: int) -> tuple[np.ndarray, np.ndarray]:
    """For slot s, key x and basis index j: row index and sign of the sorted key of x with x_s := j."""
    keys = list(combinations(range(d), n))
    kidx = {k: i for i, k in enumerate(keys)}
    idx = np.zeros((n, len(keys), d), dtype=np.intp)
    sign = np.zeros((n, len(keys), d), dtype=np.int64)
    for s in range(n):
        for xi, x in enumerate(keys):
            for j in range(d):
                t = x[:s] + (j,) + x[s + 1 :]
                sg = perm_sign(t)
                if sg:
                    idx[s, xi, j] = kidx[tuple(sorted(t))]
                    sign[s, xi, j] = sg
    return idx, sign


def filippov_check(A: NLieAlgebra) -> FilippovReport:
    """Check [[x_1..x_n], y] = sum_i [x_1, .., [x_i, y], .., x_n] on basis tuples.

    ``x`` ranges over increasing n-tuples and ``y`` over increasing
    (n-1)-tuples; by multilinearity these instances suffice.
    """
    if not A.table:
        return FilippovReport(())
    keys = np.array(A._keys, dtype=np.intp)  # (K, n)
    tab, ad = A._tab, A._ad  # (K, d), (Y, d, d)
    K, d, n = len(keys), A.d, A.n
    # Over Q both sides are quadratic in the scaled constants, so vanishing is preserved.
    lhs = np.einsum("ykm,xm->yxk", ad, tab)
    rhs = np.zeros_like(lhs)
    slot_idx, slot_sign = _slot_tables(n, d)
    for s in range(n):
        # slot[x, j, :] = [e_x1, .., e_j (slot s), .., e_xn]
        slot = tab[slot_idx[s]] * slot_sign[s][:, :, None].astype(tab.dtype)
        coef = ad[:, :, keys[:, s]]  # (Y, d_j, K): ad[y][j, x_s] = coefficient of e_j in [e_{x_s}, e_y]
        rhs = rhs + np.einsum("yjx,xjk->yxk", coef, slot)
    res = A._mod(lhs - rhs)
    bad = np.argwhere(np.any(res != 0, axis=2))
    viol = tuple(
        (tuple(i + 1 for i in A._keys[xi]), tuple(i + 1 for i in A._sub_keys[yi]))
        for yi, xi in sorted(((int(a), int(b)) for a, b in bad), key=lambda t: (t[1], t[0]))
    )
    return FilippovReport(viol)


def change_basis(A: NLieAlgebra, T: Matrix) -> NLieAlgebra:
    """The algebra with bracket ``T^-1 [T x_1, .., T x_n]`` (isomorphic to ``A`` via T)."""
    if T.field != A.field:
        raise FieldMismatch(f"{T.field} matrix for an algebra over {A.field}")
    if T.shape != (A.d, A.d):
        raise DimensionMismatch(f"{T.shape} matrix for dimension {A.d}")
    F = A.field
    Tinv = T.inverse()
    images = [(tuple(i - 1 for i in key), Tinv.apply(vec)) for key, vec in A.table.items()]
    rows = T.rows
    table = {}
    for K in combinations(range(A.d), A.n):
        acc = [F.zero] * A.d
        hit = False
        for L, w in images:
            det = _det(F, [[rows[l][k] for k in K] for l in L])
            if det:
                hit = True
                acc = [F.add(a, F.mul(det, b)) for a, b in zip(acc, w)]
        if hit and any(acc):
            table[tuple(k + 1 for k in K)] = tuple(acc)
    return NLieAlgebra(A.n, A.d, F, table)


def is_ideal(A: NLieAlgebra, I: Subspace) -> bool:
    """True iff [I, A, .., A] is contained in I."""
    if I.ambient_dim != A.d or I.field != A.field:
        raise AmbientMismatch(f"subspace of F^{I.ambient_dim} for an algebra of dimension {A.d}")
    return all(I.contains(w) for w in A._ad_images(list(I.basis)))


def quotient(A: NLieAlgebra, I: Subspace) -> tuple[NLieAlgebra, Matrix]:
    """Quotient by an ideal on the standard complement of its RREF pivots.

    Returns the quotient algebra and the projection matrix (d - dim I) x d.
    """
    if not is_ideal(A, I):
        raise NotAnIdeal("subspace is not an ideal")
    F = A.field
    comp = [j for j in range(A.d) if j not in set(I.pivots)]
    dq = len(comp)
    table = {}
    for K in combinations(range(dq), A.n):
        key = tuple(comp[k] + 1 for k in K)
        vec = A.table.get(key)
        if vec is None:
            continue
        r = I.reduce(vec)
        img = tuple(r[j] for j in comp)
        if any(img):
            table[tuple(k + 1 for k in K)] = img
    proj_cols = []
    for j in range(A.d):
        r = I.reduce(unit_vector(F, A.d, j))
        proj_cols.append(tuple(r[c] for c in comp))
    P = Matrix.from_columns(F, proj_cols, dq) if A.d else Matrix(F, (), 0)
    return NLieAlgebra(A.n, dq, F, table), P


def direct_sum(A: NLieAlgebra, B: NLieAlgebra) -> NLieAlgebra:
    """A ⊕ B with B's basis placed after A's; mixed brackets vanish."""
    if A.n != B.n:
        raise ArityMismatch(f"arity {A.n} vs {B.n}")
    if A.field != B.field:
        raise FieldMismatch(f"{A.field} vs {B.field}")
    F = A.field
    d = A.d + B.d
    za, zb = (F.zero,) * B.d, (F.zero,) * A.d
    table = {k: v + za for k, v in A.table.items()}
    for k, v in B.table.items():
        table[tuple(i + A.d for i in k)] = zb + v
    return NLieAlgebra(A.n, d, F, dict(sorted(table.items())))


def reduce_mod_p(A: NLieAlgebra, p: int) -> NLieAlgebra:
    """Reduce a rational algebra modulo ``p`` (denominators must be prime to p)."""
    if A.field.p is not None:
        if A.field.p == p:
            return A
        raise FieldMismatch(f"cannot reduce an algebra over {A.field} modulo {p}")
    F = GF(p)
    table = {}
    for key, vec in A.table.items():
        out = []
        for c in vec:
            c = Fraction(c)
            if c.denominator % p == 0:
                raise ReductionError(f"coefficient {c} in bracket {key} has a denominator divisible by {p}")
            out.append(F(c))
        if any(out):
            table[key] = tuple(out)
    return NLieAlgebra(A.n, A.d, F, table)
