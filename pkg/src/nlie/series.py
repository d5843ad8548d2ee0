"""Derived subalgebra, central series, centre and centralizers."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .algebra import NLieAlgebra, quotient
from .errors import AmbientMismatch, NotNilpotent
from .linalg import Subspace

__all__ = [
    "SeriesReport",
    "derived_subalgebra",
    "lower_central_series",
    "upper_central_series",
    "center",
    "centralizer",
    "nilpotency_class",
    "is_nilpotent",
]


@dataclass(frozen=True)
class SeriesReport:
    """Terms of a central series.

    For the lower series ``length`` is the nilpotency class (None when the
    series stalls at a nonzero term); for the upper series it is the index at
    which the full space is reached (None if it never is).
    """

    kind: str  # "LowerCentral" | "UpperCentral"
    terms: tuple
    length: int | None

    @property
    def nilpotent(self) -> bool:
        return self.length is not None

    @property
    def dims(self) -> list[int]:
        return [t.dim for t in self.terms]


def derived_subalgebra(A: NLieAlgebra) -> Subspace:
    """A^2, spanned by the table's coefficient vectors."""
    return Subspace.span(A.field, A.d, A.table.values())


def _bracket_with_all(A: NLieAlgebra, S: Subspace) -> Subspace:
    """[S, A, .., A]."""
    return Subspace.span(A.field, A.d, A._ad_images(list(S.basis)))


def lower_central_series(A: NLieAlgebra) -> SeriesReport:
    """A^1 = A, A^{i+1} = [A^i, A, .., A], iterated until it stabilizes."""
    terms = [Subspace.full(A.field, A.d)]
    nxt = derived_subalgebra(A)
    while nxt != terms[-1]:
        terms.append(nxt)
        if nxt.dim == 0:
            break
        nxt = _bracket_with_all(A, nxt)
    if terms[-1].dim == 0:
        # class c has A^{c+1} = 0; the zero algebra gets class 0
        length = len(terms) - 1 if A.d else 0
    else:
        length = None
    return SeriesReport("LowerCentral", tuple(terms), length)


def nilpotency_class(A: NLieAlgebra) -> int:
    rep = lower_central_series(A)
    if rep.length is None:
        raise NotNilpotent(f"lower central series stabilizes in dimension {rep.terms[-1].dim}")
    return rep.length


def is_nilpotent(A: NLieAlgebra) -> bool:
    return lower_central_series(A).nilpotent


def _kernel_of_rows(A: NLieAlgebra, rows) -> Subspace:
    """{x : r . x = 0 for every row r}, rows given as a numeric array."""
    from .linalg import Matrix, kernel

    rows = A._mod(rows)
    rows = rows[np.any(rows != 0, axis=1)]
    if rows.dtype != object and len(rows):
        rows = np.unique(rows, axis=0)
    if not len(rows):
        return Subspace.full(A.field, A.d)
    return kernel(Matrix(A.field, tuple(A._to_field(rows)), A.d))


def center(A: NLieAlgebra) -> Subspace:
    """Z(A): common kernel of x -> [x, e_J] over all (n-1)-subsets J."""
    if not A.table:
        return Subspace.full(A.field, A.d)
    return _kernel_of_rows(A, A._ad.reshape(-1, A.d))


def centralizer(A: NLieAlgebra, S: Subspace) -> Subspace:
    """{x : [x, s, a_3, .., a_n] = 0 for all s in S and a_i in A}."""
    if S.ambient_dim != A.d or S.field != A.field:
        raise AmbientMismatch(f"subspace of F^{S.ambient_dim} for an algebra of dimension {A.d}")
    if not A.table or S.dim == 0:
        return Subspace.full(A.field, A.d)
    n, d = A.n, A.d
    Svec = A._as_numeric(S.basis)  # (s, d)
    sub_index = {y: i for i, y in enumerate(A._sub_keys)}
    blocks = []
    for J in combinations(range(d), n - 2):
        Js = set(J)
        # M[j] = matrix of x -> [x, e_j, e_J]
        idx, signs = [], []
        for j in range(d):
            if j in Js:
                continue
            y = tuple(sorted(J + (j,)))
            idx.append(sub_index[y])
            # [x, e_j, e_J] = sign * [x, e_y] after sorting (j, J) into y
            signs.append(1 if y.index(j) % 2 == 0 else -1)
        if not idx:
            continue
        mats = A._ad[idx] * np.array(signs, dtype=A._ad.dtype)[:, None, None]  # (m, d, d)
        coeff = Svec[:, [j for j in range(d) if j not in Js]]  # (s, m)
        blocks.append(np.einsum("sm,mki->ski", coeff, mats).reshape(-1, d))
    return _kernel_of_rows(A, np.concatenate(blocks, axis=0))


def upper_central_series(A: NLieAlgebra) -> SeriesReport:
    """Z_0 = 0, Z_i = preimage of Z(A / Z_{i-1}), until it stabilizes."""
    F = A.field
    terms = [Subspace.zero(F, A.d)]
    while True:
        prev = terms[-1]
        Q, _ = quotient(A, prev)
        comp = [j for j in range(A.d) if j not in set(prev.pivots)]
        lifts = []
        for v in center(Q).basis:
            w = [F.zero] * A.d
            for pos, j in enumerate(comp):
                w[j] = v[pos]
            lifts.append(w)
        nxt = Subspace.span(F, A.d, list(prev.basis) + lifts)
        if nxt == prev:
            break
        terms.append(nxt)
    length = len(terms) - 1 if terms[-1].dim == A.d else None
    return SeriesReport("UpperCentral", tuple(terms), length)
