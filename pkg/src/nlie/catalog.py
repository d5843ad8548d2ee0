"""Named nilpotent n-Lie algebras of dimension at most n+4.

Every constructor transcribes a presentation on the basis e_1, ..., e_d with
1-based indices; keys are sorted and signed by :func:`new_algebra`.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Any

from .algebra import NLieAlgebra, abelian, direct_sum, new_algebra
from .errors import InvalidParams, OutOfCatalog
from .scalars import FieldSpec, Q

__all__ = [
    "ClassLabel",
    "LABEL_NAMES",
    "label",
    "make",
    "catalog_list",
    "heisenberg",
    "heisenberg_plus_abelian",
    "a_nk",
    "a_np3_3_as_printed",
    "l6_22",
]

LABEL_NAMES = (
    "abelian",
    "H",
    "HplusF",
    "A_nk",
    "A_n+2_3",
    *(f"A_n+3_{i}" for i in range(1, 9)),
    *(f"A_n+4_{i}" for i in range(1, 4)),
    "L6_22",
)


@dataclass(frozen=True)
class ClassLabel:
    """An isomorphism class from the catalog.

    ``eps`` only parameterizes construction of L6_22 and is ignored by
    equality, since classification stops at the family.
    """

    name: str
    n: int
    d: int
    m: int | None = None
    k: int | None = None
    eps: Any = dc_field(default=None, compare=False)

    def __str__(self):
        parts = [self.name]
        if self.name == "abelian":
            parts.append(f"d={self.d}")
        if self.m is not None:
            parts.append(f"m={self.m}")
        if self.k is not None:
            parts.append(f"k={self.k}")
        return " ".join(parts)


def label(name: str, n: int, *, m: int | None = None, k: int | None = None,
          d: int | None = None, eps: Any = None) -> ClassLabel:
    """Validated :class:`ClassLabel`; the dimension is derived where the name fixes it."""
    if name not in LABEL_NAMES:
        raise InvalidParams(f"unknown label {name!r}")
    if n < 2:
        raise InvalidParams(f"arity must be at least 2, got {n}")

    def need(cond, msg):
        if not cond:
            raise InvalidParams(f"{name}: {msg}")

    if name == "abelian":
        need(d is not None and d >= 0, "dimension required")
        return ClassLabel(name, n, d)
    if name == "H":
        need(m is not None and m >= 1, "m must be a positive integer")
        dd = m * n + 1
    elif name == "HplusF":
        need(m is not None and m >= 1, "m must be a positive integer")
        need(k is not None and k >= 0, "k must be non-negative")
        dd = m * n + 1 + k
    elif name == "A_nk":
        need(k is not None and 3 <= k <= n + 1, f"requires 3 <= k <= n+1, got k={k}")
        dd = n + k
    elif name == "A_n+2_3":
        dd = n + 2
    elif name.startswith("A_n+3_"):
        dd = n + 3
    elif name.startswith("A_n+4_"):
        need(name != "A_n+4_2" or n >= 3, "only defined for n >= 3")
        dd = n + 4
    else:  # L6_22
        need(n == 2, "only defined for n = 2")
        dd = 6
    need(d is None or d == dd, f"dimension {d} inconsistent with {dd}")
    keep_m = m if name in ("H", "HplusF") else None
    keep_k = k if name in ("HplusF", "A_nk") else None
    return ClassLabel(name, n, dd, keep_m, keep_k, eps if name == "L6_22" else None)


def _r(a: int, b: int) -> tuple[int, ...]:
    """Indices a..b inclusive (empty when b < a)."""
    return tuple(range(a, b + 1))


def heisenberg(n: int, m: int, field: FieldSpec = Q) -> NLieAlgebra:
    """H(n,m): [x_{n(i-1)+1}, .., x_{ni}] = x for i = 1..m, with x = e_{mn+1}."""
    d = m * n + 1
    return new_algebra(n, d, field, [(_r(n * (i - 1) + 1, n * i), {d: 1}) for i in range(1, m + 1)])


def heisenberg_plus_abelian(n: int, m: int, k: int, field: FieldSpec = Q) -> NLieAlgebra:
    return direct_sum(heisenberg(n, m, field), abelian(n, k, field))


def a_nk(n: int, k: int, field: FieldSpec = Q) -> NLieAlgebra:
    """A_{n,k}: [e_{k-1}, .., e_{n+k-2}] = e_{n+k}, [e_1, .., e_n] = e_{n+k-1}."""
    if not 3 <= k <= n + 1:
        raise InvalidParams(f"A_nk requires 3 <= k <= n+1, got k={k}")
    d = n + k
    return new_algebra(n, d, field, [(_r(1, n), {d - 1: 1}), (_r(k - 1, n + k - 2), {d: 1})])


def a_np3_3_as_printed(n: int, field: FieldSpec = Q) -> NLieAlgebra:
    """A_{n+3,3} exactly as tabulated.

    Here e_{n+1} - e_{n+2} is central, so this algebra has a 2-dimensional
    centre and is isomorphic to A_{n+3,4}; :func:`make` uses the
    1-dimensional-centre representative instead.
    """
    return new_algebra(n, n + 3, field, [
        (_r(1, n), {n + 1: 1}),
        (_r(2, n + 1), {n + 3: 1}),
        (_r(2, n) + (n + 2,), {n + 3: 1}),
    ])


def l6_22(eps: Any = 1, field: FieldSpec = Q) -> NLieAlgebra:
    """L_{6,22}(eps): [e1,e2]=e5, [e1,e3]=e6, [e2,e4]=eps e6, [e3,e4]=e5."""
    return new_algebra(2, 6, field, [
        ((1, 2), {5: 1}),
        ((1, 3), {6: 1}),
        ((2, 4), {6: eps}),
        ((3, 4), {5: 1}),
    ])


def _table_i(name: str, n: int) -> list:
    """Bracket lists for A_{n+2,3}, A_{n+3,i} and A_{n+4,i}."""
    lead = (_r(1, n), {n + 1: 1})
    up = _r(2, n + 1)  # [e_2, .., e_{n+1}]
    side = _r(2, n) + (n + 2,)  # [e_2, .., e_n, e_{n+2}]
    skip2 = (1,) + _r(3, n + 1)  # [e_1, e_3, .., e_{n+1}]
    return {
        "A_n+2_3": [lead, (up, {n + 2: 1})],
        "A_n+3_1": [],
        "A_n+3_2": [(_r(1, n), {n + 3: 1})],
        # independent beta/gamma vectors: the 1-dimensional-centre case
        "A_n+3_3": [lead, (up, {n + 3: 1}), ((1,) + _r(3, n) + (n + 2,), {n + 3: 1})],
        "A_n+3_4": [lead, (up, {n + 3: 1})],
        "A_n+3_5": [lead, (side, {n + 3: 1})],
        "A_n+3_6": [lead, (up, {n + 2: 1}), (side, {n + 3: 1})],
        "A_n+3_7": [lead, (up, {n + 2: 1}), (side, {n + 3: 1}), (skip2, {n + 3: 1})],
        "A_n+3_8": [lead, (up, {n + 2: 1}), (skip2, {n + 3: 1})],
        "A_n+4_1": [(_r(1, n), {n + 3: 1}), (up, {n + 4: 1})],
        "A_n+4_2": [(_r(1, n), {n + 3: 1}), (_r(3, n + 2), {n + 4: 1})],
        "A_n+4_3": [lead, (side, {n + 3: 1}), ((1,) + _r(3, n) + (n + 2,), {n + 4: 1})],
    }[name]


def make(lab: ClassLabel, field: FieldSpec = Q) -> NLieAlgebra:
    """Structure constants of the catalog algebra named by ``lab``."""
    lab = label(lab.name, lab.n, m=lab.m, k=lab.k, d=lab.d, eps=lab.eps)
    n = lab.n
    if lab.name == "abelian":
        return abelian(n, lab.d, field)
    if lab.name == "H":
        return heisenberg(n, lab.m, field)
    if lab.name == "HplusF":
        return heisenberg_plus_abelian(n, lab.m, lab.k, field)
    if lab.name == "A_nk":
        return a_nk(n, lab.k, field)
    if lab.name == "L6_22":
        return l6_22(1 if lab.eps is None else lab.eps, field)
    return new_algebra(n, lab.d, field, _table_i(lab.name, n))


def _dim1_labels(n: int, d: int) -> list[ClassLabel]:
    """H(n,m) + F(k) with mn+1+k = d, named as in the tables."""
    out = []
    m = 1
    while m * n + 1 <= d:
        k = d - m * n - 1
        if k == 0:
            out.append(label("H", n, m=m))
        elif d == n + 3 and m == 1:
            out.append(label("A_n+3_2", n))
        else:
            out.append(label("HplusF", n, m=m, k=k))
        m += 1
    return out


def catalog_list(n: int, d: int, class_filter: int | None = None) -> list[ClassLabel]:
    """All isomorphism classes of nilpotent n-Lie algebras of dimension ``d``.

    Covers d <= n+3, and d = n+4 restricted to class 2.  ``class_filter=1``
    (abelian only) is accepted in any dimension.
    """
    if n < 2:
        raise InvalidParams(f"arity must be at least 2, got {n}")
    if d < 0:
        raise InvalidParams(f"negative dimension {d}")
    if class_filter == 1:
        return [label("abelian", n, d=d)] if d > 0 else []
    if d <= n + 2:
        labs = [label("abelian", n, d=d)] + _dim1_labels(n, d)
        if d == n + 2:
            labs.append(label("A_n+2_3", n))
    elif d == n + 3:
        labs = [label(f"A_n+3_{i}", n) for i in range(1, 9)]
        labs += [lab for lab in _dim1_labels(n, d) if lab.name != "A_n+3_2"]
    elif d == n + 4 and class_filter == 2:
        labs = _dim1_labels(n, d)
        labs.append(label("A_n+4_1", n))
        if n >= 3:
            labs.append(label("A_n+4_2", n))
        labs.append(label("A_n+4_3", n))
        if n == 2:
            labs.append(label("L6_22", n))
    else:
        raise OutOfCatalog(f"no classification for n={n}, d={d}, class={class_filter}")
    if class_filter is not None:
        from .series import nilpotency_class

        labs = [lab for lab in labs if nilpotency_class(make(lab)) == class_filter]
    return labs
