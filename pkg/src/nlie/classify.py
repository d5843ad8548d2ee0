"""Recognise the isomorphism class of a nilpotent n-Lie algebra.

Recognition works on basis-free invariants (the :class:`Fingerprint`) rather
than by replaying normalising base changes, so it needs no case-by-case
nonvanishing assumptions on coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .algebra import NLieAlgebra, filippov_check
from .catalog import ClassLabel, label
from .errors import InconsistentInvariants, InvalidAlgebra, NotNilpotent, FilippovViolation
from .series import center, centralizer, derived_subalgebra, lower_central_series

__all__ = ["Fingerprint", "Verdict", "fingerprint", "classify", "decompose_dim1_derived"]


class Fingerprint(NamedTuple):
    n: int
    d: int
    dim_derived: int
    nilpotency_class: int
    dim_center: int
    dim_centralizer_of_derived: int

    def __str__(self):
        return "(" + ",".join(str(x) for x in self) + ")"


def fingerprint(A: NLieAlgebra, *, validate: bool = True) -> Fingerprint:
    if validate:
        report = filippov_check(A)
        if not report.ok:
            raise FilippovViolation(report.violations)
    lcs = lower_central_series(A)
    if not lcs.nilpotent:
        raise NotNilpotent(f"lower central series stabilizes in dimension {lcs.terms[-1].dim}")
    derived = lcs.terms[1] if len(lcs.terms) > 1 else derived_subalgebra(A)
    return Fingerprint(
        A.n,
        A.d,
        derived.dim,
        lcs.length,
        center(A).dim,
        centralizer(A, derived).dim,
    )


@dataclass(frozen=True)
class Verdict:
    outcome: str  # "classified" | "out-of-scope" | "unrecognized"
    label: ClassLabel | None = None
    reason: str | None = None
    fingerprint: Fingerprint | None = None

    @property
    def classified(self) -> bool:
        return self.outcome == "classified"

    def __str__(self):
        if self.outcome == "classified":
            lab = self.label
            s = f"class={lab.name} n={lab.n} d={lab.d}"
            if lab.m is not None:
                s += f" m={lab.m}"
            if lab.k is not None:
                s += f" k={lab.k}"
            return s
        if self.outcome == "out-of-scope":
            return f"out-of-scope: {self.reason}"
        return f"unrecognized: {self.fingerprint}"


def decompose_dim1_derived(A: NLieAlgebra, fp: Fingerprint | None = None) -> tuple[int, int]:
    """(m, k) with A = H(n,m) + F(k), read off from d and dim Z(A)."""
    if fp is None:
        fp = fingerprint(A, validate=False)
    if fp.dim_derived != 1:
        raise ValueError(f"requires dim A^2 = 1, got {fp.dim_derived}")
    gap = fp.d - fp.dim_center
    if gap <= 0 or gap % fp.n:
        raise InconsistentInvariants(
            f"d - dim Z = {gap} is not a positive multiple of n = {fp.n}"
        )
    m = gap // fp.n
    return m, fp.d - m * fp.n - 1


def _dim1_label(n: int, d: int, m: int, k: int) -> ClassLabel:
    if k == 0:
        return label("H", n, m=m)
    if d == n + 3 and m == 1:
        return label("A_n+3_2", n)
    return label("HplusF", n, m=m, k=k)


_DIM_N3 = {
    (2, 3, 1): "A_n+3_3",
    (2, 3, 2): "A_n+3_4",
    (2, 2, 2): "A_n+3_5",
    (3, 3, 2): "A_n+3_8",
}
_DIM_N4_CLASS2 = {(2, 3): "A_n+4_1", (3, 3): "A_n+4_3"}


def classify(A: NLieAlgebra, *, validate: bool = True) -> Verdict:
    """Decision tree over the fingerprint; see the module docstring."""
    if validate:
        report = filippov_check(A)
        if not report.ok:
            raise FilippovViolation(report.violations)
    try:
        fp = fingerprint(A, validate=False)
    except NotNilpotent:
        return Verdict("out-of-scope", reason="not nilpotent")
    n, d = fp.n, fp.d
    if fp.dim_derived == 0:
        name = "A_n+3_1" if d == n + 3 else "abelian"
        return Verdict("classified", label(name, n, d=d), fingerprint=fp)
    if d > n + 4:
        return Verdict("out-of-scope", reason="dim>n+4", fingerprint=fp)
    if d == n + 4 and fp.nilpotency_class != 2:
        return Verdict("out-of-scope", reason=f"dim=n+4 class={fp.nilpotency_class}", fingerprint=fp)

    unrecognized = Verdict("unrecognized", fingerprint=fp)
    if fp.dim_derived == 1:
        try:
            m, k = decompose_dim1_derived(A, fp)
        except InconsistentInvariants:
            return unrecognized
        return Verdict("classified", _dim1_label(n, d, m, k), fingerprint=fp)

    key = (fp.dim_derived, fp.nilpotency_class, fp.dim_center)
    if d == n + 2:
        if key == (2, 3, 1):
            return Verdict("classified", label("A_n+2_3", n), fingerprint=fp)
    elif d == n + 3:
        if key == (3, 4, 1):
            # the one pair sharing (dim A^2, class, dim Z)
            name = {4: "A_n+3_6", 3: "A_n+3_7"}.get(fp.dim_centralizer_of_derived)
        else:
            name = _DIM_N3.get(key)
        if name:
            return Verdict("classified", label(name, n), fingerprint=fp)
    elif d == n + 4:
        pair = (fp.dim_derived, fp.dim_center)
        if pair == (2, 2):
            if n >= 3:
                return Verdict("classified", label("A_n+4_2", n), fingerprint=fp)
            return Verdict("classified", label("L6_22", n), fingerprint=fp)
        name = _DIM_N4_CLASS2.get(pair)
        if name:
            return Verdict("classified", label(name, n), fingerprint=fp)
    return unrecognized
