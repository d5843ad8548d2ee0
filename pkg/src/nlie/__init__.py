"""Exact arithmetic for nilpotent n-Lie (Filippov) algebras of small dimension.

Structure constants live over Q or GF(p).  The package computes central
series and related invariants, names isomorphism classes from a catalog of
nilpotent algebras of dimension at most n+4, and searches for explicit
isomorphisms over small prime fields.
"""
from __future__ import annotations

from .algebra import (
    FilippovReport,
    NLieAlgebra,
    abelian,
    bracket_eval,
    change_basis,
    direct_sum,
    filippov_check,
    is_ideal,
    new_algebra,
    quotient,
    reduce_mod_p,
)
from .catalog import ClassLabel, catalog_list, label, make
from .classify import Fingerprint, Verdict, classify, decompose_dim1_derived, fingerprint
from .errors import NLieError
from .io import emit_algebra, parse_algebra
from .iso import IsoResult, IsoSearchBudget, find_isomorphism, random_basis_change
from .linalg import Matrix, Subspace
from .scalars import GF, FieldSpec, Q, Scalar
from .series import (
    center,
    centralizer,
    derived_subalgebra,
    is_nilpotent,
    lower_central_series,
    nilpotency_class,
    upper_central_series,
)

__version__ = "0.1.0"
