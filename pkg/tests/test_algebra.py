from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import brute_filippov_ok, vec_add, vec_scale
from nlie.algebra import (
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
from nlie.catalog import heisenberg, label, make
from nlie.errors import (
    ArityMismatch,
    DimensionMismatch,
    DuplicateKey,
    FieldMismatch,
    FilippovViolation,
    IndexOutOfRange,
    NotAnIdeal,
    ReductionError,
    RepeatedIndex,
)
from nlie.iso import random_invertible
from nlie.linalg import Matrix, Subspace, unit_vector
from nlie.scalars import GF, Q
from nlie.series import center

# n=3, d=5; [e3,e4,e5] = e1 feeds back into the first bracket
BROKEN = {(1, 2, 3): {4: 1}, (3, 4, 5): {1: 1}}


def field_vectors(F, d):
    if F.is_finite:
        entry = st.integers(0, F.p - 1)
    else:
        entry = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5))
    return st.lists(entry, min_size=d, max_size=d).map(lambda v: tuple(F(x) for x in v))


def test_sign_normalization():
    A = new_algebra(3, 4, Q, [((2, 1, 3), {4: 1})])
    assert A.table == {(1, 2, 3): (0, 0, 0, -1)}
    assert A == new_algebra(3, 4, Q, [((1, 2, 3), {4: -1})])


def test_zero_entries_dropped():
    A = new_algebra(2, 3, GF(3), [((1, 2), {3: 3})])
    assert A.table == {} and A.is_abelian()


@pytest.mark.parametrize(
    "entries, exc",
    [
        ([((1, 1, 2), {3: 1})], RepeatedIndex),
        ([((1, 2, 5), {3: 1})], IndexOutOfRange),
        ([((1, 2, 3), {5: 1})], IndexOutOfRange),
        ([((1, 2), {3: 1})], ArityMismatch),
        ([((1, 2, 3), (1, 0))], DimensionMismatch),
        ([((1, 2, 3), {4: 1}), ((2, 1, 3), {4: 1})], DuplicateKey),
    ],
)
def test_new_algebra_errors(entries, exc):
    with pytest.raises(exc):
        new_algebra(3, 4, Q, entries)


def test_validate_rejects_broken_table():
    with pytest.raises(FilippovViolation) as info:
        new_algebra(3, 5, Q, BROKEN, validate=True)
    assert ((3, 4, 5), (2, 3)) in info.value.violations


def test_filippov_report_on_broken_table():
    A = new_algebra(3, 5, Q, BROKEN)
    report = filippov_check(A)
    assert not report.ok and not report
    assert ((3, 4, 5), (2, 3)) in report.violations
    assert not brute_filippov_ok(A)


def test_derivation_family_is_valid_but_not_nilpotent():
    # [e1, e2, x] = phi(x) with phi swapping e4 and e5 on span(e3, e4, e5)
    from nlie.series import is_nilpotent

    A = new_algebra(3, 5, Q, {(1, 2, 3): {4: 1}, (1, 2, 4): {5: 1}, (1, 2, 5): {4: 1}})
    assert filippov_check(A).ok and brute_filippov_ok(A)
    assert not is_nilpotent(A)


@given(
    n=st.integers(2, 3),
    d=st.integers(3, 5),
    data=st.data(),
)
def test_filippov_check_matches_brute_force(n, d, data):
    from itertools import combinations

    F = GF(2)
    keys = list(combinations(range(1, d + 1), n))
    chosen = data.draw(st.lists(st.sampled_from(keys), unique=True, max_size=3))
    entries = [(k, {data.draw(st.integers(1, d)): 1}) for k in chosen]
    A = new_algebra(n, d, F, entries)
    assert filippov_check(A).ok == brute_filippov_ok(A)


@pytest.mark.parametrize("F", [Q, GF(5)], ids=str)
@given(data=st.data())
def test_bracket_alternating_and_multilinear(F, data):
    A = make(label("A_n+3_7", 3), F)
    x, y, z, w = (data.draw(field_vectors(F, A.d)) for _ in range(4))
    c = data.draw(field_vectors(F, 1))[0]
    b = bracket_eval(A, x, y, z)
    assert bracket_eval(A, y, x, z) == vec_scale(F, F.neg(F.one), b)
    assert bracket_eval(A, x, z, y) == vec_scale(F, F.neg(F.one), b)
    assert all(v == 0 for v in bracket_eval(A, x, x, z))
    lhs = bracket_eval(A, vec_add(F, vec_scale(F, c, x), w), y, z)
    rhs = vec_add(F, vec_scale(F, c, b), bracket_eval(A, w, y, z))
    assert lhs == rhs


def test_bracket_on_basis_matches_table():
    A = heisenberg(3, 2, Q)
    e = [A.basis_vector(i) for i in range(1, 8)]
    assert A.bracket(e[3], e[4], e[5]) == e[6]
    assert A.bracket(e[4], e[3], e[5]) == tuple(-x for x in e[6])
    assert A.bracket(e[0], e[3], e[5]) == (0,) * 7


@pytest.mark.parametrize("F", [Q, GF(3), GF(5)], ids=str)
@given(seed=st.integers(0, 10**6))
def test_change_basis_is_isomorphism(F, seed):
    from itertools import combinations

    A = make(label("A_n+3_6", 3), F)
    T = random_invertible(F, A.d, seed)
    B = change_basis(A, T)
    e = [unit_vector(F, A.d, j) for j in range(A.d)]
    # T [x..]_B = [T x..]_A on basis triples
    for K in combinations(range(A.d), 3):
        lhs = T.apply(bracket_eval(B, *(e[k] for k in K)))
        rhs = bracket_eval(A, *(T.apply(e[k]) for k in K))
        assert lhs == rhs
    assert change_basis(B, T.inverse()) == A
    assert filippov_check(B).ok


def test_change_basis_identity_and_errors():
    A = heisenberg(2, 1, GF(3))
    assert change_basis(A, Matrix.identity(GF(3), 3)) == A
    with pytest.raises(FieldMismatch):
        change_basis(A, Matrix.identity(GF(5), 3))
    with pytest.raises(DimensionMismatch):
        change_basis(A, Matrix.identity(GF(3), 4))


def test_quotient_by_center():
    A = make(label("A_n+3_6", 3), Q)
    Z = center(A)
    assert is_ideal(A, Z)
    Qa, P = quotient(A, Z)
    assert Qa.d == A.d - Z.dim and P.shape == (Qa.d, A.d)
    assert filippov_check(Qa).ok
    # the projection is a homomorphism
    e = [unit_vector(Q, A.d, j) for j in range(A.d)]
    for K in [(0, 1, 2), (1, 2, 3), (1, 2, 4)]:
        lhs = P.apply(bracket_eval(A, *(e[k] for k in K)))
        rhs = bracket_eval(Qa, *(P.apply(e[k]) for k in K))
        assert lhs == rhs


def test_quotient_rejects_non_ideal():
    A = heisenberg(3, 1, Q)
    S = Subspace.span(Q, 4, [unit_vector(Q, 4, 0)])
    assert not is_ideal(A, S)
    with pytest.raises(NotAnIdeal):
        quotient(A, S)


def test_direct_sum():
    H = heisenberg(3, 1, GF(2))
    S = direct_sum(H, abelian(3, 2, GF(2)))
    assert S.d == 6 and S.table == {(1, 2, 3): (0, 0, 0, 1, 0, 0)}
    S2 = direct_sum(abelian(3, 1, GF(2)), H)
    assert S2.table == {(2, 3, 4): (0, 0, 0, 0, 1)}
    with pytest.raises(ArityMismatch):
        direct_sum(H, abelian(2, 1, GF(2)))
    with pytest.raises(FieldMismatch):
        direct_sum(H, abelian(3, 1, GF(3)))


def test_reduce_mod_p():
    A = new_algebra(2, 3, Q, [((1, 2), {3: Fraction(1, 2)})])
    R = reduce_mod_p(A, 3)
    assert R.field == GF(3) and R.table == {(1, 2): (0, 0, 2)}
    with pytest.raises(ReductionError):
        reduce_mod_p(A, 2)
    B = new_algebra(2, 3, Q, [((1, 2), {3: 5})])
    assert reduce_mod_p(B, 5).is_abelian()
