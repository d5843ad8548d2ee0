from __future__ import annotations

import pytest

from nlie.algebra import filippov_check
from nlie.catalog import (
    a_nk,
    a_np3_3_as_printed,
    catalog_list,
    heisenberg,
    heisenberg_plus_abelian,
    l6_22,
    label,
    make,
)
from nlie.errors import InvalidParams, OutOfCatalog
from nlie.scalars import GF, Q
from nlie.series import center, derived_subalgebra, nilpotency_class


@pytest.mark.parametrize("n", [2, 3, 4])
def test_counts_up_to_n_plus_2(n):
    assert [len(catalog_list(n, d)) for d in (n, n + 1, n + 2)] == [1, 2, 3]


@pytest.mark.parametrize("n, want", [(2, 9), (3, 8), (4, 8)])
def test_counts_at_n_plus_3(n, want):
    assert len(catalog_list(n, n + 3)) == want


def test_binary_five_dim_includes_h22():
    names = {lab.name for lab in catalog_list(2, 5)}
    assert "H" in names and len(names) == 9


def test_class_two_at_n_plus_3_for_binary():
    labs = catalog_list(2, 5, 2)
    assert sorted(str(lab) for lab in labs) == ["A_n+3_2", "A_n+3_5", "H m=2"]


def test_class_two_at_n_plus_4_three_ary():
    got = sorted(str(lab) for lab in catalog_list(3, 7, 2))
    assert got == ["A_n+4_1", "A_n+4_2", "A_n+4_3", "H m=2", "HplusF m=1 k=3"]


def test_class_filter_agrees_with_series():
    for n in (2, 3, 4):
        for lab in catalog_list(n, n + 4, 2):
            assert nilpotency_class(make(lab)) == 2


def test_out_of_catalog():
    with pytest.raises(OutOfCatalog):
        catalog_list(3, 7)
    with pytest.raises(OutOfCatalog):
        catalog_list(3, 8, 2)


@pytest.mark.parametrize(
    "name, kw",
    [
        ("A_n+4_2", dict(n=2)),
        ("L6_22", dict(n=3)),
        ("A_nk", dict(n=3, k=2)),
        ("A_nk", dict(n=3, k=5)),
        ("H", dict(n=3)),
        ("H", dict(n=3, m=0)),
        ("HplusF", dict(n=3, m=1)),
        ("nonsense", dict(n=3)),
        ("A_n+3_2", dict(n=1)),
        ("A_n+3_2", dict(n=3, d=7)),
    ],
)
def test_invalid_labels(name, kw):
    n = kw.pop("n")
    with pytest.raises(InvalidParams):
        label(name, n, **kw)


def test_a_nk_rejects_bad_k():
    with pytest.raises(InvalidParams):
        a_nk(3, 5)


def test_heisenberg_shape():
    H = heisenberg(2, 2, Q)
    assert H.d == 5
    assert H.table == {(1, 2): (0, 0, 0, 0, 1), (3, 4): (0, 0, 0, 0, 1)}
    assert derived_subalgebra(H) == center(H)


def test_direct_sum_constructor():
    A = heisenberg_plus_abelian(3, 1, 2, Q)
    assert A.d == 6 and center(A).dim == 3
    assert A.table == {(1, 2, 3): (0, 0, 0, 1, 0, 0)}


def test_l6_22_eps_family_is_valid():
    for eps in (0, 1, 2, -1):
        assert filippov_check(l6_22(eps, Q)).ok
    assert label("L6_22", 2, eps=0) == label("L6_22", 2, eps=1)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_table_as_printed_has_two_dimensional_center(n):
    # e_{n+1} - e_{n+2} is central in the printed presentation
    A = a_np3_3_as_printed(n, GF(5))
    assert filippov_check(A).ok
    assert center(A).dim == 2
    assert center(make(label("A_n+3_3", n), GF(5))).dim == 1


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("F", [Q, GF(2), GF(3), GF(5)], ids=str)
def test_every_listed_algebra_is_valid_and_nilpotent(n, F):
    for d in range(n, n + 4):
        for lab in catalog_list(n, d):
            A = make(lab, F)
            assert A.d == lab.d
            assert filippov_check(A).ok, lab
            nilpotency_class(A)
