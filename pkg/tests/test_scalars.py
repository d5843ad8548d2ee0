from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nlie.errors import DivisionByZero, FieldMismatch, NotPrime, ParseError
from nlie.scalars import GF, Q, FieldSpec, Scalar, field_from_spec, is_prime, scalar_arith

FIELDS = [Q, GF(2), GF(3), GF(5), GF(7)]
rationals = st.fractions(max_denominator=50).filter(lambda x: abs(x.numerator) < 10**6)


def elems(F):
    if F.is_finite:
        return st.integers(0, F.p - 1).map(lambda x: Scalar(F, x))
    return rationals.map(lambda x: Scalar(F, x))


@pytest.mark.parametrize("F", FIELDS, ids=str)
@given(data=st.data())
def test_field_axioms(F, data):
    a, b, c = (data.draw(elems(F)) for _ in range(3))
    zero, one = Scalar(F, 0), Scalar(F, 1)
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + zero == a and a * one == a
    assert a + (-a) == zero
    assert a - b == a + (-b)
    if a:
        assert a * a.inverse() == one
        assert (b / a) * a == b


def test_gf_reduction_and_inverse():
    F = GF(7)
    assert F(10) == 3 and F(-1) == 6
    assert F(Fraction(1, 3)) == 5  # 3 * 5 = 15 = 1 mod 7
    assert Scalar(F, 3).inverse() == Scalar(F, 5)


def test_rational_values_stay_exact():
    x = Scalar(Q, Fraction(1, 3)) + Scalar(Q, Fraction(1, 6))
    assert x.value == Fraction(1, 2)
    assert str(x) == "1/2"


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        Scalar(GF(5), 0).inverse()
    with pytest.raises(DivisionByZero):
        Scalar(Q, 1) / Scalar(Q, 0)
    with pytest.raises(ZeroDivisionError):
        GF(3)(Fraction(1, 3))


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        Scalar(GF(3), 1) + Scalar(GF(5), 1)
    with pytest.raises(FieldMismatch):
        scalar_arith("mul", Scalar(Q, 1), Scalar(GF(2), 1))


def test_scalar_arith_ops():
    F = GF(5)
    a, b = Scalar(F, 2), Scalar(F, 4)
    assert scalar_arith("add", a, b).value == 1
    assert scalar_arith("sub", a, b).value == 3
    assert scalar_arith("mul", a, b).value == 3
    assert scalar_arith("div", a, b).value == 3
    assert scalar_arith("neg", a).value == 3
    assert scalar_arith("inv", a).value == 3


@pytest.mark.parametrize("p", [0, 1, 4, 9, 91])
def test_not_prime(p):
    with pytest.raises(NotPrime):
        FieldSpec(p)


def test_is_prime_small():
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@pytest.mark.parametrize(
    "text, field",
    [("rational", Q), ("Q", Q), ("gf 5", GF(5)), ("gf5", GF(5)), ("GF(3)", GF(3))],
)
def test_field_from_spec(text, field):
    assert field_from_spec(text) == field


def test_field_from_spec_errors():
    with pytest.raises(NotPrime):
        field_from_spec("gf 6")
    with pytest.raises(ParseError):
        field_from_spec("reals")


def test_parse_and_format_roundtrip():
    assert Q.parse("-3/6") == Fraction(-1, 2)
    assert Q.format(Q.parse("-3/6")) == "-1/2"
    assert GF(5).parse("7") == 2
    with pytest.raises(ParseError):
        Q.parse("1.5")
    with pytest.raises(DivisionByZero):
        Q.parse("1/0")
