"""Exact scalars: arbitrary-precision rationals and prime fields GF(p).

Field elements are stored as plain Python values (``Fraction`` over Q,
``int`` in ``[0, p)`` over GF(p)) and manipulated through the owning
:class:`FieldSpec`.  :class:`Scalar` wraps a value together with its field
for callers that want operator syntax and mismatch checking.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .errors import DivisionByZero, FieldMismatch, NotPrime, ParseError

__all__ = [
    "FieldSpec",
    "Q",
    "GF",
    "Scalar",
    "field_from_spec",
    "scalar_arith",
    "is_prime",
]

MAX_PRIME = 2**31 - 1


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The ground field: rationals when ``p`` is None, otherwise GF(p)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not isinstance(self.p, int) or not is_prime(self.p):
                raise NotPrime(f"{self.p} is not prime")
            if self.p > MAX_PRIME:
                raise NotPrime(f"p={self.p} exceeds 2^31-1")

    @property
    def kind(self) -> str:
        return "Rational" if self.p is None else "Prime"

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    def __call__(self, x: Any):
        """Coerce ``x`` (int, Fraction, str, Scalar) to a canonical element."""
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldMismatch(f"{x.field} element used in {self}")
            return x.value
        if isinstance(x, str):
            return self.parse(x)
        if self.p is None:
            if isinstance(x, float):
                raise TypeError("floating-point values are not exact field elements")
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise DivisionByZero(f"denominator of {x} vanishes mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, bool) or not isinstance(x, int):
            # numpy integers and the like
            x = int(x)
        return x % self.p

    def parse(self, text: str):
        m = re.fullmatch(r"\s*([+-]?\d+)(?:/(\d+))?\s*", text)
        if not m:
            raise ParseError(f"malformed coefficient {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise DivisionByZero(f"zero denominator in {text!r}")
        return self(Fraction(num, den))

    def format(self, x) -> str:
        if self.p is not None:
            return str(x)
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    # arithmetic on raw values; inputs are assumed canonical
    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if not a:
            raise DivisionByZero("inverse of zero")
        return 1 / a if self.p is None else pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def spec_string(self) -> str:
        return "rational" if self.p is None else f"gf {self.p}"

    def __str__(self):
        return "Q" if self.p is None else f"GF({self.p})"

    def __repr__(self):
        return f"FieldSpec({self.spec_string()!r})" if self.p is None else f"GF({self.p})"


Q = FieldSpec()


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)


def field_from_spec(text: str) -> FieldSpec:
    """Parse ``"rational"`` or ``"gf <p>"`` (``"gf5"`` is also accepted)."""
    t = text.strip().lower()
    if t in ("rational", "q"):
        return Q
    m = re.fullmatch(r"gf\s*\(?\s*(\d+)\s*\)?", t)
    if not m:
        raise ParseError(f"unknown field spec {text!r}")
    p = int(m.group(1))
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    return FieldSpec(p)


@dataclass(frozen=True)
class Scalar:
    field: FieldSpec
    value: Any

    def __post_init__(self):
        object.__setattr__(self, "value", self.field(self.value))

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        return self.field(other)

    def __add__(self, other):
        return Scalar(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return Scalar(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return Scalar(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Scalar(self.field, self.field.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return Scalar(self.field, self.field.div(self._other(other), self.value))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def inverse(self):
        return Scalar(self.field, self.field.inv(self.value))

    def __bool__(self):
        return bool(self.value)

    def __str__(self):
        return self.field.format(self.value)


def scalar_arith(op: str, a: Scalar, b: Scalar | None = None) -> Scalar:
    """Apply ``op`` in {add, sub, mul, div, neg, inv} to exact scalars."""
    if op in ("neg", "inv"):
        if b is not None:
            raise TypeError(f"{op} takes one operand")
        return -a if op == "neg" else a.inverse()
    if b is None:
        raise TypeError(f"{op} takes two operands")
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    ops = {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}
    try:
        return ops[op](b)
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
