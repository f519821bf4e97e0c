"""Exact field arithmetic over Q and the prime fields F_p.

A :class:`FieldSpec` does arithmetic on *raw* values (``gmpy2.mpq`` for Q,
plain ``int`` residues for F_p).  The hot loops in the rest of the package
work on raw values through the field object.  :class:`Scalar` is the
user-facing wrapper that carries its field and refuses to mix fields.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from gmpy2 import mpq


class FieldMismatchError(ValueError):
    """Operands belong to different fields."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Q when ``p == 0``, otherwise the prime field F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        if p == 0:
            raise ValueError("modulus 0 is not prime")
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> FieldSpec:
        """Parse the CLI field syntax: ``q`` or ``fp:<p>``."""
        t = text.strip().lower()
        if t == "q":
            return cls(0)
        if t.startswith("fp:"):
            try:
                p = int(t[3:])
            except ValueError:
                raise ValueError(f"bad field spec {text!r}") from None
            return cls.prime(p)
        raise ValueError(f"bad field spec {text!r}; expected 'q' or 'fp:<p>'")

    def __str__(self):
        return "q" if self.p == 0 else f"fp:{self.p}"

    def characteristic(self) -> int:
        return self.p

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    # raw-value arithmetic

    def __call__(self, x: Any):
        """Coerce an int, Fraction, mpq or ``"a/b"`` string to a canonical raw value."""
        if self.p == 0:
            return mpq(x)
        if isinstance(x, int):
            return x % self.p
        q = mpq(x)
        num, den = int(q.numerator), int(q.denominator)
        if den % self.p == 0:
            raise ZeroDivisionError(f"denominator {den} vanishes mod {self.p}")
        return num * pow(den, -1, self.p) % self.p

    @property
    def zero(self):
        return mpq(0) if self.p == 0 else 0

    @property
    def one(self):
        return mpq(1) if self.p == 0 else 1

    def add(self, a, b):
        return a + b if self.p == 0 else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p == 0 else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p == 0 else a * b % self.p

    def neg(self, a):
        return -a if self.p == 0 else -a % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a if self.p == 0 else pow(a, -1, self.p)

    def normalize(self, a):
        return self(a)

    def fmt(self, a) -> str:
        if self.p == 0:
            q = mpq(a)
            return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
        return str(a)


QQ = FieldSpec(0)
GF2 = FieldSpec(2)


def invertible_six(field: FieldSpec) -> bool:
    """True iff 1/6 exists in the field, i.e. characteristic is not 2 or 3."""
    return field.characteristic() not in (2, 3)


@dataclass(frozen=True)
class Scalar:
    """A field element that remembers its field."""

    value: Any
    field: FieldSpec = QQ

    def __post_init__(self):
        object.__setattr__(self, "value", self.field(self.value))

    def _other(self, other) -> Scalar:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, int):
            return Scalar(other, self.field)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field.add(self.value, o.value), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field.sub(self.value, o.value), self.field)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field.mul(self.value, o.value), self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.field.neg(self.value), self.field)

    def inv(self) -> Scalar:
        return Scalar(self.field.inv(self.value), self.field)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __bool__(self):
        return bool(self.value)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __str__(self):
        return self.field.fmt(self.value)

    def __repr__(self):
        return f"Scalar({self}, {self.field})"
