"""Noncommutative polynomials in the free unital algebra F<x1, x2, ...>."""

from __future__ import annotations

from typing import Iterable

from ..errors import UsageError
from ..exactlin import axpy
from ..scalar import QQ, FieldMismatchError, FieldSpec

Word = tuple  # tuple[int, ...]; () is the unit monomial


def word_key(w: Word):
    """Total order on words: shorter first, then lexicographic."""
    return (len(w), w)


class FreePoly:
    """Finitely supported map Word -> nonzero coefficient."""

    __slots__ = ("field", "terms")

    def __init__(self, terms: dict | None = None, field: FieldSpec = QQ):
        self.field = field
        self.terms = {}
        if terms:
            for w, c in terms.items():
                c = field(c)
                if c:
                    self.terms[tuple(w)] = c

    @classmethod
    def _raw(cls, terms: dict, field: FieldSpec) -> FreePoly:
        p = cls.__new__(cls)
        p.field = field
        p.terms = terms
        return p

    @classmethod
    def var(cls, i: int, field: FieldSpec = QQ) -> FreePoly:
        if i < 1:
            raise UsageError(f"generator index must be >= 1, got {i}")
        return cls._raw({(i,): field.one}, field)

    @classmethod
    def const(cls, c, field: FieldSpec = QQ) -> FreePoly:
        return cls({(): c}, field)

    @classmethod
    def one(cls, field: FieldSpec = QQ) -> FreePoly:
        return cls.const(1, field)

    @classmethod
    def zero(cls, field: FieldSpec = QQ) -> FreePoly:
        return cls._raw({}, field)

    def _coerce(self, other) -> FreePoly:
        if isinstance(other, FreePoly):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, int):
            return FreePoly.const(other, self.field)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        t = dict(self.terms)
        axpy(self.field, t, self.field.one, o.terms)
        return FreePoly._raw(t, self.field)

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        return FreePoly._raw({w: f.neg(c) for w, c in self.terms.items()}, f)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        t = dict(self.terms)
        axpy(self.field, t, self.field.neg(self.field.one), o.terms)
        return FreePoly._raw(t, self.field)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        f = self.field
        out: dict = {}
        for u, a in self.terms.items():
            row = {u + v: f.mul(a, b) for v, b in o.terms.items()}
            axpy(f, out, f.one, row)
        return FreePoly._raw(out, f)

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self

    def scale(self, c) -> FreePoly:
        f = self.field
        c = f(c)
        if not c:
            return FreePoly.zero(f)
        return FreePoly._raw({w: f.mul(c, x) for w, x in self.terms.items()}, f)

    def __eq__(self, other):
        if isinstance(other, int):
            other = FreePoly.const(other, self.field)
        if not isinstance(other, FreePoly):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.field, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coeff(self, w: Iterable[int]):
        return self.terms.get(tuple(w), self.field.zero)

    def words(self) -> list[Word]:
        return sorted(self.terms, key=word_key)

    def letters(self) -> set[int]:
        return {i for w in self.terms for i in w}

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def is_multilinear(self, d: int | None = None) -> bool:
        """Every word is a permutation of (1..d) (or of its own letter set)."""
        if not self.terms:
            return True
        if d is None:
            d = len(next(iter(self.terms)))
            target = tuple(sorted(next(iter(self.terms))))
            if len(set(target)) != d:
                return False
        else:
            target = tuple(range(1, d + 1))
        return all(len(w) == d and tuple(sorted(w)) == target for w in self.terms)

    def relabel(self, mapping) -> FreePoly:
        """Substitute x_i -> x_{mapping[i]} (a letter renaming)."""
        f = self.field
        out: dict = {}
        for w, c in self.terms.items():
            axpy(f, out, c, {tuple(mapping[i] for i in w): f.one})
        return FreePoly._raw(out, f)

    def __str__(self):
        if not self.terms:
            return "0"
        f = self.field
        parts = []
        for w in self.words():
            c = self.terms[w]
            neg = False
            if f.p == 0 and c < 0:
                neg, c = True, -c
            mono = "*".join(f"x{i}" for i in w)
            cs = f.fmt(c)
            if not mono:
                body = cs
            elif cs == "1":
                body = mono
            else:
                body = f"{cs}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"FreePoly({self}, {self.field})"


def commutator(*args: FreePoly) -> FreePoly:
    """Left-normed commutator [a1, ..., an] = [[a1, ..., a_{n-1}], an]."""
    if not args:
        raise UsageError("commutator of an empty sequence")
    acc = args[0]
    for b in args[1:]:
        acc = acc * b - b * acc
    return acc


def x(i: int, field: FieldSpec = QQ) -> FreePoly:
    return FreePoly.var(i, field)
