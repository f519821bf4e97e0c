"""Exact sparse linear algebra: echelon bases, rank and membership.

Vectors are ``dict`` maps from an opaque ordered key to a nonzero raw field
value (see :mod:`tprod.scalar`).  Bases are kept in *reduced* row echelon
form: every row has pivot coefficient 1 at its smallest key and no row
contains another row's pivot.  Reduction is then a single pass, and the rows
never carry more than ``codim + 1`` entries once the basis is large.

Over GF(2) with a fixed key enumeration, :class:`BitEchelon` stores rows as
Python ints (bit ``i`` <-> ``keys[i]``), which is what makes the 1024-dim
group-algebra computations affordable.
"""

from __future__ import annotations

from bisect import insort
from typing import Callable, Hashable, Iterable, Sequence

from .scalar import FieldMismatchError, FieldSpec


class SparseVector(dict):
    """A ``dict`` key -> coefficient that records its field."""

    __slots__ = ("field",)

    def __init__(self, field: FieldSpec, entries=()):
        super().__init__()
        self.field = field
        for k, c in dict(entries).items():
            c = field(c)
            if c:
                self[k] = c


class FrozenBasisError(RuntimeError):
    pass


def _check_field(v, field: FieldSpec):
    f = getattr(v, "field", None)
    if f is not None and f != field:
        raise FieldMismatchError(f"vector over {f}, basis over {field}")


def axpy(field: FieldSpec, target: dict, c, row: dict) -> None:
    """``target += c * row`` in place, dropping zeros."""
    if not c:
        return
    p = field.p
    get = target.get
    if p == 0:
        for k, x in row.items():
            y = get(k, 0) + c * x
            if y:
                target[k] = y
            else:
                del target[k]
    else:
        for k, x in row.items():
            y = (get(k, 0) + c * x) % p
            if y:
                target[k] = y
            elif k in target:
                del target[k]


class EchelonBasis:
    """Reduced echelon basis of a subspace, generic over the field.

    ``sort_key`` orders the opaque basis keys; the pivot of a row is its
    smallest key under that order.
    """

    def __init__(self, field: FieldSpec, sort_key: Callable | None = None):
        self.field = field
        self.sort_key = sort_key
        self._rows: dict[Hashable, dict] = {}
        self._pivots: list = []  # sorted by sort_key
        self._frozen = False

    @property
    def rank(self) -> int:
        return len(self._rows)

    def __len__(self):
        return len(self._rows)

    @property
    def pivots(self) -> list:
        return list(self._pivots)

    @property
    def rows(self) -> list[dict]:
        return [dict(self._rows[p]) for p in self._pivots]

    def row(self, pivot) -> dict:
        return self._rows[pivot]

    def freeze(self) -> EchelonBasis:
        self._frozen = True
        return self

    def copy(self) -> EchelonBasis:
        b = EchelonBasis(self.field, self.sort_key)
        b._rows = {p: dict(r) for p, r in self._rows.items()}
        b._pivots = list(self._pivots)
        return b

    def reduce(self, v: dict) -> dict:
        """Return the normal form of ``v``: no pivot keys remain."""
        _check_field(v, self.field)
        rows = self._rows
        f = self.field
        out = {}
        for k, c in v.items():
            c = f(c)
            if c:
                out[k] = c
        for k, c in list(out.items()):
            row = rows.get(k)
            if row is not None:
                axpy(f, out, f.neg(c), row)
        return out

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    __contains__ = contains

    def insert(self, v: dict) -> bool:
        """Add ``v`` to the spanning set; return True iff the rank grew."""
        if self._frozen:
            raise FrozenBasisError("basis is frozen")
        r = self.reduce(v)
        if not r:
            return False
        f = self.field
        p = min(r, key=self.sort_key) if self.sort_key else min(r)
        c = r[p]
        if c != f.one:
            inv = f.inv(c)
            r = {k: f.mul(x, inv) for k, x in r.items()}
        for q, row in self._rows.items():
            x = row.get(p)
            if x is not None:
                axpy(f, row, f.neg(x), r)
        self._rows[p] = r
        insort(self._pivots, p, key=self.sort_key)
        return True

    def extend(self, vs: Iterable[dict]) -> int:
        """Insert every vector; return how many grew the rank."""
        return sum(1 for v in vs if self.insert(v))


class BitEchelon:
    """Reduced echelon basis over GF(2) with rows packed into ints.

    ``keys`` fixes the enumeration: bit ``i`` stands for ``keys[i]`` and the
    pivot of a row is its lowest set bit (so ``keys`` should be sorted for
    the pivot rule to match :class:`EchelonBasis`).  Vectors may be passed
    either as packed ints or as dicts over ``keys``.
    """

    def __init__(self, keys: Sequence[Hashable] | int):
        if isinstance(keys, int):
            keys = range(keys)
        self.keys = list(keys)
        self.index = {k: i for i, k in enumerate(self.keys)}
        self.field = FieldSpec(2)
        self._rows: dict[int, int] = {}  # lowbit -> row
        self._mask = 0
        self._frozen = False

    @property
    def rank(self) -> int:
        return len(self._rows)

    def __len__(self):
        return len(self._rows)

    @property
    def pivot_mask(self) -> int:
        return self._mask

    @property
    def pivots(self) -> list:
        return [self.keys[b.bit_length() - 1] for b in sorted(self._rows)]

    @property
    def packed_rows(self) -> list[int]:
        return [self._rows[b] for b in sorted(self._rows)]

    @property
    def rows(self) -> list[dict]:
        return [self.unpack(r) for r in self.packed_rows]

    def freeze(self) -> BitEchelon:
        self._frozen = True
        return self

    def pack(self, v) -> int:
        if isinstance(v, int):
            return v
        _check_field(v, self.field)
        x = 0
        idx = self.index
        for k, c in v.items():
            if c % 2:
                x ^= 1 << idx[k]
        return x

    def unpack(self, x: int) -> dict:
        out = {}
        keys = self.keys
        while x:
            low = x & -x
            out[keys[low.bit_length() - 1]] = 1
            x ^= low
        return out

    def reduce_packed(self, x: int) -> int:
        rows = self._rows
        hit = x & self._mask
        while hit:
            low = hit & -hit
            x ^= rows[low]
            hit ^= low
        return x

    def reduce(self, v):
        r = self.reduce_packed(self.pack(v))
        return r if isinstance(v, int) else self.unpack(r)

    def contains(self, v) -> bool:
        return not self.reduce_packed(self.pack(v))

    __contains__ = contains

    def insert(self, v) -> bool:
        if self._frozen:
            raise FrozenBasisError("basis is frozen")
        r = self.reduce_packed(self.pack(v))
        if not r:
            return False
        low = r & -r
        rows = self._rows
        for b, row in rows.items():
            if row & low:
                rows[b] = row ^ r
        rows[low] = r
        self._mask |= low
        return True

    def extend(self, vs: Iterable) -> int:
        return sum(1 for v in vs if self.insert(v))


def echelon_basis(field: FieldSpec, keys: Sequence | None = None, sort_key=None):
    """Pick the packed GF(2) engine when possible, the generic one otherwise."""
    if field.p == 2 and keys is not None:
        return BitEchelon(keys)
    return EchelonBasis(field, sort_key)


def rank(field: FieldSpec, vectors: Iterable[dict], keys: Sequence | None = None) -> int:
    b = echelon_basis(field, keys)
    b.extend(vectors)
    return b.rank
