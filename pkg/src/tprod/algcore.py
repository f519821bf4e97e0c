"""Finite-dimensional unital algebras given by a basis and a product rule.

Elements are raw vectors over basis *positions*: ``dict`` pos -> coefficient
in general, or a packed ``int`` bitmask when the field is GF(2).  Basis
products are memoized lazily; the memo is a plain dict whose fills are
idempotent, so concurrent readers at worst recompute an entry.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Callable, Hashable, Sequence

from .errors import GuardError, UsageError
from .exactlin import axpy, echelon_basis
from .scalar import FieldMismatchError, FieldSpec

UNIT_CHECK_MAX_DIM = 4096
ASSOC_FULL_MAX_DIM = 64
ASSOC_SAMPLES = 256
TENSOR_MAX_DIM = 1 << 16
LIE_WORK_BUDGET = 1 << 24
DEFAULT_SEED = 20170411


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


class FiniteAlgebra:
    """A unital associative algebra with basis ``labels``.

    ``product(i, j)`` returns the raw vector of ``b_i * b_j``.
    ``unit`` is the raw vector of the identity.
    """

    def __init__(self, labels: Sequence[Hashable], product: Callable, field: FieldSpec,
                 unit, name: str = "", generators: Sequence | None = None,
                 memo: bool = True, check: bool = True, seed: int = DEFAULT_SEED):
        self.labels = list(labels)
        self._dim = len(self.labels)
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        self.field = field
        self.packed = field.p == 2
        self.name = name
        self._rule = product
        self._memo: dict | None = {} if memo else None
        self.unit = unit
        self.generators = list(generators) if generators is not None else []
        self.checks: dict = {}
        self._class_cache: dict = {}
        if check:
            self.check_unit()
            self.check_associativity(seed=seed)

    def __repr__(self):
        return f"FiniteAlgebra({self.name or '?'}, dim={self.dim}, field={self.field})"

    @property
    def dim(self) -> int:
        return self._dim

    # vectors

    def zero(self):
        return 0 if self.packed else {}

    def basis(self, i: int):
        return 1 << i if self.packed else {i: self.field.one}

    def element(self, coeffs: dict):
        """Build an element from {label: coefficient}."""
        f = self.field
        if self.packed:
            x = 0
            for lab, c in coeffs.items():
                if f(c):
                    x ^= 1 << self.index[lab]
            return x
        out: dict = {}
        for lab, c in coeffs.items():
            axpy(f, out, f(c), {self.index[lab]: f.one})
        return out

    def to_labels(self, x) -> dict:
        if self.packed:
            return {self.labels[i]: 1 for i in _bits(x)}
        return {self.labels[i]: c for i, c in sorted(x.items())}

    def is_zero(self, x) -> bool:
        return not x

    def add(self, x, y):
        if self.packed:
            return x ^ y
        out = dict(x)
        axpy(self.field, out, self.field.one, y)
        return out

    def sub(self, x, y):
        if self.packed:
            return x ^ y
        out = dict(x)
        axpy(self.field, out, self.field.neg(self.field.one), y)
        return out

    def scale(self, c, x):
        f = self.field
        c = f(c)
        if self.packed:
            return x if c else 0
        if not c:
            return {}
        return {i: f.mul(c, a) for i, a in x.items()}

    def terms(self, x):
        if self.packed:
            for i in _bits(x):
                yield i, 1
        else:
            yield from x.items()

    # products

    def basis_product(self, i: int, j: int):
        memo = self._memo
        if memo is None:
            return self._rule(i, j)
        v = memo.get((i, j))
        if v is None:
            v = self._rule(i, j)
            memo[(i, j)] = v
        return v

    def mul(self, x, y):
        bp = self.basis_product
        if self.packed:
            acc = 0
            ys = list(_bits(y))
            for i in _bits(x):
                for j in ys:
                    acc ^= bp(i, j)
            return acc
        f = self.field
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                axpy(f, out, f.mul(a, b), bp(i, j))
        return out

    def prod(self, *xs):
        acc = self.unit
        for x in xs:
            acc = self.mul(acc, x)
        return acc

    def bracket(self, x, y):
        return self.sub(self.mul(x, y), self.mul(y, x))

    def bracket_basis(self, x, j: int):
        """[x, b_j] without building b_j."""
        bp = self.basis_product
        if self.packed:
            acc = 0
            for i in _bits(x):
                acc ^= bp(i, j) ^ bp(j, i)
            return acc
        f = self.field
        out: dict = {}
        for i, a in x.items():
            axpy(f, out, a, bp(i, j))
            axpy(f, out, f.neg(a), bp(j, i))
        return out

    def commutator(self, *xs):
        """Left-normed commutator [x1, ..., xn]."""
        if not xs:
            raise UsageError("commutator of an empty sequence")
        acc = xs[0]
        for y in xs[1:]:
            acc = self.bracket(acc, y)
        return acc

    def random_element(self, rng: random.Random, density: float = 1.0, bound: int = 3):
        f = self.field
        coeffs = {}
        for lab in self.labels:
            if rng.random() <= density:
                coeffs[lab] = rng.randint(-bound, bound) if f.p == 0 else rng.randrange(f.p)
        return self.element(coeffs)

    def echelon(self):
        return echelon_basis(self.field, keys=range(self.dim))

    # structural checks

    def check_unit(self):
        d = self.dim
        if d <= UNIT_CHECK_MAX_DIM:
            idx = range(d)
            mode = "exhaustive"
        else:
            idx = random.Random(DEFAULT_SEED).sample(range(d), 256)
            mode = "sampled"
        for i in idx:
            b = self.basis(i)
            if self.mul(self.unit, b) != b or self.mul(b, self.unit) != b:
                raise ValueError(f"{self.name}: unit fails on basis element {self.labels[i]!r}")
        self.checks["unit"] = mode

    def check_associativity(self, seed: int = DEFAULT_SEED, samples: int = ASSOC_SAMPLES):
        d = self.dim
        if d <= ASSOC_FULL_MAX_DIM:
            triples = ((i, j, k) for i in range(d) for j in range(d) for k in range(d))
            mode = "exhaustive"
        else:
            rng = random.Random(seed)
            triples = [(rng.randrange(d), rng.randrange(d), rng.randrange(d)) for _ in range(samples)]
            mode = f"sampled({samples}, seed={seed})"
        for i, j, k in triples:
            a, b, c = self.basis(i), self.basis(j), self.basis(k)
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                raise ValueError(f"{self.name}: associativity fails on {self.labels[i]!r}, "
                                 f"{self.labels[j]!r}, {self.labels[k]!r}")
        self.checks["associativity"] = mode


class TensorAlgebra(FiniteAlgebra):
    """G tensor H with basis pairs (g, h) ordered lexicographically."""

    def __init__(self, G: FiniteAlgebra, H: FiniteAlgebra, check: bool = True,
                 max_dim: int = TENSOR_MAX_DIM):
        if G.field != H.field:
            raise FieldMismatchError(f"{G.field} vs {H.field}")
        if G.dim * H.dim > max_dim:
            raise GuardError(f"tensor dimension {G.dim * H.dim} exceeds guard {max_dim}")
        self.G, self.H = G, H
        dh = H.dim
        self._dh = dh
        labels = [(g, h) for g in G.labels for h in H.labels]
        unit = self.pure(G.unit, H.unit, _fields=(G, H))
        gens = [self.pure(g, H.unit, _fields=(G, H)) for g in G.generators]
        # factor tables are memoized, so the pair products are recomposed
        super().__init__(labels, self._product, G.field, unit,
                         name=f"({G.name})x({H.name})", generators=gens, memo=False, check=check)

    def _product(self, i: int, j: int):
        dh = self._dh
        gi, hi = divmod(i, dh)
        gj, hj = divmod(j, dh)
        g = self.G.basis_product(gi, gj)
        h = self.H.basis_product(hi, hj)
        if self.packed:
            if not h:
                return 0
            out = 0
            while g:
                low = g & -g
                out |= h << ((low.bit_length() - 1) * dh)
                g ^= low
            return out
        return self.pure(g, h)

    def pure(self, g, h, _fields=None):
        """The element g (x) h."""
        G, H = _fields if _fields else (self.G, self.H)
        dh = H.dim
        if G.field.p == 2:
            out = 0
            for a in _bits(g):
                out |= h << (a * dh)
            return out
        f = G.field
        out = {}
        for a, ca in g.items():
            base = a * dh
            for b, cb in h.items():
                out[base + b] = f.mul(ca, cb)
        return out

    def pure_commutator(self, gs: Sequence, hs: Sequence):
        """[g1 (x) h1, ..., gn (x) hn] by bilinear expansion in the factors.

        Keeps the 2^(n-1) pure terms separate and only forms tensor vectors at
        the end; much cheaper than multiplying dense vectors of G (x) H.
        """
        G, H = self.G, self.H
        one = G.field.one
        terms = [(gs[0], hs[0], one)]
        for g, h in zip(gs[1:], hs[1:]):
            nxt = []
            for a, b, c in terms:
                nxt.append((G.mul(a, g), H.mul(b, h), c))
                nxt.append((G.mul(g, a), H.mul(h, b), G.field.neg(c)))
            terms = nxt
        acc = self.zero()
        for a, b, c in terms:
            acc = self.add(acc, self.scale(c, self.pure(a, b)))
        return acc

    def left(self, g):
        return self.pure(g, self.H.unit)

    def right(self, h):
        return self.pure(self.G.unit, h)


def tensor(G: FiniteAlgebra, H: FiniteAlgebra, check: bool = True) -> TensorAlgebra:
    return TensorAlgebra(G, H, check=check)


def field_algebra(field: FieldSpec) -> FiniteAlgebra:
    """The ground field as a 1-dimensional algebra."""
    one = 1 if field.p == 2 else {0: field.one}
    return FiniteAlgebra([()], lambda i, j: one, field, one, name="F")


@dataclass
class LieChain:
    """dims[k-1] = dim L_k, L_1 = A, L_{k+1} = [L_k, A]."""

    dims: list[int]
    limit: int
    reached_zero: bool = dc_field(default=False)

    @property
    def class_bound(self) -> int | None:
        """Nilpotency class (first zero index minus 1), if the chain hit zero."""
        if not self.reached_zero:
            return None
        return len(self.dims) - 1

    def vanishes_at(self, n: int) -> bool:
        """True iff L_n = 0 is certified by the computed chain."""
        return self.reached_zero and len(self.dims) <= n


def lie_chain(A: FiniteAlgebra, limit: int, budget: int = LIE_WORK_BUDGET) -> LieChain:
    """Dimensions of the lower central chain L_1 = A, L_{k+1} = span [L_k, A].

    L_n is the span of all left-normed commutators of length n, so L_n = 0
    iff T^(n)(A) = 0.  Each level is spanned by the commutators that grew the
    rank of the previous level; those stay sparse, unlike echelon rows.
    """
    if limit < 1:
        raise UsageError("limit must be >= 1")
    d = A.dim
    if d * d * limit > budget:
        raise GuardError(f"lie_chain work dim^2*limit = {d * d * limit} exceeds budget {budget}")
    dims = [d]
    if d == 0:
        return LieChain(dims, limit, True)
    level = [A.basis(i) for i in range(d)]
    first = True
    while len(dims) < limit:
        ech = A.echelon()
        nxt = []
        for vi, v in enumerate(level):
            # [b_i, b_j] = -[b_j, b_i]: on L_1 only pairs i < j are needed
            start = vi + 1 if first else 0
            for j in range(start, d):
                c = A.bracket_basis(v, j)
                if c and ech.insert(c):
                    nxt.append(c)
        first = False
        dims.append(ech.rank)
        if ech.rank == 0:
            return LieChain(dims, limit, True)
        level = nxt
    return LieChain(dims, limit, False)


def nilpotency_class_at_most(A: FiniteAlgebra, c: int) -> bool:
    """L_{c+1}(A) = 0, cached per algebra."""
    if c in A._class_cache:
        return A._class_cache[c]
    ch = lie_chain(A, c + 1)
    ok = ch.vanishes_at(c + 1)
    A._class_cache[c] = ok
    return ok
