"""Multilinear components of commutator ideals T^(n) and their products.

The degree-``d`` multilinear component P_d of F<X> has the permutations of
(1..d) as a basis.  T^(n) is spanned by the elements u [w1, ..., wn] v with
u, w_i, v monomials, and it is multigraded, so T^(n) cap P_d is spanned by
those elements whose letters form a permutation of 1..d.  Enumerating
"permutation + cut points" lists every such (u, w1, ..., wn, v) exactly once.

Products T^(m1)...T^(mk) are handled the same way: a multilinear element of
the product is a sum of f1 f2 ... fk with f_i multilinear in pairwise
disjoint letter blocks, and f_i in T^(m_i).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterator, Sequence

from ..errors import GuardError, UsageError
from ..exactlin import echelon_basis
from ..scalar import QQ, FieldSpec
from .poly import FreePoly, commutator

DEFAULT_MAX_DEGREE = 7


@dataclass
class Guards:
    max_degree: int = DEFAULT_MAX_DEGREE


GUARDS = Guards()


def _check_degree(d: int, max_degree: int | None):
    limit = GUARDS.max_degree if max_degree is None else max_degree
    if d < 1:
        raise UsageError(f"degree must be >= 1, got {d}")
    if d > limit:
        raise GuardError(f"degree {d} exceeds the guard {limit}; pass a larger max_degree to override")


@lru_cache(maxsize=None)
def perm_words(d: int) -> tuple:
    """Permutations of (1..d) in lexicographic order; position = basis key."""
    return tuple(permutations(range(1, d + 1)))


@lru_cache(maxsize=None)
def perm_index(d: int) -> dict:
    return {w: i for i, w in enumerate(perm_words(d))}


def _compositions(total: int, parts: int, free_ends: bool) -> Iterator[tuple]:
    """Compositions of ``total`` into ``parts`` positive parts, plus (if
    ``free_ends``) a leading and trailing part that may be zero."""
    if free_ends:
        for a in range(total + 1):
            for b in range(total - a + 1):
                for mid in _compositions(total - a - b, parts, False):
                    yield (a,) + mid + (b,)
        return
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1, False):
            yield (first,) + rest


def expand_commutator_words(blocks: Sequence[tuple]) -> list[tuple[tuple, int]]:
    """Terms of [w1, ..., wn] for monomial arguments, as (word, sign) pairs."""
    terms = [(tuple(blocks[0]), 1)]
    for w in blocks[1:]:
        w = tuple(w)
        terms = [(t + w, s) for t, s in terms] + [(w + t, -s) for t, s in terms]
    return terms


def tideal_generators(n: int, letters: Sequence[int]) -> Iterator[dict]:
    """Integer generators of T^(n) cap (multilinear component on ``letters``).

    Yields dicts word -> +-1.  Duplicates (up to sign) are removed.
    """
    letters = tuple(letters)
    d = len(letters)
    seen = set()
    if n == 1:
        for w in permutations(letters):
            yield {w: 1}
        return
    comps = list(_compositions(d, n, True))
    for perm in permutations(letters):
        for comp in comps:
            cuts = []
            pos = 0
            for c in comp:
                cuts.append(perm[pos:pos + c])
                pos += c
            u, blocks, v = cuts[0], cuts[1:-1], cuts[-1]
            terms = expand_commutator_words(blocks)
            gen = {u + w + v: s for w, s in terms}
            key = tuple(sorted(gen.items()))
            if key[0][1] < 0:
                key = tuple((w, -s) for w, s in key)
            if key in seen:
                continue
            seen.add(key)
            yield gen


@dataclass
class MultilinearSpan:
    """A subspace of P_d, stored as an echelon basis over permutation indices."""

    d: int
    field: FieldSpec
    basis: object  # EchelonBasis | BitEchelon
    generators_seen: int = 0
    label: str = ""
    words: tuple = dc_field(init=False, repr=False)

    def __post_init__(self):
        self.words = perm_words(self.d)

    @property
    def rank(self) -> int:
        return self.basis.rank

    @property
    def dim(self) -> int:
        return len(self.words)

    @property
    def codim(self) -> int:
        return self.dim - self.rank

    def vector(self, poly: FreePoly | dict) -> dict:
        terms = poly.terms if isinstance(poly, FreePoly) else poly
        idx = perm_index(self.d)
        f = self.field
        out = {}
        for w, c in terms.items():
            i = idx.get(tuple(w))
            if i is None:
                raise UsageError(f"word {w} is not multilinear of degree {self.d}")
            c = f(c)
            if c:
                out[i] = c
        return out

    def poly(self, vec: dict) -> FreePoly:
        return FreePoly({self.words[i]: c for i, c in vec.items()}, self.field)

    def contains(self, poly: FreePoly | dict) -> bool:
        return self.basis.contains(self.vector(poly))

    __contains__ = contains

    def reduce(self, poly: FreePoly | dict) -> FreePoly:
        return self.poly(self.basis.reduce(self.vector(poly)))

    def basis_polys(self) -> list[FreePoly]:
        return [self.poly(r) for r in self.basis.rows]


def _new_basis(d: int, field: FieldSpec):
    return echelon_basis(field, keys=range(len(perm_words(d))))


_TIDEAL_CACHE: dict = {}


def tideal_multilinear_span(n: int, d: int, field: FieldSpec = QQ,
                            max_degree: int | None = None) -> MultilinearSpan:
    """Echelon basis of T^(n) cap P_d."""
    if n < 1:
        raise UsageError(f"commutator length must be >= 1, got {n}")
    _check_degree(d, max_degree)
    key = (n, d, field)
    if key in _TIDEAL_CACHE:
        return _TIDEAL_CACHE[key]
    span = MultilinearSpan(d, field, _new_basis(d, field), label=f"T^({n})")
    if n == 1:
        span.basis.extend({i: 1} for i in range(len(span.words)))
        span.generators_seen = len(span.words)
    elif n <= d:
        idx = perm_index(d)
        count = 0
        for gen in tideal_generators(n, range(1, d + 1)):
            count += 1
            span.basis.insert({idx[w]: field(s) for w, s in gen.items()})
        span.generators_seen = count
    span.basis.freeze()
    _TIDEAL_CACHE[key] = span
    return span


def _block_elements(m: int, block: tuple, field: FieldSpec) -> list[dict]:
    """Spanning elements of T^(m) multilinear on ``block`` (word -> coeff)."""
    span = tideal_multilinear_span(m, len(block), field, max_degree=len(block))
    words = span.words
    return [
        {tuple(block[i - 1] for i in words[k]): c for k, c in row.items()}
        for row in span.basis.rows
    ]


def ordered_block_splits(d: int, k: int, sizes_min: Sequence[int]) -> Iterator[tuple]:
    """Ordered partitions of {1..d} into k blocks with |B_i| >= sizes_min[i]."""
    letters = tuple(range(1, d + 1))

    def rec(remaining: tuple, i: int):
        if i == k - 1:
            if len(remaining) >= sizes_min[i]:
                yield (remaining,)
            return
        need_after = sum(sizes_min[i + 1:])
        for size in range(sizes_min[i], len(remaining) - need_after + 1):
            for chosen in combinations(remaining, size):
                rest = tuple(a for a in remaining if a not in chosen)
                for tail in rec(rest, i + 1):
                    yield (chosen,) + tail

    yield from rec(letters, 0)


def product_generators(m: Sequence[int], d: int, field: FieldSpec = QQ) -> Iterator[dict]:
    """Products f1...fk with f_i spanning T^(m_i) on disjoint letter blocks."""
    m = tuple(m)
    if not m or any(mi < 1 for mi in m):
        raise UsageError(f"m must be a nonempty sequence of positive integers, got {m}")
    mins = [max(1, mi) for mi in m]
    for blocks in ordered_block_splits(d, len(m), mins):
        factors = [_block_elements(mi, b, field) for mi, b in zip(m, blocks)]
        if any(not f for f in factors):
            continue
        yield from _products(factors, field)


def _products(factors: list[list[dict]], field: FieldSpec) -> Iterator[dict]:
    if len(factors) == 1:
        yield from factors[0]
        return
    for head in factors[0]:
        for tail in _products(factors[1:], field):
            out = {}
            for u, a in head.items():
                for v, b in tail.items():
                    out[u + v] = field.mul(a, b)
            yield out


def product_ideal_multilinear_span(m: Sequence[int], d: int, field: FieldSpec = QQ,
                                   max_degree: int | None = None) -> MultilinearSpan:
    """Echelon basis of (T^(m1)...T^(mk)) cap P_d."""
    _check_degree(d, max_degree)
    span = MultilinearSpan(d, field, _new_basis(d, field), label="*".join(f"T^({mi})" for mi in m))
    count = 0
    for gen in product_generators(m, d, field):
        count += 1
        span.basis.insert(span.vector(gen))
    span.generators_seen = count
    span.basis.freeze()
    return span


@dataclass
class ContainmentReport:
    m: tuple
    target: int
    degree: int
    field: FieldSpec
    holds: bool
    counterexample: FreePoly | None
    target_rank: int
    product_rank: int | None
    generators_checked: int


def verify_containment(m: Sequence[int], target: int, d: int, field: FieldSpec = QQ,
                       max_degree: int | None = None) -> ContainmentReport:
    """Decide T^(m1)...T^(mk) cap P_d subset of T^(target) cap P_d."""
    m = tuple(m)
    _check_degree(d, max_degree)
    tspan = tideal_multilinear_span(target, d, field, max_degree=d)
    checked = 0
    for gen in product_generators(m, d, field):
        checked += 1
        if not tspan.contains(gen):
            return ContainmentReport(m, target, d, field, False, FreePoly(gen, field),
                                     tspan.rank, None, checked)
    return ContainmentReport(m, target, d, field, True, None, tspan.rank, None, checked)


def canonical_witness(m: Sequence[int], field: FieldSpec = QQ) -> FreePoly:
    """[x1..x_{m1}] [x_{m1+1}..] ... on sum(m) distinct letters."""
    out = FreePoly.one(field)
    nxt = 1
    for mi in m:
        args = [FreePoly.var(nxt + j, field) for j in range(mi)]
        nxt += mi
        out = out * commutator(*args)
    return out


@dataclass
class NonContainmentReport:
    m: tuple
    target: int
    field: FieldSpec
    witness: FreePoly
    witness_outside: bool
    target_rank: int
    target_codim: int


def verify_noncontainment(m: Sequence[int], target: int, field: FieldSpec = QQ,
                          max_degree: int | None = None) -> NonContainmentReport:
    """Is the canonical product witness outside T^(target)?"""
    m = tuple(m)
    if not m or any(mi < 1 for mi in m):
        raise UsageError(f"m must be a nonempty sequence of positive integers, got {m}")
    d = sum(m)
    _check_degree(d, max_degree)
    w = canonical_witness(m, field)
    tspan = tideal_multilinear_span(target, d, field, max_degree=d)
    return NonContainmentReport(m, target, field, w, not tspan.contains(w), tspan.rank, tspan.codim)
