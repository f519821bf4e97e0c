"""Finite Grassmann algebras E_s and the characteristic != 2 witness.

Monomials e_{i1} ... e_{ik} with i1 < ... < ik are stored as increasing
index tuples.  Only e_1..e_N of the infinite Grassmann algebra are ever
touched by a witness on N letters, so E_N (a subalgebra of E) stands in for E.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .algcore import FiniteAlgebra, LieChain, lie_chain, tensor
from .errors import GuardError, PreconditionError, UsageError
from .exactlin import axpy
from .scalar import QQ, FieldMismatchError, FieldSpec

MAX_GENERATORS = 13

Monomial = tuple  # strictly increasing positive ints


def mono_mul(a: Monomial, b: Monomial) -> tuple[int, Monomial]:
    """Product of two monomials as (sign, monomial); sign 0 means the product is 0."""
    if set(a) & set(b):
        return 0, ()
    # merge count: pairs (i in a, j in b) with i > j must be swapped
    swaps = 0
    ia = 0
    for j in b:
        while ia < len(a) and a[ia] < j:
            ia += 1
        swaps += len(a) - ia
    return (-1 if swaps % 2 else 1), tuple(sorted(a + b))


def monomials(s: int) -> list[Monomial]:
    """Basis of E_s, ordered by degree then lexicographically."""
    return [c for k in range(s + 1) for c in combinations(range(1, s + 1), k)]


class GrassmannElement:
    """Element of E_s: map from increasing index tuples to coefficients."""

    __slots__ = ("s", "field", "terms")

    def __init__(self, terms: dict | None = None, s: int = 0, field: FieldSpec = QQ):
        self.s = s
        self.field = field
        self.terms = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if list(m) != sorted(set(m)) or (m and (m[0] < 1 or m[-1] > s)):
                raise UsageError(f"monomial {m} is not increasing within 1..{s}")
            c = field(c)
            if c:
                self.terms[m] = c

    @classmethod
    def gen(cls, i: int, s: int, field: FieldSpec = QQ) -> GrassmannElement:
        return cls({(i,): 1}, s, field)

    @classmethod
    def one(cls, s: int, field: FieldSpec = QQ) -> GrassmannElement:
        return cls({(): 1}, s, field)

    def _new(self, terms: dict) -> GrassmannElement:
        e = GrassmannElement.__new__(GrassmannElement)
        e.s, e.field, e.terms = self.s, self.field, terms
        return e

    def _check(self, other: GrassmannElement):
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        axpy(self.field, t, self.field.one, other.terms)
        return self._new(t)

    def __sub__(self, other):
        self._check(other)
        t = dict(self.terms)
        axpy(self.field, t, self.field.neg(self.field.one), other.terms)
        return self._new(t)

    def __neg__(self):
        f = self.field
        return self._new({m: f.neg(c) for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            f = self.field
            return self._new({m: f.mul(f(other), c) for m, c in self.terms.items() if f.mul(f(other), c)})
        self._check(other)
        f = self.field
        out: dict = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                sign, m = mono_mul(a, b)
                if sign:
                    c = f.mul(ca, cb)
                    axpy(f, out, c if sign > 0 else f.neg(c), {m: f.one})
        e = self._new(out)
        e.s = max(self.s, other.s)
        return e

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, GrassmannElement):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (len(m), m)):
            mono = "*".join(f"e{i}" for i in m) or "1"
            parts.append(f"{self.field.fmt(self.terms[m])}*{mono}")
        return " + ".join(parts)


def bracket(a: GrassmannElement, b: GrassmannElement) -> GrassmannElement:
    return a * b - b * a


def commutator(*xs: GrassmannElement) -> GrassmannElement:
    if not xs:
        raise UsageError("commutator of an empty sequence")
    acc = xs[0]
    for y in xs[1:]:
        acc = bracket(acc, y)
    return acc


def as_finite_algebra(s: int, field: FieldSpec = QQ, check: bool = True,
                      max_generators: int = MAX_GENERATORS) -> FiniteAlgebra:
    """E_s as a 2^s-dimensional FiniteAlgebra on the monomial basis."""
    if s < 0:
        raise UsageError("s must be >= 0")
    if s > max_generators:
        raise GuardError(f"E_{s} has dimension 2^{s}; guard is {max_generators} generators")
    labels = monomials(s)
    index = {m: i for i, m in enumerate(labels)}
    packed = field.p == 2
    minus_one = field.neg(field.one)

    def product(i, j):
        sign, m = mono_mul(labels[i], labels[j])
        if not sign:
            return 0 if packed else {}
        k = index[m]
        if packed:
            return 1 << k
        return {k: field.one if sign > 0 else minus_one}

    unit = 1 if packed else {0: field.one}
    gens = [1 << index[(i,)] if packed else {index[(i,)]: field.one} for i in range(1, s + 1)]
    return FiniteAlgebra(labels, product, field, unit, name=f"E_{s}", generators=gens, check=check)


def perm_sign(seq: Sequence[int]) -> int:
    """Parity (0 or 1) of the permutation that sorts ``seq``."""
    inv = 0
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b]:
                inv += 1
    return inv % 2


def index_sets(m: Sequence[int]) -> tuple[list, list]:
    """P = {(i, j): 1 <= j <= m_i} and P' (the pairs that also get an H-factor),
    both in lexicographic order."""
    P = [(i, j) for i, mi in enumerate(m, 1) for j in range(1, mi + 1)]
    Pp = []
    for i, mi in enumerate(m, 1):
        top = mi - 1 if mi % 2 == 0 else mi
        Pp.extend((i, j) for j in range(2, top + 1))
    return P, Pp


@dataclass
class Case1Report:
    m: tuple
    field: FieldSpec
    N: int  # sum of m_i
    k: int
    ell: int
    r: int
    N_kl: int
    N_k: int
    dims: tuple
    delta: int
    delta_prime: int
    product: dict
    expected: dict
    match: bool
    nonzero: bool
    chain: LieChain

    @property
    def lie_bound_certified(self) -> bool:
        return self.chain.vanishes_at(1 + self.N_kl)


def case1_witness(m: Sequence[int], field: FieldSpec = QQ, mu: Sequence | None = None,
                  mu_prime: Sequence | None = None, chain: bool = True) -> Case1Report:
    """Build v_ij in A = E_N (x) E_r, evaluate the product of commutators and
    compare with (-1)^(delta+delta') 2^(N_k - 1) e_1...e_N (x) e_1...e_r.

    ``mu`` / ``mu_prime`` optionally list P / P' in the order of their images
    1, 2, ...; the default is lexicographic, which makes both signs +1.
    """
    from .verifier.params import params

    m = tuple(m)
    if field.characteristic() == 2:
        raise PreconditionError("the Grassmann witness needs characteristic != 2")
    pr = params(m)
    P, Pp = index_sets(m)
    if len(Pp) != pr.r:
        raise AssertionError(f"|P'| = {len(Pp)} but r = {pr.r}")
    order = list(mu) if mu is not None else P
    order_p = list(mu_prime) if mu_prime is not None else Pp
    if sorted(order) != sorted(P) or sorted(order_p) != sorted(Pp):
        raise UsageError("mu and mu_prime must enumerate P and P'")
    mu_map = {pq: n for n, pq in enumerate(order, 1)}
    mup_map = {pq: n for n, pq in enumerate(order_p, 1)}
    delta = perm_sign([mu_map[pq] for pq in P])
    delta_p = perm_sign([mup_map[pq] for pq in Pp])

    G = as_finite_algebra(pr.N, field)
    H = as_finite_algebra(pr.r, field)
    A = tensor(G, H)
    gen = lambda X, n: X.generators[n - 1]  # noqa: E731
    total = A.unit
    for i, mi in enumerate(m, 1):
        vs = []
        for j in range(1, mi + 1):
            g = gen(G, mu_map[(i, j)])
            h = gen(H, mup_map[(i, j)]) if (i, j) in mup_map else H.unit
            vs.append(A.pure(g, h))
        total = A.mul(total, A.commutator(*vs))

    coeff = field.mul(field(2 ** (pr.N_k - 1)), field.one if (delta + delta_p) % 2 == 0 else field.neg(field.one))
    top_g = G.index[tuple(range(1, pr.N + 1))]
    top_h = H.index[tuple(range(1, pr.r + 1))]
    expected = A.scale(coeff, A.basis(top_g * H.dim + top_h))
    ch = lie_chain(A, 1 + pr.N_kl) if chain else LieChain([A.dim], 1, False)
    return Case1Report(
        m=m, field=field, N=pr.N, k=pr.k, ell=pr.ell, r=pr.r, N_kl=pr.N_kl, N_k=pr.N_k,
        dims=(G.dim, H.dim, A.dim), delta=delta, delta_prime=delta_p,
        product=A.to_labels(total), expected=A.to_labels(expected),
        match=total == expected, nonzero=bool(total), chain=ch,
    )
