"""The class-2 group G_r, its group algebra over GF(2), the ideal I_r and
the characteristic 2 witness.

G_r = < y_1..y_r | y_i^2 = 1, ((y_i, y_j), y_k) = 1 > with (a, b) = a^-1 b^-1 a b.
Every element has the unique normal form y_{i1}...y_{iq} * (product of
distinct commutators (y_j, y_l), j < l), which we pack into an int *code*:
bit i-1 for y_i, then one bit per pair (j, l) in lexicographic order.

Group algebra elements are packed ints over codes.  The ideal is stored in
a :class:`BitEchelon` whose key order lists codes from largest to smallest,
so pivots are the "heaviest" group elements and the identity always
survives as a coset representative.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product as iproduct
from typing import Sequence

from .algcore import FiniteAlgebra, LieChain, lie_chain, tensor
from .errors import GuardError, PreconditionError, UsageError
from .exactlin import BitEchelon
from .scalar import FieldSpec

MAX_RANK = 4
MAX_RANK_OVERRIDE = 5


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


class GroupTables:
    """Multiplication data for G_r (cached per r)."""

    def __init__(self, r: int):
        if r < 0:
            raise UsageError("r must be >= 0")
        self.r = r
        self.pairs = list(combinations(range(1, r + 1), 2))
        self.pair_bit = {p: 1 << k for k, p in enumerate(self.pairs)}
        self.order = 1 << (r + len(self.pairs))
        gmask = (1 << r) - 1
        self.gmask = gmask
        # toggles[j][a] = commutator bits produced when y_j (from the right
        # factor) moves left past the generators of mask a that exceed j
        self.toggles = []
        for j in range(1, r + 1):
            row = []
            for a in range(1 << r):
                t = 0
                for i in range(j + 1, r + 1):
                    if a >> (i - 1) & 1:
                        t ^= self.pair_bit[(j, i)]
                row.append(t)
            self.toggles.append(row)

    def mul(self, a: int, b: int) -> int:
        r = self.r
        ag, bg = a & self.gmask, b & self.gmask
        t = (a ^ b) >> r
        tog = self.toggles
        x = bg
        while x:
            low = x & -x
            t ^= tog[low.bit_length() - 1][ag]
            x ^= low
        return (ag ^ bg) | (t << r)

    def gen(self, i: int) -> int:
        if not 1 <= i <= self.r:
            raise UsageError(f"generator y_{i} out of range 1..{self.r}")
        return 1 << (i - 1)

    def comm_code(self, i: int, j: int) -> int:
        """Code of (y_i, y_j); 0 (identity) when i == j."""
        if i == j:
            return 0
        p = (min(i, j), max(i, j))
        return self.pair_bit[p] << self.r

    def inverse(self, a: int) -> int:
        # exponent of G_r divides 4
        a2 = self.mul(a, a)
        return self.mul(a2, a)

    def commutator(self, a: int, b: int) -> int:
        return self.mul(self.mul(self.inverse(a), self.inverse(b)), self.mul(a, b))


@lru_cache(maxsize=None)
def tables(r: int) -> GroupTables:
    return GroupTables(r)


@dataclass(frozen=True, order=True)
class GroupElement:
    """Normal form y_{gens...} * prod of commutators (j, l) in ``comms``."""

    r: int
    gens: tuple = ()
    comms: tuple = ()

    def __post_init__(self):
        if list(self.gens) != sorted(set(self.gens)) or any(not 1 <= i <= self.r for i in self.gens):
            raise UsageError(f"gens {self.gens} must be increasing within 1..{self.r}")
        object.__setattr__(self, "comms", tuple(sorted(set(map(tuple, self.comms)))))
        for j, l in self.comms:
            if not 1 <= j < l <= self.r:
                raise UsageError(f"bad commutator pair {(j, l)}")

    @property
    def code(self) -> int:
        T = tables(self.r)
        g = sum(1 << (i - 1) for i in self.gens)
        c = 0
        for p in self.comms:
            c |= T.pair_bit[p]
        return g | (c << self.r)

    @classmethod
    def from_code(cls, r: int, code: int) -> GroupElement:
        T = tables(r)
        gens = tuple(i + 1 for i in _bits(code & T.gmask))
        comms = tuple(T.pairs[k] for k in _bits(code >> r))
        return cls(r, gens, comms)

    @classmethod
    def y(cls, i: int, r: int) -> GroupElement:
        return cls(r, (i,))

    def __mul__(self, other: GroupElement) -> GroupElement:
        if other.r != self.r:
            raise UsageError(f"rank mismatch {self.r} vs {other.r}")
        return GroupElement.from_code(self.r, tables(self.r).mul(self.code, other.code))

    def inverse(self) -> GroupElement:
        return GroupElement.from_code(self.r, tables(self.r).inverse(self.code))

    def __str__(self):
        parts = [f"y{i}" for i in self.gens] + [f"(y{j},y{l})" for j, l in self.comms]
        return "*".join(parts) or "1"


def group_mul(a: GroupElement, b: GroupElement) -> GroupElement:
    return a * b


def group_commutator(a: GroupElement, b: GroupElement) -> GroupElement:
    """(a, b) = a^-1 b^-1 a b."""
    return GroupElement.from_code(a.r, tables(a.r).commutator(a.code, b.code))


def elements(r: int) -> list[GroupElement]:
    return [GroupElement.from_code(r, c) for c in range(tables(r).order)]


class GroupAlgebraElement:
    """Element of GF(2)[G_r]: a packed int over group codes."""

    __slots__ = ("r", "bits")

    def __init__(self, r: int, bits: int = 0):
        self.r = r
        self.bits = bits

    @classmethod
    def of(cls, *gs: GroupElement) -> GroupAlgebraElement:
        r = gs[0].r
        x = 0
        for g in gs:
            x ^= 1 << g.code
        return cls(r, x)

    @classmethod
    def one(cls, r: int) -> GroupAlgebraElement:
        return cls(r, 1)

    def support(self) -> list[GroupElement]:
        return [GroupElement.from_code(self.r, c) for c in _bits(self.bits)]

    def _check(self, other):
        if other.r != self.r:
            raise UsageError(f"rank mismatch {self.r} vs {other.r}")

    def __add__(self, other):
        self._check(other)
        return GroupAlgebraElement(self.r, self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other):
        self._check(other)
        mul = tables(self.r).mul
        acc = 0
        bs = list(_bits(other.bits))
        for a in _bits(self.bits):
            for b in bs:
                acc ^= 1 << mul(a, b)
        return GroupAlgebraElement(self.r, acc)

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.r == other.r and self.bits == other.bits

    def __hash__(self):
        return hash((self.r, self.bits))

    def __bool__(self):
        return bool(self.bits)

    def __len__(self):
        return bin(self.bits).count("1")

    def __repr__(self):
        return " + ".join(str(g) for g in self.support()) or "0"


def bracket(a: GroupAlgebraElement, b: GroupAlgebraElement) -> GroupAlgebraElement:
    return a * b + b * a


def d(i: int, j: int, r: int) -> GroupAlgebraElement:
    """d_ij = (y_i, y_j) + 1; zero when i == j."""
    if not (1 <= i <= r and 1 <= j <= r):
        raise UsageError(f"indices ({i}, {j}) out of range 1..{r}")
    if i == j:
        return GroupAlgebraElement(r, 0)
    return GroupAlgebraElement(r, (1 << tables(r).comm_code(i, j)) | 1)


def s_generators(r: int) -> list[GroupAlgebraElement]:
    """Distinct nonzero d_{i1 i2} d_{i3 i4} + d_{i1 i3} d_{i2 i4}, indices in 1..r."""
    seen = {}
    for i1, i2, i3, i4 in iproduct(range(1, r + 1), repeat=4):
        s = d(i1, i2, r) * d(i3, i4, r) + d(i1, i3, r) * d(i2, i4, r)
        if s and s.bits not in seen:
            seen[s.bits] = s
    return [seen[k] for k in sorted(seen)]


def _check_rank(r: int, max_rank: int | None):
    limit = MAX_RANK if max_rank is None else max_rank
    if r < 0:
        raise UsageError("r must be >= 0")
    if r > limit:
        raise GuardError(f"rank {r} exceeds guard {limit} (|G_r| = 2^{r + r * (r - 1) // 2})")


class IdealIr:
    """The ideal I_r of GF(2)[G_r] generated by the S-relations on y_1..y_r.

    Internally vectors are bit-reversed (position = order - 1 - code) so
    that the echelon pivot is the largest code of each row.
    """

    def __init__(self, r: int, basis: BitEchelon):
        self.r = r
        self.order = tables(r).order
        self.basis = basis

    @property
    def dim(self) -> int:
        return self.basis.rank

    def to_pos(self, bits: int) -> int:
        n = self.order
        return int(format(bits, f"0{n}b")[::-1], 2)

    to_code = to_pos  # reversal is an involution

    def reduce(self, u: GroupAlgebraElement) -> GroupAlgebraElement:
        return GroupAlgebraElement(self.r, self.to_code(self.basis.reduce_packed(self.to_pos(u.bits))))

    def contains(self, u: GroupAlgebraElement) -> bool:
        return not self.basis.reduce_packed(self.to_pos(u.bits))

    __contains__ = contains

    def pivot_codes(self) -> set[int]:
        n = self.order
        return {n - 1 - (b.bit_length() - 1) for b in self.basis._rows}


def _left_perm(r: int) -> list[list[int]]:
    """perm[i][c] = code of y_{i+1} * g_c."""
    T = tables(r)
    return [[T.mul(T.gen(i), c) for c in range(T.order)] for i in range(1, r + 1)]


_IDEAL_CACHE: dict = {}


def build_ideal(r: int, max_rank: int | None = None) -> IdealIr:
    """Span of g * s (g in G_r, s in S_r), computed as the closure of S_r
    under left multiplication by y_1..y_r (the y_i generate G_r as a monoid
    and the d_ij are central, so this is the two-sided ideal)."""
    _check_rank(r, max_rank)
    if r in _IDEAL_CACHE:
        return _IDEAL_CACHE[r]
    T = tables(r)
    n = T.order
    basis = BitEchelon(n)
    ideal = IdealIr(r, basis)
    perms = _left_perm(r)
    # work in code space, insert in position space
    work = [s.bits for s in s_generators(r)]
    while work:
        v = work.pop()
        if not basis.insert(ideal.to_pos(v)):
            continue
        for p in perms:
            w = 0
            for c in _bits(v):
                w |= 1 << p[c]
            work.append(w)
    basis.freeze()
    _IDEAL_CACHE[r] = ideal
    return ideal


@dataclass
class GroupQuotient:
    """F G_r / I_r together with the reduction data used to build it."""

    r: int
    ideal: IdealIr
    reps: list  # coset representative codes, in basis order
    nf: list  # nf[code] = packed quotient vector of g_code + I_r
    algebra: FiniteAlgebra

    def image(self, u: GroupAlgebraElement) -> int:
        x = 0
        for c in _bits(u.bits):
            x ^= self.nf[c]
        return x

    def y(self, i: int) -> int:
        return self.nf[tables(self.r).gen(i)]


_QUOT_CACHE: dict = {}


def group_quotient(r: int, max_rank: int | None = None) -> GroupQuotient:
    _check_rank(r, max_rank)
    if r in _QUOT_CACHE:
        return _QUOT_CACHE[r]
    T = tables(r)
    ideal = build_ideal(r, max_rank)
    pivots = ideal.pivot_codes()
    reps = [c for c in range(T.order) if c not in pivots]
    qpos = {c: k for k, c in enumerate(reps)}
    nf = []
    for c in range(T.order):
        red = ideal.reduce(GroupAlgebraElement(r, 1 << c)).bits
        x = 0
        for cc in _bits(red):
            x |= 1 << qpos[cc]
        nf.append(x)
    mul = T.mul

    def product(i, j):
        return nf[mul(reps[i], reps[j])]

    labels = [GroupElement.from_code(r, c) for c in reps]
    gens = [nf[T.gen(i)] for i in range(1, r + 1)]
    A = FiniteAlgebra(labels, product, FieldSpec(2), nf[0], name=f"FG_{r}/I_{r}",
                      generators=gens, check=True)
    q = GroupQuotient(r, ideal, reps, nf, A)
    _QUOT_CACHE[r] = q
    return q


def quotient_algebra(r: int, max_rank: int | None = None) -> FiniteAlgebra:
    return group_quotient(r, max_rank).algebra


def check_lemma_nilp22(r: int, trials: int = 100, seed: int = 0, max_rank: int | None = None,
                       terms: int | None = None) -> bool:
    """[u1, u2, u3] lies in I_r for random u_i in GF(2)[G_r].

    With ``terms`` set, each u_i is a sum of that many random group elements
    instead of a dense random vector; the identity is trilinear, so sparse
    samples probe the same statement at a fraction of the cost.
    """
    ideal = build_ideal(r, max_rank)
    rng = random.Random(seed)
    n = tables(r).order

    def sample() -> GroupAlgebraElement:
        if terms is None:
            return GroupAlgebraElement(r, rng.getrandbits(n))
        bits = 0
        for _ in range(terms):
            bits ^= 1 << rng.randrange(n)
        return GroupAlgebraElement(r, bits)

    for _ in range(trials):
        u = [sample() for _ in range(3)]
        c = bracket(bracket(u[0], u[1]), u[2])
        if c not in ideal:
            return False
    return True


@dataclass
class Case2Report:
    m: tuple
    N: int
    k: int
    ell: int
    r: int
    N_kl: int
    dims: tuple
    product_nonzero: bool
    form_match: bool
    product_terms: int
    chain: LieChain

    @property
    def lie_bound_certified(self) -> bool:
        return self.chain.vanishes_at(1 + self.N_kl)


def case2_witness(m: Sequence[int], field: FieldSpec = FieldSpec(2), max_rank: int | None = None,
                  chain: bool = True) -> Case2Report:
    """Witness in A = (F G_N / I_N) (x) (F G_r / I_r) over GF(2)."""
    from .grassmann import index_sets
    from .verifier.params import params

    if field.characteristic() != 2:
        raise PreconditionError("the group-algebra witness needs characteristic 2")
    if field.p != 2:
        raise UsageError("only GF(2) is supported")
    m = tuple(m)
    pr = params(m)
    limit = MAX_RANK if max_rank is None else max_rank
    if pr.N > limit:
        raise GuardError(f"sum(m) = {pr.N} exceeds guard {limit}")
    P, Pp = index_sets(m)
    mu = {pq: n for n, pq in enumerate(P, 1)}
    mup = {pq: n for n, pq in enumerate(Pp, 1)}
    Gq = group_quotient(pr.N, max_rank)
    Hq = group_quotient(pr.r, max_rank)
    G, H = Gq.algebra, Hq.algebra
    A = tensor(G, H)

    total = A.unit
    for i, mi in enumerate(m, 1):
        vs = []
        for j in range(1, mi + 1):
            h = Hq.y(mup[(i, j)]) if (i, j) in mup else H.unit
            vs.append(A.pure(Gq.y(mu[(i, j)]), h))
        total = A.mul(total, A.commutator(*vs))

    # closed form  ybar Q (x) ybar' Q'
    TN, Tr = tables(pr.N), tables(pr.r)
    ybar = G.prod(*[Gq.y(mu[pq]) for pq in P])
    Q = G.unit
    Qp = H.unit
    yp = H.unit
    for i, mi in enumerate(m, 1):
        for j in range(1, mi // 2 + 1):
            a, b = mu[(i, 2 * j - 1)], mu[(i, 2 * j)]
            Q = G.mul(Q, Gq.nf[TN.comm_code(a, b)] ^ G.unit)
        mpi = mi - 1 if mi % 2 == 0 else mi
        for j in range(2, mpi + 1):
            yp = H.mul(yp, Hq.y(mup[(i, j)]))
        for j in range(1, (mpi - 1) // 2 + 1):
            a, b = mup[(i, 2 * j)], mup[(i, 2 * j + 1)]
            Qp = H.mul(Qp, Hq.nf[Tr.comm_code(a, b)] ^ H.unit)
    form = A.pure(G.mul(ybar, Q), H.mul(yp, Qp))

    ch = lie_chain(A, 1 + pr.N_kl) if chain else LieChain([A.dim], 1, False)
    return Case2Report(
        m=m, N=pr.N, k=pr.k, ell=pr.ell, r=pr.r, N_kl=pr.N_kl,
        dims=(G.dim, H.dim, A.dim), product_nonzero=bool(total), form_match=total == form,
        product_terms=bin(total).count("1"), chain=ch,
    )
