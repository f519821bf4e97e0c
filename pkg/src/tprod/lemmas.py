"""Commutator identities in G (x) H for G, H Lie nilpotent of class <= 2.

Both sides of each identity are linear in every g_i and every h_i, so
checking them on the generators of the relatively free algebra
F<X>/T^(3) (truncated to multilinear degree) covers every admissible pair
G, H: each is a homomorphic image of that model.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .algcore import DEFAULT_SEED, FiniteAlgebra, TensorAlgebra, nilpotency_class_at_most, tensor
from .errors import PreconditionError, UsageError


@dataclass
class IdentityReport:
    name: str
    length: int
    mode: str
    trials: int
    seed: int
    holds: bool
    failures: int = 0
    nonzero: int = 0  # trials whose left-hand side was not zero


def _pairs(A: FiniteAlgebra, xs: list, pairs) -> list:
    return [A.bracket(xs[a - 1], xs[b - 1]) for a, b in pairs]


def lemma_cl_rhs(A: TensorAlgebra, gs: list, hs: list):
    """Closed form for [g1 (x) h1, ..., g_l (x) h_l] (1-indexed lists)."""
    G, H = A.G, A.H
    ell = len(gs)
    if ell < 2:
        raise UsageError("length must be >= 2")
    g = lambda i: gs[i - 1]  # noqa: E731
    h = lambda i: hs[i - 1]  # noqa: E731
    if ell == 2:
        t1 = A.pure(G.bracket(g(1), g(2)), H.mul(h(1), h(2)))
        t2 = A.pure(G.mul(g(2), g(1)), H.bracket(h(1), h(2)))
        return A.add(t1, t2)
    n, odd = divmod(ell, 2)
    g_pairs = G.prod(*_pairs(G, gs, [(2 * s - 1, 2 * s) for s in range(1, n + 1)]))
    h_pairs = H.prod(*_pairs(H, hs, [(2 * s - 1, 2 * s) for s in range(1, n + 1)]))
    h_lead = H.bracket(H.mul(h(1), h(2)), h(3))
    g_lead = G.bracket(G.mul(g(2), g(1)), g(3))
    if not odd:
        mid = range(2, n)  # pairs (2s, 2s+1)
        h_tail = H.prod(h_lead, *_pairs(H, hs, [(2 * s, 2 * s + 1) for s in mid]), h(2 * n))
        g_tail = G.prod(g_lead, *_pairs(G, gs, [(2 * s, 2 * s + 1) for s in mid]), g(2 * n))
        return A.add(A.pure(g_pairs, h_tail), A.pure(g_tail, h_pairs))
    mid = range(2, n + 1)
    h_tail = H.prod(h_lead, *_pairs(H, hs, [(2 * s, 2 * s + 1) for s in mid]))
    g_tail = G.prod(g_lead, *_pairs(G, gs, [(2 * s, 2 * s + 1) for s in mid]))
    return A.add(A.pure(G.mul(g_pairs, g(2 * n + 1)), h_tail),
                 A.pure(g_tail, H.mul(h_pairs, h(2 * n + 1))))


def _require_class2(*algs: FiniteAlgebra):
    for X in algs:
        if not nilpotency_class_at_most(X, 2):
            raise PreconditionError(f"{X.name} is not Lie nilpotent of class <= 2")


def _sample(X: FiniteAlgebra, count: int, mode: str, rng: random.Random, first: bool) -> list:
    if mode == "generators":
        if first:
            if len(X.generators) < count:
                raise UsageError(f"{X.name} has only {len(X.generators)} generators, need {count}")
            return X.generators[:count]
        pool = X.generators + [X.unit]
        return [rng.choice(pool) for _ in range(count)]
    if mode == "random":
        return [X.random_element(rng) for _ in range(count)]
    raise UsageError(f"unknown mode {mode!r}")


def _lhs(A: TensorAlgebra, gs, hs, mode: str):
    # random elements are dense; multiplying them inside G (x) H is quadratic
    # in dim G * dim H, so expand over pure tensors instead
    if mode == "random":
        return A.pure_commutator(gs, hs)
    return A.commutator(*[A.pure(g, h) for g, h in zip(gs, hs)])


def check_lemma_cl(G: FiniteAlgebra, H: FiniteAlgebra, length: int, trials: int = 1,
                   mode: str = "generators", seed: int = DEFAULT_SEED,
                   A: TensorAlgebra | None = None) -> IdentityReport:
    """Compare [g1(x)h1, ..., g_l(x)h_l] with its closed form.

    In ``generators`` mode the first trial uses the distinct generators
    g_i = G.generators[i], h_i = H.generators[i]; later trials draw
    generator tuples (with repeats and the unit) at random.
    """
    if length < 2:
        raise UsageError("length must be >= 2")
    _require_class2(G, H)
    A = A or tensor(G, H, check=False)
    rng = random.Random(seed)
    failures = nonzero = 0
    for t in range(trials):
        gs = _sample(G, length, mode, rng, t == 0)
        hs = _sample(H, length, mode, rng, t == 0)
        lhs = _lhs(A, gs, hs, mode)
        nonzero += bool(lhs)
        if lhs != lemma_cl_rhs(A, gs, hs):
            failures += 1
    return IdentityReport("lemma-cl", length, mode, trials, seed, failures == 0, failures, nonzero)


def nilp2_even_rhs(A: TensorAlgebra, gs: list, hs: list):
    G, H = A.G, A.H
    mp = len(gs) // 2
    gp = G.prod(*_pairs(G, gs, [(2 * s - 1, 2 * s) for s in range(1, mp + 1)]))
    hp = H.prod(*_pairs(H, hs, [(2 * s, 2 * s + 1) for s in range(1, mp)]))
    return A.pure(gp, hp)


def nilp2_odd_rhs(A: TensorAlgebra, gs: list, hs: list):
    G, H = A.G, A.H
    n = len(gs) // 2
    gp = G.prod(*_pairs(G, gs, [(2 * s - 1, 2 * s) for s in range(1, n + 1)]), gs[-1])
    hp = H.prod(*_pairs(H, hs, [(2 * s, 2 * s + 1) for s in range(1, n + 1)]))
    return A.pure(gp, hp)


def check_corollary_nilp2(G: FiniteAlgebra, H: FiniteAlgebra, lengths=(2, 3), trials: int = 100,
                          mode: str = "random", seed: int = DEFAULT_SEED,
                          A: TensorAlgebra | None = None) -> list[IdentityReport]:
    """Check the two product formulas for commutators whose first (and, for
    even length, last) entry has trivial H-component."""
    _require_class2(G, H)
    A = A or tensor(G, H, check=False)
    out = []
    for length in lengths:
        if length < 2:
            raise UsageError("length must be >= 2")
        rng = random.Random(seed + length)
        failures = nonzero = 0
        for t in range(trials):
            gs = _sample(G, length, mode, rng, t == 0)
            even = length % 2 == 0
            # only the middle entries carry an H-component
            mid = _sample(H, length - 2 if even else length - 1, mode, rng, t == 0)
            hs = [H.unit] + list(mid) + ([H.unit] if even else [])
            rhs = nilp2_even_rhs(A, gs, hs) if even else nilp2_odd_rhs(A, gs, hs)
            lhs = _lhs(A, gs, hs, mode)
            nonzero += bool(lhs)
            if lhs != rhs:
                failures += 1
        name = "nilp2-even" if length % 2 == 0 else "nilp2-odd"
        out.append(IdentityReport(name, length, mode, trials, seed + length, failures == 0,
                                  failures, nonzero))
    return out
