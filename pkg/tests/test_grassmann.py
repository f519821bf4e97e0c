from __future__ import annotations

import random
from itertools import permutations

import pytest

from oracles import grassmann_sign_oracle
from tprod.algcore import lie_chain
from tprod.errors import GuardError, PreconditionError, UsageError
from tprod.grassmann import (
    GrassmannElement,
    as_finite_algebra,
    bracket,
    case1_witness,
    commutator,
    index_sets,
    mono_mul,
    monomials,
    perm_sign,
)
from tprod.scalar import GF2, QQ, FieldSpec


def test_mono_mul_examples():
    assert mono_mul((1,), (2,)) == (1, (1, 2))
    assert mono_mul((2,), (1,)) == (-1, (1, 2))
    assert mono_mul((1,), (1,))[0] == 0


@pytest.mark.parametrize("s", range(5))
def test_sign_oracle_exhaustive(s):
    for a in monomials(s):
        for b in monomials(s):
            assert mono_mul(a, b) == grassmann_sign_oracle(a, b)


def test_parity_grading():
    for a in monomials(4):
        for b in monomials(4):
            sign, m = mono_mul(a, b)
            assert sign == 0 or len(m) == len(a) + len(b)


@pytest.mark.parametrize("s", range(6))
def test_even_monomials_central(s):
    A = as_finite_algebra(s)
    for i, m in enumerate(A.labels):
        if len(m) % 2 == 0:
            for j in range(A.dim):
                assert not A.bracket(A.basis(i), A.basis(j))


def test_finite_algebra_examples():
    assert as_finite_algebra(0).dim == 1
    E2 = as_finite_algebra(2)
    e1, e2 = E2.generators
    assert E2.bracket(e1, e2) == E2.scale(2, E2.element({(1, 2): 1}))
    E3 = as_finite_algebra(3)
    assert not E3.commutator(*E3.generators)


def test_element_class():
    e1, e2, e3 = (GrassmannElement.gen(i, 3) for i in (1, 2, 3))
    assert e1 * e2 == -(e2 * e1)
    assert not (e1 * e1).terms
    assert bracket(e1, e2) == GrassmannElement({(1, 2): 2}, 3)
    assert not commutator(e1 + e2, e2 * e3, e3).terms
    with pytest.raises(UsageError):
        GrassmannElement({(2, 1): 1}, 3)


@pytest.mark.parametrize("r", [2, 4])
def test_commutator_products_vanish(r):
    """(r+2)/2 commutators of random elements of E_r multiply to zero."""
    A = as_finite_algebra(r)
    rng = random.Random(r)
    n = (r + 2) // 2
    for _ in range(20):
        cs = [A.bracket(A.random_element(rng), A.random_element(rng)) for _ in range(n)]
        assert not A.prod(*cs)
    # one fewer commutator does not vanish in general
    cs = [A.bracket(A.generators[2 * i], A.generators[2 * i + 1]) for i in range(r // 2)]
    assert A.prod(*cs)


def test_guard():
    with pytest.raises(GuardError):
        as_finite_algebra(14)


def test_index_sets():
    P, Pp = index_sets((2, 3))
    assert P == [(1, 1), (1, 2), (2, 1), (2, 2), (2, 3)]
    assert Pp == [(2, 2), (2, 3)]
    assert index_sets((4,))[1] == [(1, 2), (1, 3)]


def test_perm_sign():
    assert perm_sign([1, 2, 3]) == 0
    assert perm_sign([2, 1, 3]) == 1
    assert perm_sign([3, 1, 2]) == 0


@pytest.mark.parametrize("m,coeff,top_h", [((2,), 2, ()), ((2, 2), 4, ()), ((2, 3), 8, (1, 2)),
                                           ((4,), 8, (1, 2))])
def test_case1_examples(m, coeff, top_h):
    rep = case1_witness(m)
    N = sum(m)
    assert rep.product == {(tuple(range(1, N + 1)), top_h): QQ(coeff)}
    assert rep.match and rep.lie_bound_certified


def test_case1_over_f5():
    rep = case1_witness((2, 3), FieldSpec(5))
    assert rep.match and rep.nonzero  # 8 = 3 mod 5


def test_case1_vanishes_mod_small_primes_only_through_coefficient():
    # 2^(N_k - 1) = 8 survives mod 3 as well
    assert case1_witness((2, 2), FieldSpec(3)).nonzero


@pytest.mark.parametrize("m", [(2, 3), (3, 2)])
def test_case1_relabelings_change_sign(m):
    P, Pp = index_sets(m)
    rng = random.Random(3)
    for _ in range(4):
        mu = rng.sample(P, len(P))
        mup = rng.sample(Pp, len(Pp))
        rep = case1_witness(m, mu=mu, mu_prime=mup, chain=False)
        assert rep.match
        (coeff,) = rep.product.values()
        assert coeff == (-1) ** (rep.delta + rep.delta_prime) * 2 ** (rep.N_k - 1)


def test_case1_relabeling_all_orders_small():
    P, _ = index_sets((2, 2))
    signs = set()
    for mu in permutations(P):
        rep = case1_witness((2, 2), mu=list(mu), chain=False)
        assert rep.match
        signs.add(rep.delta)
    assert signs == {0, 1}


def test_case1_preconditions():
    with pytest.raises(PreconditionError):
        case1_witness((2, 2), GF2)
    with pytest.raises(UsageError):
        case1_witness((2, 2), mu=[(1, 1)])


def test_case1_chain_matches_direct():
    rep = case1_witness((2, 3))
    assert rep.chain.dims == [128, 77, 26, 5, 0]
    E = as_finite_algebra(4)
    assert lie_chain(E, 3).dims == [16, 7, 0]
