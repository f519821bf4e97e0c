from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tprod.algcore import FiniteAlgebra, field_algebra, lie_chain, nilpotency_class_at_most, tensor
from tprod.freealg import universal_model
from tprod.grassmann import as_finite_algebra as E
from tprod.scalar import GF2, QQ, FieldSpec


def test_tensor_examples():
    E2 = E(2)
    A = tensor(E2, E2)
    assert A.dim == 16
    e1 = E2.generators[0]
    assert A.mul(A.pure(e1, E2.unit), A.pure(E2.unit, e1)) == A.pure(e1, e1)
    g = E2.add(e1, E2.generators[1])
    assert A.mul(A.unit, A.pure(g, e1)) == A.pure(g, e1)


@pytest.mark.parametrize("s,r", [(0, 0), (1, 2), (2, 2), (3, 1), (2, 3)])
@pytest.mark.parametrize("field", [QQ, GF2])
def test_tensor_dims_and_unit(s, r, field):
    G, H = E(s, field), E(r, field)
    A = tensor(G, H)
    assert A.dim == G.dim * H.dim
    assert A.unit == A.pure(G.unit, H.unit)
    for i in range(A.dim):
        b = A.basis(i)
        assert A.mul(A.unit, b) == b == A.mul(b, A.unit)
    assert A.checks["associativity"] == "exhaustive" or A.dim > 64


def test_pure_tensors_multiply_componentwise():
    rng = random.Random(5)
    G, H = E(3), E(2)
    A = tensor(G, H)
    for _ in range(20):
        g1, g2 = G.random_element(rng), G.random_element(rng)
        h1, h2 = H.random_element(rng), H.random_element(rng)
        assert A.mul(A.pure(g1, h1), A.pure(g2, h2)) == A.pure(G.mul(g1, g2), H.mul(h1, h2))


@given(st.integers(0, 10**6), st.integers(2, 5))
def test_pure_commutator_matches_direct(seed, length):
    rng = random.Random(seed)
    G, H = E(3), E(2)
    A = tensor(G, H)
    gs = [G.random_element(rng, density=0.5) for _ in range(length)]
    hs = [H.random_element(rng, density=0.5) for _ in range(length)]
    direct = A.commutator(*[A.pure(g, h) for g, h in zip(gs, hs)])
    assert A.pure_commutator(gs, hs) == direct


def test_bad_structure_rejected():
    # every product is b1, so b0 is not a unit
    def rule(i, j):
        return {1: QQ.one}

    with pytest.raises(ValueError):
        FiniteAlgebra(["a", "b"], rule, QQ, unit={0: QQ.one})

    # unit 1, a*a = b, b*a = a, everything else 0: (aa)a = a but a(aa) = 0
    def nonassoc(i, j):
        if i == 0 or j == 0:
            return {i + j: QQ.one}
        return {(1, 1): {2: QQ.one}, (2, 1): {1: QQ.one}}.get((i, j), {})

    with pytest.raises(ValueError, match="associativity"):
        FiniteAlgebra(["1", "a", "b"], nonassoc, QQ, unit={0: QQ.one}, name="bad")


def test_chain_examples():
    ch = lie_chain(E(4), 4)
    assert ch.dims[0] == 16 and ch.dims[1] > 0 and ch.vanishes_at(3)
    assert ch.class_bound == 2
    assert lie_chain(field_algebra(QQ), 3).vanishes_at(2)
    assert lie_chain(tensor(E(4), E(2)), 6).vanishes_at(5)


@pytest.mark.parametrize("builder", [
    lambda: E(3), lambda: E(4, GF2), lambda: tensor(E(2), E(2)), lambda: tensor(E(3), E(1)),
    lambda: universal_model(3), lambda: universal_model(3, FieldSpec(3)),
])
def test_chain_shape_and_sharpness(builder):
    A = builder()
    ch = lie_chain(A, 8)
    dims = ch.dims
    assert dims[0] == A.dim
    assert all(a >= b for a, b in zip(dims[1:], dims[2:]))
    assert ch.reached_zero and dims[-1] == 0 and all(dims[:-1])
    c = ch.class_bound
    rng = random.Random(11)
    nonzero = False
    for _ in range(30):
        xs = [A.random_element(rng) for _ in range(c + 1)]
        assert not A.commutator(*xs)
        nonzero |= bool(A.commutator(*xs[:c]))
    assert nonzero or c == 1


def test_class_cache():
    A = E(3)
    assert nilpotency_class_at_most(A, 2)
    assert not nilpotency_class_at_most(A, 1)
    assert A._class_cache == {2: True, 1: False}


def test_to_labels_and_element_roundtrip():
    A = E(3)
    x = A.element({(1,): 2, (1, 3): QQ("1/2")})
    assert A.to_labels(x) == {(1,): 2, (1, 3): QQ("1/2")}
    B = E(3, GF2)
    y = B.element({(2,): 1, (1, 2): 3, (3,): 2})
    assert B.to_labels(y) == {(2,): 1, (1, 2): 1}
