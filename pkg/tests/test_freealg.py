from __future__ import annotations

from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import brute_tideal_rank, dense_rank, left_normed
from tprod.errors import GuardError, UsageError
from tprod.freealg import (
    FreePoly,
    ParseError,
    canonical_witness,
    commutator,
    parse,
    product_ideal_multilinear_span,
    tideal_multilinear_span,
    universal_model,
    verify_containment,
    verify_noncontainment,
    x,
)
from tprod.freealg.multilinear import perm_words, tideal_generators
from tprod.scalar import GF2, QQ, FieldSpec

F3 = FieldSpec(3)

words = st.lists(st.integers(1, 3), max_size=3).map(tuple)
polys = st.dictionaries(words, st.integers(-3, 3), max_size=4).map(lambda d: FreePoly(d, QQ))


# arithmetic -----------------------------------------------------------------

def test_product_examples():
    assert (x(1) * x(2)).words() == [(1, 2)]
    assert (x(1) + x(2)) * x(1) == FreePoly({(1, 1): 1, (2, 1): 1})
    p = parse("x1*x2 - 3*x2")
    assert FreePoly.one() * p == p == p * FreePoly.one()


def test_commutator_examples():
    assert commutator(x(1), x(2)) == parse("x1*x2 - x2*x1")
    assert not commutator(x(1), x(1))
    assert commutator(x(1), x(2), x(3)) == parse("x1*x2*x3 - x2*x1*x3 - x3*x1*x2 + x3*x2*x1")
    assert commutator(x(4)) == x(4)
    with pytest.raises(UsageError):
        commutator()


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) - b == a


@given(polys, polys)
def test_commutator_antisymmetric(a, b):
    assert commutator(a, b) == -commutator(b, a)


@given(polys, polys, polys)
def test_jacobi(a, b, c):
    zero = commutator(a, b, c) + commutator(b, c, a) + commutator(c, a, b)
    assert not zero


def test_commutator_matches_textual_oracle():
    ps = [x(i) for i in range(1, 5)]
    assert commutator(*ps) == FreePoly(left_normed(*[{(i,): 1} for i in range(1, 5)]))


def test_mixed_fields_rejected():
    with pytest.raises(ValueError):
        x(1, QQ) + x(1, GF2)


# parser and printer ---------------------------------------------------------

def test_parse_examples():
    assert parse("[x1,x2]*[x3,x4]") == commutator(x(1), x(2)) * commutator(x(3), x(4))
    assert parse("2*x1*x2 - x2*x1") == FreePoly({(1, 2): 2, (2, 1): -1})
    assert parse("[x1,[x2,x3]]") == commutator(x(1), commutator(x(2), x(3)))
    assert parse("-(x1 + 1/2)") == FreePoly({(1,): -1, (): QQ("-1/2")})
    assert parse("2*x1", F3) * 2 == x(1, F3)


@pytest.mark.parametrize("text,pos", [("[x1,[x2", 7), ("x1 +", 4), ("[x1]", 0), ("x1 ? x2", 3),
                                      ("y1", 0), ("", 0), ("x1)", 2)])
def test_parse_errors(text, pos):
    with pytest.raises(ParseError) as e:
        parse(text)
    assert e.value.pos == pos


@given(polys)
def test_print_parse_roundtrip(p):
    assert parse(str(p)) == p
    assert str(parse(str(p))) == str(p)


def test_print_canonical():
    assert str(commutator(x(1), x(2))) == "x1*x2 - x2*x1"
    assert str(FreePoly.zero()) == "0"
    assert str(parse("x2 + 3/2*x1")) == "3/2*x1 + x2"


# T-ideal spans ------------------------------------------------------------

def test_span_examples():
    assert tideal_multilinear_span(2, 2).rank == 1
    assert tideal_multilinear_span(2, 2).contains(parse("x1*x2 - x2*x1"))
    assert tideal_multilinear_span(3, 2).rank == 0
    assert tideal_multilinear_span(1, 3).rank == 6


def test_generators_are_multilinear():
    for n, d in [(2, 3), (3, 4), (2, 4)]:
        perms = set(permutations(range(1, d + 1)))
        for g in tideal_generators(n, range(1, d + 1)):
            assert set(g) <= perms


@pytest.mark.parametrize("n,d", [(2, 2), (2, 3), (3, 3), (2, 4), (3, 4), (4, 4)])
@pytest.mark.parametrize("p", [0, 2, 3])
def test_span_rank_matches_brute_oracle(n, d, p):
    assert tideal_multilinear_span(n, d, FieldSpec(p)).rank == brute_tideal_rank(n, d, p)


@pytest.mark.parametrize("d", range(1, 7))
def test_t3_codimension(d):
    # known: P_d / (T^(3) cap P_d) has dimension 2^(d-1) in characteristic 0
    assert tideal_multilinear_span(3, d).codim == 2 ** (d - 1)
    assert tideal_multilinear_span(2, d).codim == 1


@pytest.mark.parametrize("d", range(2, 7))
def test_monotone(d):
    ranks = [tideal_multilinear_span(n, d).rank for n in range(1, d + 2)]
    assert ranks == sorted(ranks, reverse=True)
    assert ranks[-1] == 0


def test_degree_guard():
    with pytest.raises(GuardError):
        tideal_multilinear_span(2, 8)


def test_product_span_examples():
    sp = product_ideal_multilinear_span((2, 2), 4)
    assert sp.contains(parse("[x1,x2]*[x3,x4]"))
    assert product_ideal_multilinear_span((1,), 2).rank == 2


def test_product_span_rank_matches_oracle():
    # brute force: [a,b][c,e] over words a, b, c, e covering x1..x4; with
    # every letter used there is no room for outer factors
    d = 4
    words = perm_words(d)
    rows = []
    for perm in permutations(range(1, d + 1)):
        for cut in range(1, d):
            left, right = perm[:cut], perm[cut:]
            for lc in range(1, len(left)):
                for rc in range(1, len(right)):
                    a, b = left[:lc], left[lc:]
                    c, e = right[:rc], right[rc:]
                    poly = commutator(FreePoly({a: 1}), FreePoly({b: 1})) * \
                        commutator(FreePoly({c: 1}), FreePoly({e: 1}))
                    rows.append([poly.coeff(w) for w in words])
    assert product_ideal_multilinear_span((2, 2), 4).rank == dense_rank(rows)


# containment ----------------------------------------------------------------

@pytest.mark.parametrize("m,target,d,field,holds", [
    ((3, 2), 3, 5, QQ, True),
    ((3, 2), 4, 5, QQ, True),
    ((3, 2), 4, 5, F3, False),
    ((2, 2), 2, 4, QQ, True),
    ((2, 2), 3, 4, QQ, False),
    ((1, 2), 2, 3, QQ, True),
])
def test_containment(m, target, d, field, holds):
    rep = verify_containment(m, target, d, field)
    assert rep.holds is holds
    if not holds:
        assert rep.counterexample is not None
        assert not tideal_multilinear_span(target, d, field).contains(rep.counterexample)
        assert product_ideal_multilinear_span(m, d, field).contains(rep.counterexample)


def test_noncontainment_examples():
    assert verify_noncontainment((2, 2), 3).witness_outside
    assert verify_noncontainment((3, 3), 6).witness_outside
    assert not verify_noncontainment((2,), 2).witness_outside
    assert canonical_witness((2, 2)) == parse("[x1,x2]*[x3,x4]")


def test_noncontainment_rejects_bad_m():
    with pytest.raises(UsageError):
        verify_noncontainment((), 3)
    with pytest.raises(UsageError):
        verify_noncontainment((0, 2), 3)


# universal model ------------------------------------------------------------

def test_universal_dims():
    assert [universal_model(m).dim for m in range(6)] == [1, 2, 5, 14, 41, 122]
    U1 = universal_model(1)
    assert U1.labels == [(), (1,)]


@pytest.mark.parametrize("field", [QQ, GF2, F3])
def test_universal_class_two(field):
    U = universal_model(3, field)
    x1, x2, x3 = U.generators
    assert not U.commutator(x1, x2, x3)
    assert U.commutator(x1, x2)


def test_universal_top_component_matches_oracle():
    # multilinear top part of U_3 has dimension 3! - rank(T^(3) cap P_3)
    U = universal_model(3)
    top = [lab for lab in U.labels if len(lab) == 3]
    assert len(top) == 6 - brute_tideal_rank(3, 3)


def test_universal_guard():
    with pytest.raises(GuardError):
        universal_model(7)
