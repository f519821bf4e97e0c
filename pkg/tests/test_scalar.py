from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tprod.scalar import GF2, QQ, FieldMismatchError, FieldSpec, Scalar, invertible_six

PRIMES = [2, 3, 5, 7, 101]
fields = st.sampled_from([QQ] + [FieldSpec(p) for p in PRIMES])
rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q.numerator) < 10**6)


def test_examples():
    assert QQ.add(QQ("1/2"), QQ("1/3")) == QQ("5/6")
    F3 = FieldSpec.prime(3)
    assert F3.mul(2, 2) == 1
    assert GF2.add(1, 1) == 0


def test_invertible_six():
    assert invertible_six(QQ)
    assert not invertible_six(FieldSpec(3))
    assert not invertible_six(GF2)
    assert invertible_six(FieldSpec(5))


@pytest.mark.parametrize("bad", [0, 1, 4, 9, 15])
def test_prime_rejects_non_primes(bad):
    with pytest.raises(ValueError):
        FieldSpec.prime(bad)


@pytest.mark.parametrize("text,p", [("q", 0), ("Q", 0), ("fp:2", 2), (" fp:7 ", 7)])
def test_parse(text, p):
    f = FieldSpec.parse(text)
    assert f.p == p
    assert FieldSpec.parse(str(f)) == f


@pytest.mark.parametrize("text", ["", "z", "fp:", "fp:x", "fp:6"])
def test_parse_errors(text):
    with pytest.raises(ValueError):
        FieldSpec.parse(text)


def test_inverse_of_zero():
    for f in (QQ, GF2, FieldSpec(7)):
        with pytest.raises(ZeroDivisionError):
            f.inv(f.zero)


def test_denominator_vanishing_mod_p():
    with pytest.raises(ZeroDivisionError):
        FieldSpec(3)("1/3")
    assert FieldSpec(5)("1/2") == 3


def test_scalar_mixed_fields():
    with pytest.raises(FieldMismatchError):
        Scalar(1, QQ) + Scalar(1, GF2)
    assert Scalar(3, FieldSpec(5)) * 2 == Scalar(1, FieldSpec(5))
    assert (Scalar("1/2") / Scalar(3)).value == QQ("1/6")
    assert str(Scalar("-4/6")) == "-2/3"


def _elem(f: FieldSpec, q: Fraction):
    if f.p and q.denominator % f.p == 0:
        q = Fraction(q.numerator)
    return f(q)


@given(fields, rationals, rationals, rationals)
def test_field_axioms(f, a, b, c):
    a, b, c = (_elem(f, t) for t in (a, b, c))
    assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
    assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.add(a, f.neg(a)) == f.zero
    assert f.sub(a, b) == f.add(a, f.neg(b))
    if a:
        assert f.mul(a, f.inv(a)) == f.one


@given(fields, rationals)
def test_normalize_idempotent(f, q):
    a = _elem(f, q)
    assert f.normalize(a) == a
    assert f.normalize(f.normalize(a)) == f.normalize(a)
    s = Scalar(a, f)
    assert Scalar(s.value, f) == s
