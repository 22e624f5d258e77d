import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import small_rationals, unit_rationals
from groupcut.exactnum import OpenInterval, interval
from groupcut.moves import Move, compose, fundamental_pieces, reflection, translation

H, Q = F(1, 2), F(1, 4)


def moves():
    dom = st.tuples(small_rationals(8, -1, 2), small_rationals(8, -1, 2)).map(lambda t: interval(min(t), max(t)))
    return st.builds(Move, st.sampled_from((1, -1)), small_rationals(8), dom)


def test_apply():
    assert reflection(H, 0, H).apply(F(1, 8)) == F(3, 8)
    assert translation(0, 0, H).apply(Q) == Q
    assert reflection(H, 0, H).apply(H) is None


def test_compose_examples():
    r = reflection(H, 0, H)
    assert compose(r, r) == translation(0, 0, H)
    t = translation(Q, 0, H)
    assert compose(t, t) == translation(H, 0, Q)
    empty = compose(translation(Q, 0, F(1, 8)), translation(Q, H, F(5, 8)))
    assert empty.dom is None and empty.chi == 1


def test_inverse_examples():
    assert translation(Q, 0, H).inverse() == translation(-Q, Q, F(3, 4))
    assert reflection(H, F(1, 8), Q).inverse() == reflection(H, Q, F(3, 8))
    e = Move(-1, F(3), None)
    assert e.inverse() == e and e.param == 1


def test_restrictions():
    r = reflection(H, 0, H)
    assert r.restrict(OpenInterval(0, Q)) == reflection(H, 0, Q)
    assert translation(Q, 0, H).corestrict(OpenInterval(H, F(3, 4))) == translation(Q, Q, H)
    assert r.restrict(None) == Move(-1, 1, None)
    with pytest.raises(ValueError):
        r.restrict(OpenInterval(0, 1))
    assert reflection(H, 0, Q).is_restriction_of(r)
    assert not translation(0, 0, Q).is_restriction_of(r)
    assert Move(1, 0, None).is_restriction_of(translation(F(1, 3), 0, 1))


def test_fundamental_pieces():
    pieces = fundamental_pieces(1, F(1, 2), OpenInterval(F(1, 4), F(3, 4)))
    assert pieces == [translation(H, Q, H), translation(-H, H, F(3, 4))]
    assert fundamental_pieces(-1, F(3, 2), OpenInterval(H, 1)) == [reflection(F(3, 2), H, 1)]


def test_json_roundtrip():
    m = reflection(F(11, 12), 0, F(11, 12))
    assert Move.from_json(json.loads(json.dumps(m.to_json()))) == m
    assert repr(m) == "rho_11/12|(0,11/12)"


@settings(max_examples=1000)
@given(moves(), moves(), moves(), unit_rationals(16))
def test_semigroup_laws(a, b, c, x):
    ab = compose(a, b)
    # character is multiplicative
    assert ab.chi == a.chi * b.chi
    # associativity
    assert compose(a, compose(b, c)) == compose(ab, c)
    # inverses: a^-1 a is the identity on dom(a), a a^-1 a = a, (a^-1)^-1 = a
    ident = compose(a.inverse(), a)
    assert ident.dom == a.dom and (a.dom is None or ident.key == (1, 0))
    assert compose(a, compose(a.inverse(), a)) == a
    assert a.inverse().inverse() == a
    # inverse of a product
    assert ab.inverse() == compose(b.inverse(), a.inverse())
    # pointwise meaning
    y = b.apply(x)
    expect = a.apply(y) if y is not None else None
    assert ab.apply(x) == expect


@settings(max_examples=1000)
@given(moves(), moves(), unit_rationals(8), unit_rationals(8))
def test_restriction_monotone(a, b, lo, hi):
    d = interval(min(lo, hi), max(lo, hi))
    a2 = a.restrict_meet(d)
    assert a2.is_restriction_of(a)
    assert compose(a2, b).is_restriction_of(compose(a, b))
    assert compose(b, a2).is_restriction_of(compose(b, a))
    assert a2.inverse().is_restriction_of(a.inverse())
