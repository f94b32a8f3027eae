from hypothesis import given, settings, strategies as st
import pytest

from bigmcg.core import CurveId, H1Vector, Letter, ModelError, Twist, Word, alpha, beta, delta
from bigmcg.curve_atlas import delta_class, homology_class, intersection
from bigmcg.homology_rep import (
    UNKNOWN,
    act,
    basis,
    check_twist_formula,
    pairing,
    parse_basis,
    transvection,
)
from bigmcg.word_engine import parse

from wordgen import curves, words

A11, B11 = H1Vector.basis(alpha(1, 1)), H1Vector.basis(beta(1, 1))


@st.composite
def vectors(draw, n=4, top=6):
    d = {}
    for _ in range(draw(st.integers(0, 4))):
        kind = draw(st.sampled_from(("alpha", "beta")))
        e = (alpha if kind == "alpha" else beta)(draw(st.integers(1, n)), draw(st.integers(1, top)))
        d[e] = d.get(e, 0) + draw(st.integers(-3, 3))
    return H1Vector.from_dict(d)


def test_pairing_examples():
    assert pairing(A11, B11) == 1
    assert pairing(B11, A11) == -1
    assert pairing(delta_class(1, 3), H1Vector.basis(beta(3, 4))) == 0


def test_transvection_examples():
    assert transvection(A11, B11) == B11 - A11
    assert transvection(A11, H1Vector.basis(beta(2, 1))) == H1Vector.basis(beta(2, 1))
    assert transvection(A11, B11, 4) == B11 - A11.scale(4)


def test_act_examples():
    assert act(parse("h[1,2]"), H1Vector.basis(beta(1, 2)), 3) == B11
    assert act(parse("R"), A11, 3) == H1Vector.basis(alpha(2, 1))
    x = H1Vector.basis(beta(1, 1)) + H1Vector.basis(alpha(2, 3))
    assert act(parse("T[c,1,0]"), x, 3) == x - homology_class(CurveId("c", 1, 0), 3)


def test_central_twist_acts_trivially_on_radical():
    d = delta_class(2, 3)
    for w in ("T[c,1,0]", "T[a,2,1]*T[b,3,4]"):
        assert act(parse(w), d, 3) == d


@pytest.mark.parametrize("a,b,k", [("a[1,1]", "b[1,1]", 3), ("a[1,1]", "b[2,1]", 5), ("a[1,1]", "b[1,1]", -2)])
def test_twist_formula_examples(a, b, k):
    from bigmcg.curve_atlas import parse_curve
    assert check_twist_formula(parse_curve(a), parse_curve(b), k, 3)


def test_twist_formula_rejects_far_pairs():
    with pytest.raises(ModelError):
        check_twist_formula(CurveId("d1", 1, 1), CurveId("d2", 1, 1), 1, 3)


def test_window_escape_gives_unknown():
    assert act(parse("h[1,2]"), H1Vector.basis(beta(1, 20)), 3, window=2) is UNKNOWN
    assert act(parse("h[1,2]"), H1Vector.basis(beta(1, 2)), 3, window=2) == B11


def test_parse_basis_and_basis_listing():
    assert parse_basis("alpha[2,3]", 3) == H1Vector.basis(alpha(2, 3))
    assert parse_basis("delta[1]", 3) == delta_class(1, 3)
    with pytest.raises(ModelError):
        parse_basis("delta[5]", 3)
    assert len(basis(3, 4)) == 3 * 4 * 2 + 2
    assert delta(3) not in basis(3, 4)


@settings(max_examples=100, deadline=None)
@given(words(4, 4), words(4, 4), vectors())
def test_action_composes(w1, w2, x):
    assert act(w1 * w2, x, 4) == act(w1, act(w2, x, 4), 4)


@settings(max_examples=100, deadline=None)
@given(words(4, 5), vectors(), vectors())
def test_action_preserves_pairing(w, x, y):
    assert pairing(act(w, x, 4), act(w, y, 4)) == pairing(x, y)


@settings(max_examples=100, deadline=None)
@given(curves(4, 6), vectors(), st.integers(-5, 5))
def test_twist_power_matches_repeated_letters(c, x, k):
    sign = 1 if k >= 0 else -1
    w = Word(tuple(Letter(Twist(c), sign) for _ in range(abs(k))))
    assert act(w, x, 4) == transvection(homology_class(c, 4), x, k)


@settings(max_examples=100, deadline=None)
@given(curves(4, 6), curves(4, 6), vectors())
def test_braid_and_commute_in_homology(a, b, x):
    i = intersection(a, b, 4)
    ta, tb = Word.of(Twist(a)), Word.of(Twist(b))
    if i == 1:
        assert act(ta * tb * ta, x, 4) == act(tb * ta * tb, x, 4)
    elif i == 0:
        assert act(ta * tb, x, 4) == act(tb * ta, x, 4)


@given(vectors(), vectors())
def test_pairing_is_antisymmetric(x, y):
    assert pairing(x, y) == -pairing(y, x)
    assert pairing(x, x) == 0
