import random

import pytest
from hypothesis import given, settings, strategies as st

from bigmcg.core import H1Vector, Twist, Word
from bigmcg.curve_atlas import atlas_curves, parse_curve
from bigmcg.homology_rep import act, basis
from bigmcg.word_engine import (
    EXHAUSTED,
    Atlas,
    EndWitness,
    HomologyWitness,
    ParseError,
    Refuted,
    Unknown,
    Verified,
    compare_terms,
    conjugate_twist,
    curve_image,
    effective_budget,
    equal_up_to,
    free_reduce,
    parse,
    reevaluate,
    render,
    trivial_up_to,
    verify_suite,
)
from bigmcg.core import ModelError, beta

from wordgen import random_twist_word, words


def C(text):
    return parse_curve(text)


def test_parse_examples():
    w = parse("T[b,1,1]")
    assert len(w) == 1 and w.letters[0].sign == 1 and w.letters[0].gen == Twist(C("b[1,1]"))
    assert len(parse("inv(h[1,2])*R^3")) == 4
    with pytest.raises(ParseError) as err:
        parse("T[q,1,1]")
    assert "position" in str(err.value)


def test_free_reduce_examples():
    w = parse("T[a,1,1]*h[2,3]*rho1")
    assert free_reduce(w * w.inverse()) == Word()
    assert free_reduce(parse("R*inv(R)*T[a,1,1]")) == parse("T[a,1,1]")
    assert free_reduce(parse("R^3")) == parse("R^3")


def test_curve_image_examples():
    assert curve_image(parse("T[a,1,1]*T[b,1,1]"), C("a[1,1]"), 3) == Atlas(C("b[1,1]"))
    assert curve_image(parse("T[a,1,1]"), C("b[2,5]"), 3) == Atlas(C("b[2,5]"))
    assert curve_image(parse("h[2,3]"), C("b[3,1]"), 3) == Atlas(C("b[3,2]"))


def test_conjugate_twist_examples():
    assert conjugate_twist(Word(), C("c[1,0]"), 3) == parse("T[c,1,0]")
    assert conjugate_twist(parse("h[1,2]"), C("b[1,1]"), 3) == parse("T[b,2,1]")
    assert conjugate_twist(parse("R"), C("c[1,0]"), 3) == parse("T[c,2,0]")


def test_equal_up_to_examples():
    assert isinstance(equal_up_to(parse("T[a,1,1]*T[b,1,1]*T[a,1,1]"), parse("T[b,1,1]*T[a,1,1]*T[b,1,1]"), 3), Verified)
    v = equal_up_to(parse("T[a,1,1]"), parse("T[a,1,2]"), 3)
    assert isinstance(v, Refuted) and isinstance(v.witness, HomologyWitness) and v.witness.vector == beta(1, 1)
    assert isinstance(equal_up_to(parse("tau1*tau2"), parse("h[1,2]"), 3, 12), Verified)


def test_trivial_up_to_examples():
    assert isinstance(trivial_up_to(parse("T[a,1,1]*T[a,2,3]*inv(T[a,1,1])*inv(T[a,2,3])"), 3), Verified)
    assert isinstance(trivial_up_to(parse("h[1,2]"), 3), Refuted)
    v = trivial_up_to(parse("T[c,1,0]"), 3)
    assert isinstance(v, Refuted)
    assert isinstance(trivial_up_to(parse("R"), 3).witness, EndWitness)


def test_bad_arguments():
    with pytest.raises(ModelError):
        equal_up_to(Word(), Word(), 3, 0)
    with pytest.raises(ModelError):
        equal_up_to(parse("T[a,5,1]"), Word(), 3)
    with pytest.raises(ModelError):
        verify_suite("nonsense", 3)


def test_budget_cap_from_environment(monkeypatch):
    monkeypatch.setenv("BIGMCG_MAX_BUDGET", "7")
    assert effective_budget(100) == 7
    monkeypatch.setenv("BIGMCG_MAX_BUDGET", "x")
    with pytest.raises(ModelError):
        effective_budget(100)


def test_tiny_budget_gives_unknown_or_exhausted():
    w = parse("T[a,1,1]*T[b,1,1]*T[a,1,1]")
    assert curve_image(w, C("b[1,1]"), 3, budget=1) is EXHAUSTED
    v = equal_up_to(w, parse("T[b,1,1]*T[a,1,1]*T[b,1,1]"), 3, 6, budget=1)
    assert isinstance(v, Unknown)


def test_suite_examples():
    assert verify_suite("lemma1", 4, 10).passed
    report = verify_suite("involutions", 3, 10)
    assert report.passed
    assert all(r.anchor in line for r, line in zip(report.results, report.lines()))
    assert verify_suite("braid", 3, 6).passed
    assert verify_suite("finite", 4, 10).passed
    assert verify_suite("lantern", 3, 6).passed


@settings(max_examples=200, deadline=None)
@given(words(4, 8))
def test_free_reduce_idempotent_and_shorter(w):
    r = free_reduce(w)
    assert free_reduce(r) == r
    assert len(r) <= len(w)
    assert all(a.gen != b.gen or a.sign == b.sign for a, b in zip(r.letters, r.letters[1:]))


@settings(max_examples=200, deadline=None)
@given(words(4, 8))
def test_render_parse_round_trip(w):
    assert parse(render(w)) == w


@settings(max_examples=60, deadline=None)
@given(words(4, 4), words(4, 4))
def test_equal_up_to_is_symmetric(w1, w2):
    a, b = equal_up_to(w1, w2, 4, 4), equal_up_to(w2, w1, 4, 4)
    assert type(a) is type(b)


@settings(max_examples=60, deadline=None)
@given(words(4, 4))
def test_free_reduce_preserves_verdict(w):
    assert isinstance(equal_up_to(w, free_reduce(w), 4, 4), Verified)


@settings(max_examples=40, deadline=None)
@given(words(4, 3), words(4, 3), st.integers(1, 5))
def test_verified_is_monotone_in_window(w1, w2, smaller):
    if isinstance(equal_up_to(w1, w2, 4, 6), Verified):
        assert isinstance(equal_up_to(w1, w2, 4, smaller), Verified)


@settings(max_examples=60, deadline=None)
@given(words(4, 4), words(4, 4))
def test_refuted_pairs_have_nontrivial_quotient(w1, w2):
    v = equal_up_to(w1, w2, 4, 5)
    if isinstance(v, Refuted):
        assert reevaluate(v.witness, w1, w2, 4)
        assert isinstance(trivial_up_to(w1 * w2.inverse(), 4, 5), Refuted)


def _brute_force_differs(w1, w2, n, window):
    """Compare every basis vector and every atlas curve with no shortcuts."""
    for e in basis(n, window):
        x = H1Vector.basis(e)
        if act(w1, x, n) != act(w2, x, n):
            return True
    for z in atlas_curves(n, window):
        if compare_terms(curve_image(w1, z, n), curve_image(w2, z, n), n) == "different":
            return True
    return False


def test_twist_word_shortcut_agrees_with_brute_force():
    rng = random.Random(7)
    n = 3
    pairs = [(random_twist_word(rng, n, 3, 4), random_twist_word(rng, n, 3, 4)) for _ in range(30)]
    # equal pairs: a braid or commutation move inside a random context
    for text_a, text_b in (("T[a,1,1]*T[b,1,1]*T[a,1,1]", "T[b,1,1]*T[a,1,1]*T[b,1,1]"),
                           ("T[b,2,2]*T[c,2,2]*T[b,2,2]", "T[c,2,2]*T[b,2,2]*T[c,2,2]"),
                           ("T[a,1,1]*T[a,3,2]", "T[a,3,2]*T[a,1,1]")):
        for _ in range(4):
            u, v = random_twist_word(rng, n, 2, 4), random_twist_word(rng, n, 2, 4)
            pairs.append((u * parse(text_a) * v, u * parse(text_b) * v))
    outcomes = set()
    for w1, w2 in pairs:
        refuted = isinstance(equal_up_to(w1, w2, n, 5), Refuted)
        assert refuted == _brute_force_differs(w1, w2, n, 5)
        outcomes.add(refuted)
    assert outcomes == {True, False}
