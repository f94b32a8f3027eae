import math

import pytest
from hypothesis import given, settings, strategies as st

from bigmcg.core import CurveId, ModelError, Shift, Word
from bigmcg.curve_atlas import Cut, SepClass
from bigmcg.shifts_and_flux import (
    EventuallyPeriodicBits,
    Perm,
    ShiftSpec,
    chain,
    compact_closure_shadow,
    end_permutation,
    flux_vector,
    genus_checks,
    model_shift_point,
    phi,
    safe_depth,
    separating_witness,
    shift_type,
    sym_generated,
    twist_point,
)
from bigmcg.word_engine import parse

from wordgen import words

bits = st.builds(lambda pre, per: EventuallyPeriodicBits(tuple(pre), tuple(per)),
                 st.lists(st.integers(0, 1), max_size=4), st.lists(st.integers(0, 1), min_size=1, max_size=4))


def shift_of(a, b):
    return ShiftSpec(1, 2, EventuallyPeriodicBits.parse(a), EventuallyPeriodicBits.parse(b))


def test_shift_types():
    assert shift_type(shift_of("|0", "|0")) == "I"
    assert shift_type(shift_of("|1", "|1")) == "II"
    assert shift_type(shift_of("|0", "|1")) == "III"
    assert shift_type(shift_of("111|0", "0|01")) == "III"


def test_chain_examples():
    assert chain(1, 3) == parse("h[2,3]*h[1,2]")
    assert chain(1, 2) == parse("h[1,2]")
    assert list(flux_vector(chain(1, 3), 4, 12)) == [-1, 0, 1, 0]
    with pytest.raises(ModelError):
        chain(3, 1)


def test_end_permutation_examples():
    for n in (3, 5):
        assert end_permutation(parse("R"), n) == Perm.cycle(n)
        assert end_permutation(parse("rho1*rho2"), n) == Perm.cycle(n)
    assert end_permutation(parse("T[a,1,1]*T[c,2,0]"), 4).is_identity()


def test_phi_examples():
    h = parse("h[1,2]")
    assert phi(SepClass(2), h, 3, 10) == 1
    assert phi(3, h, 3, 10) == 0
    assert phi(1, parse("T[a,1,1]*T[b,2,2]"), 3, 10) == 0
    assert phi(1, parse("R"), 3, 10) is None


def test_flux_examples():
    assert list(flux_vector(parse("h[1,2]"), 3, 10)) == [-1, 1, 0]
    assert flux_vector(parse("T[a,1,1]*T[a,2,1]*inv(T[a,1,1])*inv(T[a,2,1])"), 3, 10).is_zero()
    assert flux_vector(parse("tau1*tau2"), 3, 12) == flux_vector(parse("h[1,2]"), 3, 12)


def test_compact_closure_shadow_examples():
    t = parse("T[b,1,3]")
    h1, h2 = parse("h[1,2]"), t * parse("h[1,2]") * t.inverse()
    assert compact_closure_shadow(h1 * h2.inverse(), 3, 12).holds
    assert not compact_closure_shadow(parse("h[1,2]"), 3, 12).holds
    assert compact_closure_shadow(Word(), 3, 12).holds


def test_separating_witness_examples():
    c = CurveId("c", 1, 3)
    assert separating_witness(c, Shift(1, 2), 3) == CurveId("c", 1, 5)
    g = genus_checks(c, Shift(1, 2), 3)
    assert (g.base, g.forward, g.backward) == (2, 3, 1)
    g = genus_checks(CurveId("c", 1, 2), Shift(1, 2), 3)
    assert g.gamma == Cut(1, 4) and (g.base, g.forward, g.backward) == (2, 3, 1)
    with pytest.raises(ModelError):
        separating_witness(CurveId("c", 1, 1), Shift(1, 2), 3)
    with pytest.raises(ModelError):
        separating_witness(CurveId("c", 3, 4), Shift(1, 2), 3)


def test_sym_generated_examples():
    assert sym_generated([Perm.cycle(4), Perm.from_cycles(4, [1, 2])], 4)
    assert not sym_generated([Perm.from_cycles(3, [1, 2])], 3)
    assert not sym_generated([Perm.from_cycles(5, [1, 2, 3]), Perm.from_cycles(5, [1, 2], [4, 5])], 5)


def test_strip_map_examples():
    assert twist_point(1.0, 0.0) == (1.0, 0.0)
    theta, t = twist_point(1.0, 1.0)
    assert math.isclose(theta, 1.0, abs_tol=1e-12) and t == 1.0
    assert twist_point(0.0, 0.5) == pytest.approx((math.pi, 0.5))
    assert model_shift_point(0.0, 0.0) == (1.0, 0.0)
    assert model_shift_point(0.0, 1.0) == (0.0, 1.0)
    assert model_shift_point(0.0, 0.75) == (0.5, 0.75)
    with pytest.raises(ModelError):
        twist_point(0.0, 1.5)
    with pytest.raises(ModelError):
        model_shift_point(0.0, -1.5)


@settings(max_examples=80, deadline=None)
@given(words(4, 4, pure=True), words(4, 4, pure=True))
def test_flux_is_additive(w1, w2):
    depth = safe_depth(w1 * w2, 8)
    f1, f2, f12 = (flux_vector(w, 4, depth) for w in (w1, w2, w1 * w2))
    if None not in (f1, f2, f12):
        assert f12 == f1 + f2


@settings(max_examples=80, deadline=None)
@given(words(4, 5, pure=True))
def test_flux_sums_to_zero(w):
    f = flux_vector(w, 4, safe_depth(w, 8))
    if f is not None:
        assert sum(f) == 0


@settings(max_examples=60, deadline=None)
@given(words(4, 4, pure=True), st.integers(1, 4), st.integers(0, 5))
def test_phi_does_not_depend_on_cut_depth(w, end, extra):
    base = safe_depth(w, 4)
    assert phi(end, w, 4, base) == phi(end, w, 4, base + extra)


@given(bits, bits)
def test_shift_type_ignores_representation(a, b):
    assert shift_type(ShiftSpec(1, 2, a, b)) == shift_type(ShiftSpec(1, 2, a.canonical(), b.canonical()))
    longer = EventuallyPeriodicBits(a.preamble + a.period, a.period + a.period)
    assert shift_type(ShiftSpec(1, 2, longer, b)) == shift_type(ShiftSpec(1, 2, a, b))


@given(bits)
def test_canonical_is_idempotent(a):
    assert a.canonical().canonical() == a.canonical()
