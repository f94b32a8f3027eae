import pytest
from hypothesis import given, strategies as st

from bigmcg.core import ModelError
from bigmcg.surface_model import (
    FiniteTypeSig,
    Named,
    Sn,
    Unsupported,
    euler_characteristic,
    finite_homeomorphic,
    generator_count,
    nested,
    parse_signature,
    truncation,
)

sigs = st.builds(FiniteTypeSig, st.integers(0, 4), st.integers(0, 3), st.integers(0, 3))


@pytest.mark.parametrize("sig,chi", [((0, 0, 0), 2), ((1, 0, 0), 0), ((0, 4, 0), -2)])
def test_euler_characteristic_examples(sig, chi):
    assert euler_characteristic(FiniteTypeSig(*sig)) == chi


def test_lantern_surface_is_hyperbolic_enough():
    assert euler_characteristic(FiniteTypeSig(0, 4, 0)) <= -2


@pytest.mark.parametrize("a,b,same", [((2, 1, 0), (2, 1, 0), True), ((1, 0, 0), (0, 0, 1), False),
                                      ((0, 2, 0), (0, 0, 2), False)])
def test_finite_homeomorphic_examples(a, b, same):
    assert finite_homeomorphic(FiniteTypeSig(*a), FiniteTypeSig(*b)) is same


@pytest.mark.parametrize("sig,count", [((2, 0, 0), 5), ((2, 1, 0), 5), ((3, 2, 1), 9)])
def test_generator_count_examples(sig, count):
    assert generator_count(FiniteTypeSig(*sig)) == count


@pytest.mark.parametrize("g", [0, 1])
def test_generator_count_needs_genus_two(g):
    with pytest.raises(Unsupported):
        generator_count(FiniteTypeSig(g, 1, 0))


@pytest.mark.parametrize("args,sig", [((3, 1), (3, 3, 0)), ((3, 2), (6, 3, 0)), ((1, 5), (5, 1, 0))])
def test_truncation_examples(args, sig):
    assert truncation(*args) == FiniteTypeSig(*sig)


def test_parse_signature_and_errors():
    assert parse_signature(" 3, 2,1") == FiniteTypeSig(3, 2, 1)
    assert str(FiniteTypeSig(3, 2, 1)) == "3,2,1"
    for bad in ("3,2", "a,b,c", "-1,0,0"):
        with pytest.raises(ModelError):
            parse_signature(bad)
    with pytest.raises(ModelError):
        FiniteTypeSig(-1)
    with pytest.raises(ModelError):
        Sn(0)
    with pytest.raises(ModelError):
        Named("Torus")
    assert str(Sn(4)) == "S(4)" and str(Named("Flute")) == "Flute"


def test_truncation_euler_characteristic_table():
    for n in range(1, 9):
        for m in range(1, 21):
            assert euler_characteristic(truncation(n, m)) == 2 - 2 * n * m - n


@given(st.integers(1, 8), st.integers(2, 20))
def test_truncations_are_nested(n, m):
    assert nested(truncation(n, m - 1), truncation(n, m))
    assert not nested(truncation(n, m), truncation(n, m - 1))


@given(sigs, sigs, sigs)
def test_finite_homeomorphic_is_an_equivalence(a, b, c):
    assert finite_homeomorphic(a, a)
    assert finite_homeomorphic(a, b) == finite_homeomorphic(b, a)
    if finite_homeomorphic(a, b) and finite_homeomorphic(b, c):
        assert finite_homeomorphic(a, c)


@given(st.integers(2, 12), st.integers(0, 4), st.integers(0, 4))
def test_generator_count_grows_with_boundary(g, b, p):
    count = generator_count(FiniteTypeSig(g, b, p))
    assert count >= 2 * g + 1 or (b + p == 1 and count == 2 * g + 1)
    if b + p > 0:
        assert generator_count(FiniteTypeSig(g, b + 1, p)) == count + 1
