"""Random words and hypothesis strategies shared by the tests."""
import random

from hypothesis import strategies as st

from bigmcg.core import FAMILIES, CurveId, Letter, Rho1, Rho2, Rot, Shift, Tau1, Tau2, Twist, Word

SIMPLE = (Rot(), Rho1(), Rho2(), Tau1(), Tau2())


def random_curve(rng: random.Random, n: int, top: int = 6) -> CurveId:
    fam = rng.choice(FAMILIES)
    return CurveId(fam, rng.randint(1, n), rng.randint(0 if fam == "c" else 1, top))


def random_twist_word(rng: random.Random, n: int, length: int = 6, top: int = 6) -> Word:
    return Word(tuple(Letter(Twist(random_curve(rng, n, top)), rng.choice((1, -1)))
                      for _ in range(rng.randint(0, length))))


def random_pure_word(rng: random.Random, n: int, length: int = 6, top: int = 6) -> Word:
    letters = []
    for _ in range(rng.randint(0, length)):
        if rng.random() < 0.6:
            g = Twist(random_curve(rng, n, top))
        else:
            a, b = rng.sample(range(1, n + 1), 2)
            g = Shift(a, b)
        letters.append(Letter(g, rng.choice((1, -1))))
    return Word(tuple(letters))


def random_word(rng: random.Random, n: int, length: int = 8, top: int = 6) -> Word:
    letters = []
    for _ in range(rng.randint(0, length)):
        r = rng.random()
        if r < 0.5:
            g = Twist(random_curve(rng, n, top))
        elif r < 0.75:
            a, b = rng.sample(range(1, n + 1), 2)
            g = Shift(a, b)
        else:
            g = rng.choice(SIMPLE)
        letters.append(Letter(g, rng.choice((1, -1))))
    return Word(tuple(letters))


@st.composite
def curves(draw, n: int = 4, top: int = 8):
    fam = draw(st.sampled_from(FAMILIES))
    return CurveId(fam, draw(st.integers(1, n)), draw(st.integers(0 if fam == "c" else 1, top)))


@st.composite
def words(draw, n: int = 4, max_len: int = 6, pure: bool = False, twists_only: bool = False):
    """Words over the full alphabet, or over twists and shifts only."""
    letters = []
    for _ in range(draw(st.integers(0, max_len))):
        kind = "twist" if twists_only else draw(st.sampled_from(
            ["twist", "twist", "shift"] if pure else ["twist", "twist", "shift", "simple"]))
        if kind == "twist":
            g = Twist(draw(curves(n, 6)))
        elif kind == "shift":
            a = draw(st.integers(1, n))
            b = draw(st.integers(1, n).filter(lambda v: v != a))
            g = Shift(a, b)
        else:
            g = draw(st.sampled_from(SIMPLE))
        letters.append(Letter(g, draw(st.sampled_from((1, -1)))))
    return Word(tuple(letters))
