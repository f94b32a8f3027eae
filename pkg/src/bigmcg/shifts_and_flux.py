"""Handle-shift bookkeeping: shift types, end permutations, genus flux, genus
witnesses, symmetric-group generation and the two strip-map formulas."""
from __future__ import annotations

import math
import re
from collections import deque
from functools import lru_cache
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Union

from .core import CurveId, Letter, ModelError, Shift, Twist, Word, check_word
from .curve_atlas import Cut, SepClass, as_cut, cut_image, generator_end_perm, genus_between

# occupancy sequences ----------------------------------------------------------


@dataclass(frozen=True)
class EventuallyPeriodicBits:
    """Bit sequence ``preamble`` followed by ``period`` repeated forever."""

    preamble: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self):
        if not self.period:
            raise ModelError("period must be nonempty")
        if any(b not in (0, 1) for b in self.preamble + self.period):
            raise ModelError("occupancy bits must be 0 or 1")

    @classmethod
    def parse(cls, text: str) -> "EventuallyPeriodicBits":
        m = re.fullmatch(r"\s*([01]*)\|([01]+)\s*", text)
        if not m:
            raise ModelError(f"bad occupancy literal {text!r}")
        return cls(tuple(map(int, m.group(1))), tuple(map(int, m.group(2)))).canonical()

    def canonical(self) -> "EventuallyPeriodicBits":
        per = list(self.period)
        for d in range(1, len(per) + 1):
            if len(per) % d == 0 and per == per[:d] * (len(per) // d):
                per = per[:d]
                break
        pre = list(self.preamble)
        # absorb the tail of the preamble into the period by rotation
        while pre and pre[-1] == per[-1]:
            pre.pop()
            per = [per[-1]] + per[:-1]
        return EventuallyPeriodicBits(tuple(pre), tuple(per))

    def infinitely_many_ones(self) -> bool:
        return 1 in self.period

    def __str__(self) -> str:
        return "".join(map(str, self.preamble)) + "|" + "".join(map(str, self.period))


@dataclass(frozen=True)
class ShiftSpec:
    from_end: int
    to_end: int
    plus_occupancy: EventuallyPeriodicBits
    minus_occupancy: EventuallyPeriodicBits

    def __post_init__(self):
        if self.from_end == self.to_end:
            raise ModelError("shift ends must be distinct")


def shift_type(s: ShiftSpec) -> str:
    plus = s.plus_occupancy.infinitely_many_ones()
    minus = s.minus_occupancy.infinitely_many_ones()
    if not plus and not minus:
        return "I"
    if plus and minus:
        return "II"
    return "III"


def chain(i: int, k: int) -> Word:
    """h[i,k] written as h[k-1,k] ... h[i+1,i+2] h[i,i+1]."""
    if not 1 <= i < k:
        raise ModelError("chain needs 1 <= i < k")
    return Word.of(*(Shift(m, m + 1) for m in range(k - 1, i - 1, -1)))


# end permutations --------------------------------------------------------------


class Perm(tuple):
    """Bijection of 1..n stored as the tuple of images."""

    def __new__(cls, images: Iterable[int]):
        images = tuple(images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ModelError(f"{images} is not a permutation")
        return super().__new__(cls, images)

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(range(1, n + 1))

    @classmethod
    def cycle(cls, n: int) -> "Perm":
        return cls([j % n + 1 for j in range(1, n + 1)])

    @classmethod
    def from_cycles(cls, n: int, *cycles: Iterable[int]) -> "Perm":
        img = list(range(1, n + 1))
        for cyc in cycles:
            cyc = list(cyc)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a - 1] = b
        return cls(img)

    def __call__(self, j: int) -> int:
        return self[j - 1]

    def then(self, other: "Perm") -> "Perm":
        """Apply ``self`` first, then ``other``."""
        return Perm(other[v - 1] for v in self)

    def inverse(self) -> "Perm":
        inv = [0] * len(self)
        for k, v in enumerate(self):
            inv[v - 1] = k + 1
        return Perm(inv)

    def is_identity(self) -> bool:
        return all(v == k + 1 for k, v in enumerate(self))


@lru_cache(maxsize=1 << 12)
def letter_perm(letter: Letter, n: int) -> Perm:
    p = Perm(generator_end_perm(letter.gen, n))
    return p if letter.sign > 0 else p.inverse()


def end_permutation(w: Word, n: int) -> Perm:
    check_word(w, n)
    p = Perm.identity(n)
    for letter in reversed(w.letters):
        if not isinstance(letter.gen, Twist):
            p = p.then(letter_perm(letter, n))
    return p


def sym_generated(perms: Iterable[Perm], n: int) -> bool:
    if n > 8:
        raise ModelError("closure is only computed for n <= 8")
    gens = [Perm(p) for p in perms]
    start = Perm.identity(n)
    seen = {start}
    queue = deque([start])
    while queue:
        p = queue.popleft()
        for g in gens:
            q = p.then(g)
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return len(seen) == math.factorial(n)


# genus flux ---------------------------------------------------------------------


def cut_orbit(w: Word, cut: Cut, n: int) -> Optional[Cut]:
    """Image of a separating cut under ``w``; ``None`` if it leaves the atlas."""
    cur: Optional[Cut] = cut
    for letter in reversed(w.letters):
        cur = cut_image(letter.gen, letter.sign, cur, n)
        if cur is None:
            return None
    return cur


def phi(part: Union[SepClass, int], w: Word, n: int, window: int) -> Optional[int]:
    """Signed genus carried across the cut around one end; ``None`` when undefined.

    Positive when genus enters the end's side (its cut moves deeper).
    """
    if isinstance(part, int):
        part = SepClass(part)
    if not 1 <= part.end <= n:
        raise ModelError(f"end {part.end} out of range")
    if window < 0:
        raise ModelError("window must be nonnegative")
    if not end_permutation(w, n).is_identity():
        return None
    return _signed_flux(part, w, n, window)


def _signed_flux(part: SepClass, w: Word, n: int, window: int) -> Optional[int]:
    gamma = Cut(part.end, window)
    image = cut_orbit(w, gamma, n)
    if image is None:
        return None
    value = image.depth - gamma.depth
    return value if part.orientation == "singleton" else -value


class FluxVector(tuple):
    def __new__(cls, values: Iterable[int]):
        values = tuple(values)
        if sum(values) != 0:
            raise ModelError(f"flux {values} does not sum to zero")
        return super().__new__(cls, values)

    def __add__(self, other: "FluxVector") -> "FluxVector":
        return FluxVector(a + b for a, b in zip(self, other))

    def is_zero(self) -> bool:
        return not any(self)


def flux_vector(w: Word, n: int, window: int) -> Optional[FluxVector]:
    if window < 0:
        raise ModelError("window must be nonnegative")
    if not end_permutation(w, n).is_identity():
        return None
    values = []
    for j in range(1, n + 1):
        v = _signed_flux(SepClass(j), w, n, window)
        if v is None:
            return None
        values.append(v)
    return FluxVector(values)


def safe_depth(w: Word, window: int = 0) -> int:
    """A cut depth beyond the reach of every letter of ``w``."""
    deepest = max((l.gen.curve.index for l in w if hasattr(l.gen, "curve")), default=0)
    return max(window, deepest) + len(w) + 2


class ClosureShadow(NamedTuple):
    holds: bool
    undefined: bool


def compact_closure_shadow(w: Word, n: int, window: int) -> ClosureShadow:
    if not end_permutation(w, n).is_identity():
        return ClosureShadow(False, False)
    f = flux_vector(w, n, window)
    if f is None:
        return ClosureShadow(False, True)
    return ClosureShadow(f.is_zero(), False)


# genus witnesses ----------------------------------------------------------------


class GenusCheck(NamedTuple):
    gamma: Cut
    base: int
    forward: int
    backward: int

    def holds(self) -> bool:
        return self.base + 1 == self.forward and self.base - 1 == self.backward


def _check_c(c: Union[CurveId, Cut], n: int) -> Cut:
    cut = as_cut(c)
    if not 1 <= cut.end <= n:
        raise ModelError(f"{c} does not live on S({n})")
    return cut


def separating_witness(c: Union[CurveId, Cut], h: Shift, n: int) -> CurveId:
    """Separating curve gamma on the far side of ``c`` from the moving handles:
    h adds one handle between gamma and c, h^-1 removes one."""
    gamma = _witness_cut(c, h, n)
    return CurveId("c", gamma.end, gamma.depth)


def _witness_cut(c, h: Shift, n: int) -> Cut:
    cut = _check_c(c, n)
    if not h.adjacent(n):
        raise ModelError("witnesses are built for adjacent shifts")
    if cut.depth < 2:
        raise ModelError(f"{c}: index must be at least 2")
    if cut.end == h.source:
        return Cut(cut.end, cut.depth + 2)
    if cut.end == h.target:
        return Cut(cut.end, cut.depth - 2)
    raise ModelError(f"{h} does not touch the end of {c}")


def genus_checks(c: Union[CurveId, Cut], h: Shift, n: int) -> GenusCheck:
    """Genus between gamma and c, h(c), h^-1(c)."""
    gamma = _witness_cut(c, h, n)
    cut = as_cut(c)
    w = Word.of(h)
    fwd = cut_orbit(w, cut, n)
    bwd = cut_orbit(w.inverse(), cut, n)
    if fwd is None or bwd is None:
        raise ModelError(f"{c}: shift image leaves the atlas")
    return GenusCheck(gamma, genus_between(gamma, cut), genus_between(gamma, fwd), genus_between(gamma, bwd))


def difference_witness(c: Union[CurveId, Cut], h1: Word, h2: Word, n: int) -> Optional[tuple[Cut, int, int]]:
    """For two shifts with the same ends, gamma beyond both supports sees no genus change
    under h2^-1 h1.  Returns (gamma, genus(gamma, c), genus(gamma, h2^-1 h1 (c)))."""
    cut = _check_c(c, n)
    diff = h2.inverse() * h1
    image = cut_orbit(diff, cut, n)
    if image is None or image.end != cut.end:
        return None
    gamma = Cut(cut.end, safe_depth(diff, max(cut.depth, image.depth)))
    return gamma, genus_between(gamma, cut), genus_between(gamma, image)


# strip maps ----------------------------------------------------------------------


def twist_point(theta: float, t: float) -> tuple[float, float]:
    """Twist map on the annulus S^1 x [0, 1]."""
    if not 0.0 <= t <= 1.0:
        raise ModelError("t must lie in [0, 1]")
    return ((theta + 2.0 * math.pi * t) % (2.0 * math.pi), t)


def model_shift_point(x: float, y: float) -> tuple[float, float]:
    """Shift on the strip R x [-1, 1]: translate the middle, taper to the identity at the edges."""
    if abs(y) > 1.0:
        raise ModelError("y must lie in [-1, 1]")
    if abs(y) <= 0.5:
        return (x + 1.0, y)
    if y > 0:
        return (x + 2.0 - 2.0 * y, y)
    return (x + 2.0 + 2.0 * y, y)
