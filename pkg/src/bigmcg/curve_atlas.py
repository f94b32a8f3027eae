"""Curve atlas of the surface S(n): names, intersection oracle, generator tables,
separating cuts and homology classes.

Model: end ``j`` carries an infinite ray of handles ``(j, 1), (j, 2), ...`` attached
to a planar core.  On handle ``(j, i)`` live the meridians ``a`` and ``a'`` (homologous,
disjoint) and the longitude ``b``.  For ``i >= 1`` the chain curve ``c[j,i]`` joins
handles ``(j, i)`` and ``(j, i+1)``; ``c[j,0]`` joins handle ``(j, 1)`` to ``(j+1, 1)``
through the core.  ``d1``/``d2`` are the two interior curves of the four-holed sphere
bounded by ``a[j,i]``, ``c[j,i]``, ``c[j,i+1]``, ``a[j,i+2]``.

Tables return ``None`` where the image leaves the atlas.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

from .core import (
    FAMILIES,
    CurveId,
    Generator,
    H1Vector,
    Letter,
    ModelError,
    Rho1,
    Rho2,
    Rot,
    Shift,
    Tau1,
    Tau2,
    Twist,
    Word,
    alpha,
    beta,
    check_curve,
    delta,
    vec,
)

LANTERN = ("d1", "d2")
_CURVE_RE = re.compile(r"^\s*(a'|a|b|c|d1|d2)\[\s*(\d+)\s*,\s*(\d+)\s*\]\s*$")


def parse_curve(text: str) -> CurveId:
    m = _CURVE_RE.match(text)
    if not m:
        raise ModelError(f"bad curve literal {text!r}")
    return CurveId(m.group(1), int(m.group(2)), int(m.group(3)))


def render_curve(c: CurveId) -> str:
    return str(c)


@lru_cache(maxsize=64)
def atlas_curves(n: int, window: int) -> tuple[CurveId, ...]:
    """All atlas curves with index at most ``window``, in canonical order."""
    out = []
    for j in range(1, n + 1):
        for i in range(0, window + 1):
            for f in FAMILIES:
                if i == 0 and f != "c":
                    continue
                out.append(CurveId(f, j, i))
    return tuple(out)


def _next_end(j: int, n: int) -> int:
    return j % n + 1


def handles(c: CurveId, n: int) -> frozenset:
    """Handles a curve passes through."""
    j, k = c.end, c.index
    if c.family == "c":
        if k == 0:
            return frozenset({(j, 1), (_next_end(j, n), 1)})
        return frozenset({(j, k), (j, k + 1)})
    if c.family in LANTERN:
        return frozenset({(j, k), (j, k + 1), (j, k + 2)})
    return frozenset({(j, k)})


# intersection oracle ---------------------------------------------------------


def intersection(x: CurveId, y: CurveId, n: int) -> Optional[int]:
    """Geometric intersection number, or ``None`` when the model does not declare it."""
    return _intersection(x, y, n)


@lru_cache(maxsize=1 << 20)
def _intersection(x: CurveId, y: CurveId, n: int) -> Optional[int]:
    if x == y:
        return 0
    if x.family in LANTERN:
        return _lantern_intersection(x, y, n)
    if y.family in LANTERN:
        return _lantern_intersection(y, x, n)
    if x.family == "b" or y.family == "b":
        b, o = (x, y) if x.family == "b" else (y, x)
        if o.family in ("a", "a'"):
            return 1 if (o.end, o.index) == (b.end, b.index) else 0
        if o.family == "c":
            return 1 if (b.end, b.index) in handles(o, n) else 0
        return 0
    if n == 2 and x.family == y.family == "c" and x.index == y.index == 0:
        # two core arcs joining the same pair of handles
        return None
    return 0


def _lantern_intersection(d: CurveId, y: CurveId, n: int) -> Optional[int]:
    j, i = d.end, d.index
    if y.family in LANTERN:
        if (y.end, y.index) == (j, i):
            return 2
        return 0 if not (handles(d, n) & handles(y, n)) else None
    boundary = {CurveId("a", j, i), CurveId("a", j, i + 2), CurveId("c", j, i), CurveId("c", j, i + 1)}
    if y in boundary:
        return 0
    if y == CurveId("a", j, i + 1):
        return 2
    if not (handles(d, n) & handles(y, n)):
        return 0
    return None


def twisted_intersection(iab: int, k: int) -> int:
    """Intersection of T_a^k(b) with b given i(a, b)."""
    if iab < 0:
        raise ModelError("intersection numbers are nonnegative")
    return abs(k) * iab * iab


def commute(x: CurveId, y: CurveId, n: int) -> bool:
    """True when twists about x and y are known to commute."""
    return x == y or _intersection(x, y, n) == 0


@lru_cache(maxsize=64)
def _handle_buckets(n: int, window: int) -> dict:
    buckets: dict = {}
    for c in atlas_curves(n, window):
        for hd in handles(c, n):
            buckets.setdefault(hd, []).append(c)
    return buckets


@lru_cache(maxsize=1 << 16)
def neighbors(c: CurveId, n: int, window: int) -> tuple[CurveId, ...]:
    """Atlas curves within the window whose twists are not known to commute with T_c.

    Curves that share no handle are disjoint, so only handle-mates are examined.
    """
    buckets = _handle_buckets(n, window)
    found = set()
    for hd in handles(c, n):
        for z in buckets.get(hd, ()):
            if not commute(c, z, n):
                found.add(z)
    return tuple(sorted(found))


# end permutations ------------------------------------------------------------


def _wrap(j: int, n: int) -> int:
    return (j - 1) % n + 1


def generator_end_perm(g: Generator, n: int) -> tuple[int, ...]:
    """Permutation of ends induced by a generator, as the tuple of images of 1..n."""
    ends = range(1, n + 1)
    if isinstance(g, (Twist, Shift)):
        return tuple(ends)
    if isinstance(g, Rot):
        return tuple(_wrap(j + 1, n) for j in ends)
    if isinstance(g, Rho1):
        return tuple(_wrap(n + 2 - j, n) for j in ends)
    if isinstance(g, Rho2):
        return tuple(_wrap(n + 1 - j, n) for j in ends)
    if isinstance(g, (Tau1, Tau2)):
        return tuple({1: 2, 2: 1}.get(j, j) for j in ends)
    raise ModelError(f"unknown generator {g!r}")


def shift_path(g: Shift, n: int) -> list[Shift]:
    """Adjacent shifts whose product (rightmost first) is ``g``."""
    if g.adjacent(n):
        return [g]
    steps = []
    j = g.source
    while j != g.target:
        steps.append(Shift(j, _next_end(j, n)))
        j = _next_end(j, n)
    return steps


# generator tables ------------------------------------------------------------


def _shift_forward(c: CurveId, r: int, n: int) -> Optional[CurveId]:
    t = _next_end(r, n)
    f, j, k = c.family, c.end, c.index
    if f == "c" and k == 0:
        if j == r:
            return CurveId("c", t, 1)
        if j == t:
            return None
        if _next_end(j, n) == r:
            return CurveId("c", t, 0) if n == 3 else None
        return c
    if j == r:
        if k >= 2 or f == "c":
            return CurveId(f, r, k - 1)
        if f == "a'":
            return CurveId("a", t, 1)
        if f == "b":
            return CurveId("b", t, 1)
        return None
    if j == t:
        return CurveId(f, t, k + 1)
    return c


def _shift_backward(c: CurveId, r: int, n: int) -> Optional[CurveId]:
    t = _next_end(r, n)
    f, j, k = c.family, c.end, c.index
    if f == "c" and k == 0:
        if j == r:
            return CurveId("c", r, 1)
        if j == t:
            return CurveId("c", _wrap(r - 1, n), 0) if n == 3 else None
        if _next_end(j, n) == r:
            return None
        return c
    if j == r:
        return CurveId(f, r, k + 1)
    if j == t:
        if k >= 2:
            return CurveId(f, t, k - 1)
        if f == "c":
            return CurveId("c", r, 0)
        if f == "a":
            return CurveId("a'", r, 1)
        if f == "b":
            return CurveId("b", r, 1)
        return None
    return c


_FLIP = {"a": "a'", "a'": "a"}


def _core_chain_image(j: int, perm: tuple[int, ...], n: int) -> Optional[CurveId]:
    """Image of c[j,0] under an end permutation, when it is again a core chain curve."""
    if n == 2:
        return None
    pair = {perm[j - 1], perm[_next_end(j, n) - 1]}
    for k in pair:
        if _next_end(k, n) in pair:
            return CurveId("c", k, 0)
    return None


def _rigid_image(c: CurveId, g: Generator, n: int) -> Optional[CurveId]:
    """Tables of R, rho1, rho2 and tau1: permute ends, keep indices."""
    perm = generator_end_perm(g, n)
    f, j, k = c.family, c.end, c.index
    if f == "c" and k == 0:
        if isinstance(g, Rot):
            return CurveId("c", _wrap(j + 1, n), 0)
        if isinstance(g, Rho1):
            return CurveId("c", _wrap(1 - j, n), 0)
        if isinstance(g, Rho2):
            return CurveId("c", _wrap(-j, n), 0)
        return _core_chain_image(j, perm, n)
    flips = not isinstance(g, Rot)
    if f in LANTERN:
        return None if flips else CurveId(f, perm[j - 1], k)
    if flips:
        f = _FLIP.get(f, f)
    return CurveId(f, perm[j - 1], k)


def generator_image(g: Generator, c: CurveId, n: int, sign: int = 1) -> Optional[CurveId]:
    """Image of an atlas curve under a non-twist generator (or its inverse)."""
    check_curve(c, n)
    if isinstance(g, Twist):
        raise ModelError("twists act through the rewriting engine, not the tables")
    return _table(g, c, n, sign)


@lru_cache(maxsize=1 << 20)
def _table(g: Generator, c: CurveId, n: int, sign: int) -> Optional[CurveId]:
    if isinstance(g, Shift):
        steps = shift_path(g, n)
        if sign < 0:
            steps = list(reversed(steps))
        cur: Optional[CurveId] = c
        for s in steps:
            cur = (_shift_forward if sign > 0 else _shift_backward)(cur, s.source, n)
            if cur is None:
                return None
        return cur
    if isinstance(g, Rot):
        if sign > 0:
            return _rigid_image(c, g, n)
        return CurveId(c.family, _wrap(c.end - 1, n), c.index)
    if isinstance(g, (Rho1, Rho2, Tau1)):
        return _rigid_image(c, g, n)
    if isinstance(g, Tau2):
        h = Shift(1, 2)
        if sign > 0:
            mid = _table(h, c, n, 1)
            return None if mid is None else _rigid_image(mid, Tau1(), n)
        mid = _rigid_image(c, Tau1(), n)
        return None if mid is None else _table(h, mid, n, -1)
    raise ModelError(f"unknown generator {g!r}")


# separating cuts -------------------------------------------------------------


@dataclass(frozen=True)
class SepClass:
    """Separating class cutting off a single end; positive side is that end."""

    end: int
    orientation: str = "singleton"

    def __post_init__(self):
        if self.orientation not in ("singleton", "complement"):
            raise ModelError("orientation must be 'singleton' or 'complement'")


@dataclass(frozen=True)
class Cut:
    """Separating curve in the position of c[end, depth]: it cuts end ``end``
    between handles ``depth`` and ``depth + 1`` (depth 0 = next to the core)."""

    end: int
    depth: int

    def __post_init__(self):
        if self.depth < 0:
            raise ModelError("cut depth must be nonnegative")

    def __str__(self) -> str:
        return f"cut[{self.end},{self.depth}]"


def as_cut(c: Union[Cut, CurveId]) -> Cut:
    if isinstance(c, Cut):
        return c
    if c.family != "c":
        raise ModelError(f"{c} does not sit in a separating position")
    return Cut(c.end, c.index)


def genus_between(c1: Union[Cut, CurveId], c2: Union[Cut, CurveId]) -> int:
    """Genus of the subsurface between two separating cuts."""
    x, y = as_cut(c1), as_cut(c2)
    if x.end == y.end:
        return abs(x.depth - y.depth)
    return x.depth + y.depth


def crosses(curve: CurveId, cut: Cut, n: int) -> bool:
    """True when ``curve`` has handles on both sides of ``cut``."""
    sides = {h[0] == cut.end and h[1] > cut.depth for h in handles(curve, n)}
    return len(sides) == 2


@lru_cache(maxsize=1 << 18)
def cut_image(g: Generator, sign: int, cut: Cut, n: int) -> Optional[Cut]:
    if isinstance(g, Twist):
        return None if crosses(g.curve, cut, n) else cut
    if isinstance(g, Shift):
        steps = shift_path(g, n)
        if sign < 0:
            steps = list(reversed(steps))
        cur: Optional[Cut] = cut
        for s in steps:
            cur = _cut_shift(cur, s.source, _next_end(s.source, n), sign)
            if cur is None:
                return None
        return cur
    if isinstance(g, Tau2):
        h = Shift(1, 2)
        if sign > 0:
            mid = cut_image(h, 1, cut, n)
            return None if mid is None else cut_image(Tau1(), 1, mid, n)
        mid = cut_image(Tau1(), 1, cut, n)
        return None if mid is None else cut_image(h, -1, mid, n)
    perm = generator_end_perm(g, n)
    if sign < 0:
        inv = {v: k + 1 for k, v in enumerate(perm)}
        return Cut(inv[cut.end], cut.depth)
    return Cut(perm[cut.end - 1], cut.depth)


def _cut_shift(cut: Cut, r: int, t: int, sign: int) -> Optional[Cut]:
    if cut.end not in (r, t):
        return cut
    step = -1 if cut.end == r else 1
    depth = cut.depth + sign * step
    return Cut(cut.end, depth) if depth >= 0 else None


# homology classes ------------------------------------------------------------


def homology_class(c: CurveId, n: int) -> H1Vector:
    check_curve(c, n)
    return _homology_class(c, n)


@lru_cache(maxsize=1 << 16)
def _homology_class(c: CurveId, n: int) -> H1Vector:
    j, i = c.end, c.index
    if c.family in ("a", "a'"):
        return vec((1, alpha(j, i)))
    if c.family == "b":
        return vec((1, beta(j, i)))
    if c.family == "c":
        if i == 0:
            return vec((1, alpha(j, 1)), (-1, alpha(_next_end(j, n), 1)))
        return vec((1, alpha(j, i)), (-1, alpha(j, i + 1)))
    if c.family == "d1":
        return vec((1, alpha(j, i)), (-1, alpha(j, i + 1)), (1, alpha(j, i + 2)))
    return vec((1, alpha(j, i)), (-1, alpha(j, i + 2)))


def delta_class(j: int, n: int) -> H1Vector:
    """Class of the separating curve around end j, with the last one eliminated."""
    if j < n:
        return vec((1, delta(j)))
    return vec(*((-1, delta(k)) for k in range(1, n)))


# lantern axioms --------------------------------------------------------------


@dataclass(frozen=True)
class LanternAxiom:
    """Registered fact: ``word`` carries ``source`` to ``target``."""

    name: str
    anchor: str
    position: tuple[int, int]
    word: Word
    source: CurveId
    target: CurveId

    def inverse(self) -> "LanternAxiom":
        return LanternAxiom(self.name + "-inverse", self.anchor, self.position,
                            self.word.inverse(), self.target, self.source)


def _tw(f: str, j: int, i: int, sign: int = 1) -> Letter:
    return Letter(Twist(CurveId(f, j, i)), sign)


def lantern_axioms_at(j: int, i: int) -> tuple[LanternAxiom, LanternAxiom]:
    """The two figure facts at the lantern with boundary a[j,i], c[j,i], c[j,i+1], a[j,i+2].

    First: (B2 A1^-1)(C1 A1^-1)(A1 A2^-1)(C2 A1^-1) takes b2 to d1 and fixes a1
    (indices relative to i).  Second: (B3 A1^-1)(C2 A1^-1)(A3 A1^-1)(B3 A1^-1) takes d1
    to d2 and fixes a1.
    """
    a1, a2, a3 = i, i + 1, i + 2
    first = Word((
        _tw("b", j, a2), _tw("a", j, a1, -1),
        _tw("c", j, i), _tw("a", j, a1, -1),
        _tw("a", j, a1), _tw("a", j, a2, -1),
        _tw("c", j, i + 1), _tw("a", j, a1, -1),
    ))
    second = Word((
        _tw("b", j, a3), _tw("a", j, a1, -1),
        _tw("c", j, i + 1), _tw("a", j, a1, -1),
        _tw("a", j, a3), _tw("a", j, a1, -1),
        _tw("b", j, a3), _tw("a", j, a1, -1),
    ))
    return (
        LanternAxiom("b-to-d1", "lantern-figure", (j, i), first, CurveId("b", j, a2), CurveId("d1", j, i)),
        LanternAxiom("d1-to-d2", "lantern-figure", (j, i), second, CurveId("d1", j, i), CurveId("d2", j, i)),
    )


@lru_cache(maxsize=1 << 14)
def axioms_from(c: CurveId) -> tuple[LanternAxiom, ...]:
    """Registered axioms (and their inverses) whose source is ``c``."""
    out = []
    if c.family == "b" and c.index >= 2:
        out.append(lantern_axioms_at(c.end, c.index - 1)[0])
    elif c.family == "d1":
        first, second = lantern_axioms_at(c.end, c.index)
        out += [second, first.inverse()]
    elif c.family == "d2":
        out.append(lantern_axioms_at(c.end, c.index)[1].inverse())
    return tuple(out)
