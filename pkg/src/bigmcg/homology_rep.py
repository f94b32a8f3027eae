"""Exact action of words on first homology via transvections and index shifts."""
from __future__ import annotations

import re
from functools import lru_cache
from typing import Optional, Union

from .core import (
    BasisIndex,
    CurveId,
    Generator,
    H1Vector,
    Letter,
    ModelError,
    Rot,
    Shift,
    Tau2,
    Tau1,
    Twist,
    Word,
    alpha,
    beta,
    check_curve,
    check_word,
    delta,
)
from .curve_atlas import (
    _homology_class,
    _next_end,
    delta_class,
    generator_end_perm,
    homology_class,
    intersection,
    shift_path,
)


class _UnknownType:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Unknown"

    def __bool__(self) -> bool:
        return False


UNKNOWN = _UnknownType()

_VEC_RE = re.compile(r"^\s*(alpha|beta)\[\s*(\d+)\s*,\s*(\d+)\s*\]\s*$|^\s*delta\[\s*(\d+)\s*\]\s*$")


def parse_basis(text: str, n: int) -> H1Vector:
    m = _VEC_RE.match(text)
    if not m:
        raise ModelError(f"bad basis literal {text!r}")
    if m.group(4) is not None:
        j = int(m.group(4))
        if not 1 <= j <= n:
            raise ModelError(f"delta[{j}] out of range for S({n})")
        return delta_class(j, n)
    j, i = int(m.group(2)), int(m.group(3))
    if not 1 <= j <= n:
        raise ModelError(f"end {j} out of range for S({n})")
    return H1Vector.basis(BasisIndex(m.group(1), j, i))


@lru_cache(maxsize=64)
def basis(n: int, window: int) -> tuple[BasisIndex, ...]:
    """Basis vectors of index at most ``window``: per end and index alpha then beta, deltas last."""
    out = []
    for j in range(1, n + 1):
        for i in range(1, window + 1):
            out += [alpha(j, i), beta(j, i)]
    out += [delta(j) for j in range(1, n)]
    return tuple(out)


@lru_cache(maxsize=1 << 16)
def _dual(e: BasisIndex) -> tuple[Optional[BasisIndex], int]:
    """Partner on the same handle and the sign of <e, partner>."""
    if e.kind == "alpha":
        return BasisIndex("beta", e.end, e.index), 1
    if e.kind == "beta":
        return BasisIndex("alpha", e.end, e.index), -1
    return None, 0


def pairing(x: H1Vector, y: H1Vector) -> int:
    """Intersection form: <alpha, beta> = 1 on each handle, deltas in the radical."""
    dy = y.as_dict()
    total = 0
    for e, v in x.coeffs:
        partner, sign = _dual(e)
        if sign:
            total += sign * v * dy.get(partner, 0)
    return total


def transvection(c: H1Vector, x: H1Vector, k: int = 1) -> H1Vector:
    """x + k<x, c> c, the homology action of the k-th power of the twist about c."""
    p = pairing(x, c)
    if p == 0 or k == 0:
        return x
    return x + c.scale(k * p)


# per-generator basis maps ----------------------------------------------------


def _handle_forward(j: int, i: int, r: int, n: int) -> tuple[int, int]:
    t = _next_end(r, n)
    if j == r:
        return (r, i - 1) if i >= 2 else (t, 1)
    if j == t:
        return (t, i + 1)
    return (j, i)


def _handle_backward(j: int, i: int, r: int, n: int) -> tuple[int, int]:
    t = _next_end(r, n)
    if j == t:
        return (t, i - 1) if i >= 2 else (r, 1)
    if j == r:
        return (r, i + 1)
    return (j, i)


@lru_cache(maxsize=1 << 18)
def basis_image(g: Generator, sign: int, e: BasisIndex, n: int) -> H1Vector:
    """Image of a basis vector under a non-twist generator (or its inverse)."""
    if isinstance(g, Twist):
        raise ModelError("use transvection for twists")
    if isinstance(g, Shift):
        if e.kind == "delta":
            return H1Vector.basis(e)
        steps = shift_path(g, n)
        if sign < 0:
            steps = list(reversed(steps))
        j, i = e.end, e.index
        for s in steps:
            j, i = (_handle_forward if sign > 0 else _handle_backward)(j, i, s.source, n)
        return H1Vector.basis(BasisIndex(e.kind, j, i))
    if isinstance(g, Tau2):
        h = Shift(1, 2)
        if sign > 0:
            return _apply_linear(lambda b: basis_image(Tau1(), 1, b, n), basis_image(h, 1, e, n))
        return _apply_linear(lambda b: basis_image(h, -1, b, n), basis_image(Tau1(), 1, e, n))
    perm = generator_end_perm(g, n)
    if sign < 0:
        if not isinstance(g, Rot):
            sign = 1  # rho and tau1 are involutions
        else:
            inv = [0] * n
            for k, v in enumerate(perm):
                inv[v - 1] = k + 1
            perm = tuple(inv)
    if e.kind == "delta":
        return delta_class(perm[e.end - 1], n)
    return H1Vector.basis(BasisIndex(e.kind, perm[e.end - 1], e.index))


def _apply_linear(f, x: H1Vector) -> H1Vector:
    out: dict[BasisIndex, int] = {}
    for e, v in x.coeffs:
        for e2, v2 in f(e).coeffs:
            out[e2] = out.get(e2, 0) + v * v2
    return H1Vector.from_dict(out)


def act_letter(letter: Letter, x: H1Vector, n: int) -> H1Vector:
    g = letter.gen
    if isinstance(g, Twist):
        return transvection(homology_class(g.curve, n), x, letter.sign)
    return _apply_linear(lambda e: basis_image(g, letter.sign, e, n), x)


def act(w: Word, x: H1Vector, n: int, window: Optional[int] = None) -> Union[H1Vector, "_UnknownType"]:
    """Apply ``w`` (rightmost letter first) to ``x``.

    With a window, returns ``UNKNOWN`` if an intermediate vector has index beyond
    the window plus slack (word length and the deepest twist curve).
    """
    check_word(w, n)
    limit = None
    if window is not None:
        deepest = max((l.gen.curve.index + 2 for l in w if isinstance(l.gen, Twist)), default=0)
        limit = max(window, deepest) + len(w)
    return act_unchecked(w, x, n, limit)


def act_unchecked(w: Word, x: H1Vector, n: int, limit: Optional[int] = None):
    """``act`` for a word already validated against n; ``limit`` caps the support index."""
    for letter in reversed(w.letters):
        x = act_letter(letter, x, n)
        if limit is not None and x.max_index() > limit:
            return UNKNOWN
    return x


def check_twist_formula(a: CurveId, b: CurveId, k: int, n: int) -> bool:
    """|<T_a^k [b], [b]>| equals |k| i(a,b)^2 for atlas pairs meeting at most once."""
    check_curve(a, n)
    check_curve(b, n)
    i = intersection(a, b, n)
    if i not in (0, 1):
        raise ModelError(f"pair {a}, {b} does not meet at most once")
    cb = _homology_class(b, n)
    moved = transvection(_homology_class(a, n), cb, k)
    return abs(pairing(moved, cb)) == abs(k) * i * i
