"""Finite symbolic codes for spaces of ends, derivative-based fingerprints, and
the classification comparison on this code class."""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Optional, Union

from .core import ModelError
from .surface_model import NAMED_SURFACES

INF = "inf"
OMEGA = "omega"

Count = Union[int, str]


@dataclass(frozen=True)
class IsolatedEnd:
    np: bool

    def __str__(self) -> str:
        return f"isolated({_mark(self.np)})"


@dataclass(frozen=True)
class CantorBlock:
    np: bool

    def __str__(self) -> str:
        return f"cantor({_mark(self.np)})"


@dataclass(frozen=True)
class OmegaChain:
    """Countably many isolated ends converging to one limit end."""

    limit_np: bool
    tail_np: bool

    def __post_init__(self):
        # the marked set is closed, so a limit of non-planar ends is non-planar
        if self.tail_np and not self.limit_np:
            raise ModelError("a limit of non-planar ends must itself be non-planar")

    def __str__(self) -> str:
        return f"omega({_mark(self.limit_np)}>{_mark(self.tail_np)})"


Component = Union[IsolatedEnd, CantorBlock, OmegaChain]
_RANK = {IsolatedEnd: 0, OmegaChain: 1, CantorBlock: 2}


def _mark(np: bool) -> str:
    return "np" if np else "p"


def _component_key(c: Component) -> tuple:
    if isinstance(c, OmegaChain):
        return (_RANK[OmegaChain], c.limit_np, c.tail_np)
    return (_RANK[type(c)], c.np, False)


@dataclass(frozen=True)
class EndSpaceCode:
    """Finite multiset of components, stored in a canonical order."""

    components: tuple[Component, ...] = ()

    def __post_init__(self):
        for c in self.components:
            if not isinstance(c, (IsolatedEnd, CantorBlock, OmegaChain)):
                raise ModelError(f"not an end-space component: {c!r}")
        object.__setattr__(self, "components", tuple(sorted(self.components, key=_component_key)))

    @classmethod
    def of(cls, *components: Component) -> "EndSpaceCode":
        return cls(tuple(components))

    def counter(self) -> Counter:
        return Counter(self.components)

    def is_finite(self) -> bool:
        return all(isinstance(c, IsolatedEnd) for c in self.components)

    def has_np(self) -> bool:
        return any(c.limit_np if isinstance(c, OmegaChain) else c.np for c in self.components)

    def __add__(self, other: "EndSpaceCode") -> "EndSpaceCode":
        return EndSpaceCode(self.components + other.components)

    def __str__(self) -> str:
        return " + ".join(map(str, self.components)) or "empty"


@dataclass(frozen=True)
class SurfaceDesc:
    boundary: Count
    genus: Count
    code: EndSpaceCode

    def __post_init__(self):
        for name in ("boundary", "genus"):
            v = getattr(self, name)
            if v != INF and not (isinstance(v, int) and v >= 0):
                raise ModelError(f"{name} must be a nonnegative integer or {INF!r}")
        if self.code.has_np() and self.genus != INF:
            raise ModelError("a non-planar end forces infinite genus")
        if self.genus == INF and not self.code.has_np():
            raise ModelError("infinite genus needs an end accumulated by genus")

    @classmethod
    def from_code(cls, code: EndSpaceCode, boundary: Count = 0, genus: Optional[Count] = None) -> "SurfaceDesc":
        if genus is None:
            genus = INF if code.has_np() else 0
        return cls(boundary, genus, code)


@dataclass(frozen=True)
class Fingerprint:
    isolated_count: Count
    has_cantor: bool
    derivative_depth: Count
    np_profile: tuple[tuple[Count, Count], ...]
    perfect_marks: frozenset = frozenset()

    def __str__(self) -> str:
        ranks = " ".join(f"[np={a} p={b}]" for a, b in self.np_profile)
        marks = ",".join(sorted(_mark(m) for m in self.perfect_marks)) or "-"
        return (f"isolated={self.isolated_count} cantor={str(self.has_cantor).lower()} "
                f"depth={self.derivative_depth} ranks={ranks or '-'} perfect={marks}")


def named_code(name: str) -> EndSpaceCode:
    table = {
        "LochNess": (IsolatedEnd(True),),
        "JacobsLadder": (IsolatedEnd(True), IsolatedEnd(True)),
        "CantorTree": (CantorBlock(False),),
        "BloomingCantorTree": (CantorBlock(True),),
        "Flute": (OmegaChain(False, False),),
    }
    if name not in table:
        raise ModelError(f"unknown surface {name!r}; known: {', '.join(NAMED_SURFACES)}")
    return EndSpaceCode(table[name])


def sn_code(n: int) -> EndSpaceCode:
    if n < 1:
        raise ModelError("S(n) needs at least one end")
    return EndSpaceCode((IsolatedEnd(True),) * n)


def named_desc(name: str) -> SurfaceDesc:
    return SurfaceDesc.from_code(named_code(name))


def cb_derivative(code: EndSpaceCode) -> EndSpaceCode:
    """Remove isolated points: chains collapse to their limit, Cantor blocks stay."""
    out: list[Component] = []
    for c in code.components:
        if isinstance(c, OmegaChain):
            out.append(IsolatedEnd(c.limit_np))
        elif isinstance(c, CantorBlock):
            out.append(c)
    return EndSpaceCode(tuple(out))


def _isolated_counts(code: EndSpaceCode) -> tuple[Count, Count]:
    counts: dict[bool, Count] = {True: 0, False: 0}
    for c in code.components:
        if isinstance(c, IsolatedEnd) and counts[c.np] != OMEGA:
            counts[c.np] += 1
        elif isinstance(c, OmegaChain):
            counts[c.tail_np] = OMEGA
    return counts[True], counts[False]


def _total(a: Count, b: Count) -> Count:
    return OMEGA if OMEGA in (a, b) else a + b


def fingerprint(code: EndSpaceCode) -> Fingerprint:
    np0, p0 = _isolated_counts(code)
    profile = []
    stage = code
    depth: Count = 0
    while stage.components:
        nxt = cb_derivative(stage)
        if nxt == stage:
            depth = OMEGA
            break
        profile.append(_isolated_counts(stage))
        depth += 1
        stage = nxt
    perfect = frozenset(c.np for c in code.components if isinstance(c, CantorBlock))
    return Fingerprint(
        isolated_count=_total(np0, p0),
        has_cantor=bool(perfect),
        derivative_depth=depth,
        np_profile=tuple(profile),
        perfect_marks=perfect,
    )


def normalize(code: EndSpaceCode) -> EndSpaceCode:
    """Canonical representative: one Cantor block per marking, and isolated ends
    merged into a chain whose tail carries the same marking."""
    tails = {c.tail_np for c in code.components if isinstance(c, OmegaChain)}
    out: list[Component] = []
    for c in code.components:
        if isinstance(c, IsolatedEnd) and c.np in tails:
            continue
        if isinstance(c, CantorBlock) and c in out:
            continue
        out.append(c)
    return EndSpaceCode(tuple(out))


@dataclass(frozen=True)
class Homeomorphic:
    def __str__(self) -> str:
        return "Homeomorphic"


@dataclass(frozen=True)
class Distinct:
    reason: str

    def __str__(self) -> str:
        return f"Distinct({self.reason})"


@dataclass(frozen=True)
class Inconclusive:
    def __str__(self) -> str:
        return "Inconclusive"


Comparison = Union[Homeomorphic, Distinct, Inconclusive]


def compare(a: SurfaceDesc, b: SurfaceDesc) -> Comparison:
    if a.boundary != b.boundary:
        return Distinct(f"boundary {a.boundary} vs {b.boundary}")
    if a.genus != b.genus:
        return Distinct(f"genus {a.genus} vs {b.genus}")
    if a.code.is_finite() and b.code.is_finite():
        if a.code.counter() == b.code.counter():
            return Homeomorphic()
        np_a, p_a = _isolated_counts(a.code)
        np_b, p_b = _isolated_counts(b.code)
        return Distinct(f"ends np={np_a} p={p_a} vs np={np_b} p={p_b}")
    fa, fb = fingerprint(a.code), fingerprint(b.code)
    if fa != fb:
        return Distinct(f"{fa} vs {fb}")
    if normalize(a.code) == normalize(b.code):
        return Homeomorphic()
    return Inconclusive()


# literals --------------------------------------------------------------------------

_MARKS = {"np": True, "p": False}


def _marks(text: str, literal: str) -> list[bool]:
    out = []
    for tok in filter(None, (t.strip() for t in text.split(","))):
        if tok not in _MARKS:
            raise ModelError(f"bad marking {tok!r} in {literal!r}; use np or p")
        out.append(_MARKS[tok])
    return out


def _parse_part(part: str) -> EndSpaceCode:
    part = part.strip()
    if part in NAMED_SURFACES:
        return named_code(part)
    m = re.fullmatch(r"S\((\d+)\)", part)
    if m:
        return sn_code(int(m.group(1)))
    kind, sep, body = part.partition(":")
    if not sep:
        raise ModelError(f"bad end-space literal {part!r}")
    kind = kind.strip()
    if kind == "finite":
        return EndSpaceCode(tuple(IsolatedEnd(np) for np in _marks(body, part)))
    if kind == "cantor":
        return EndSpaceCode(tuple(CantorBlock(np) for np in _marks(body, part)))
    if kind == "omega":
        chains = []
        for tok in filter(None, (t.strip() for t in body.split(","))):
            limit, arrow, tail = tok.partition(">")
            if not arrow or limit.strip() not in _MARKS or tail.strip() not in _MARKS:
                raise ModelError(f"bad chain {tok!r}; use limit>tail, e.g. p>p")
            chains.append(OmegaChain(_MARKS[limit.strip()], _MARKS[tail.strip()]))
        return EndSpaceCode(tuple(chains))
    raise ModelError(f"unknown component kind {kind!r}")


def parse_code(text: str) -> EndSpaceCode:
    """Parse ``finite:np,np,p``, ``cantor:np``, ``omega:p>p``, a surface name or
    ``S(n)``; parts may be joined with ``+``."""
    code = EndSpaceCode()
    for part in text.split("+"):
        code = code + _parse_part(part)
    return code
