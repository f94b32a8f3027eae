"""Finite-type surface signatures, the surfaces S(n), their compact truncations
and Dehn-twist generator counts."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .core import ModelError

NAMED_SURFACES = ("LochNess", "JacobsLadder", "CantorTree", "BloomingCantorTree", "Flute")


class Unsupported(ModelError):
    """The requested quantity is only asserted for a narrower range of inputs."""


@dataclass(frozen=True)
class FiniteTypeSig:
    genus: int
    boundary: int = 0
    punctures: int = 0

    def __post_init__(self):
        for name in ("genus", "boundary", "punctures"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 0:
                raise ModelError(f"{name} must be a nonnegative integer, got {value!r}")

    def __str__(self) -> str:
        return f"{self.genus},{self.boundary},{self.punctures}"


@dataclass(frozen=True)
class Sn:
    """Surface with ``ends`` ends, every one accumulated by genus, and no boundary."""

    ends: int

    def __post_init__(self):
        if self.ends < 1:
            raise ModelError("S(n) needs at least one end")

    def __str__(self) -> str:
        return f"S({self.ends})"


@dataclass(frozen=True)
class Named:
    name: str

    def __post_init__(self):
        if self.name not in NAMED_SURFACES:
            raise ModelError(f"unknown surface {self.name!r}; known: {', '.join(NAMED_SURFACES)}")

    def __str__(self) -> str:
        return self.name


SurfaceSig = Union[FiniteTypeSig, Sn, Named]


def parse_signature(text: str) -> FiniteTypeSig:
    """Parse ``g,b,n``."""
    m = re.fullmatch(r"\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*", text)
    if not m:
        raise ModelError(f"expected 'g,b,n', got {text!r}")
    return FiniteTypeSig(*map(int, m.groups()))


def euler_characteristic(sig: FiniteTypeSig) -> int:
    return 2 - 2 * sig.genus - sig.boundary - sig.punctures


def finite_homeomorphic(s1: FiniteTypeSig, s2: FiniteTypeSig) -> bool:
    return (s1.genus, s1.boundary, s1.punctures) == (s2.genus, s2.boundary, s2.punctures)


def generator_count(sig: FiniteTypeSig) -> int:
    """Number of Dehn twists in the standard generating set (genus at least 2)."""
    if sig.genus < 2:
        raise Unsupported(f"generator counts are only known here for genus >= 2, got {sig.genus}")
    if sig.boundary == 0 and sig.punctures == 0:
        return 2 * sig.genus + 1
    return 2 * sig.genus + sig.boundary + sig.punctures


def truncation(ends: int, level: int) -> FiniteTypeSig:
    """Compact piece of S(ends) holding ``level`` handles on each end."""
    if ends < 1 or level < 1:
        raise ModelError("ends and level must be positive")
    return FiniteTypeSig(ends * level, ends, 0)


def nested(inner: FiniteTypeSig, outer: FiniteTypeSig) -> bool:
    """Whether ``outer`` dominates ``inner`` field by field."""
    return (inner.genus <= outer.genus and inner.boundary <= outer.boundary
            and inner.punctures <= outer.punctures)
