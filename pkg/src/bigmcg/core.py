"""Value types shared by every module: curve names, generators, words, homology vectors."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Union

FAMILIES = ("a", "a'", "b", "c", "d1", "d2")
_FAMILY_RANK = {f: r for r, f in enumerate(FAMILIES)}


class ModelError(ValueError):
    """Raised for malformed curve names, generators or parameters."""


class _CurveFields(NamedTuple):
    family: str
    end: int
    index: int


class CurveId(_CurveFields):
    """Atlas curve name; a tuple so that hashing and equality stay cheap."""

    __slots__ = ()

    def __new__(cls, family: str, end: int, index: int):
        if family not in _FAMILY_RANK:
            raise ModelError(f"unknown curve family {family!r}")
        low = 0 if family == "c" else 1
        if index < low:
            raise ModelError(f"index {index} out of range for family {family}")
        if end < 1:
            raise ModelError(f"end {end} must be positive")
        return super().__new__(cls, family, end, index)

    @property
    def sort_key(self) -> tuple[int, int, int]:
        return (self.end, self.index, _FAMILY_RANK[self.family])

    def __lt__(self, other: "CurveId") -> bool:
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        return f"{self.family}[{self.end},{self.index}]"


def check_curve(c: CurveId, n: int) -> None:
    if not 1 <= c.end <= n:
        raise ModelError(f"curve {c} does not live on S({n})")


# generators -----------------------------------------------------------------


class Twist(NamedTuple):
    curve: CurveId

    def __str__(self) -> str:
        return f"T[{self.curve.family},{self.curve.end},{self.curve.index}]"


@dataclass(frozen=True)
class Shift:
    """Handle shift with repelling end ``source`` and attracting end ``target``."""

    source: int
    target: int

    def __post_init__(self):
        if self.source == self.target:
            raise ModelError("shift endpoints must be distinct")
        if self.source < 1 or self.target < 1:
            raise ModelError("shift endpoints must be positive")

    def adjacent(self, n: int) -> bool:
        return self.target == self.source % n + 1

    def __str__(self) -> str:
        return f"h[{self.source},{self.target}]"


@dataclass(frozen=True)
class Rot:
    def __str__(self) -> str:
        return "R"


@dataclass(frozen=True)
class Rho1:
    def __str__(self) -> str:
        return "rho1"


@dataclass(frozen=True)
class Rho2:
    def __str__(self) -> str:
        return "rho2"


@dataclass(frozen=True)
class Tau1:
    def __str__(self) -> str:
        return "tau1"


@dataclass(frozen=True)
class Tau2:
    def __str__(self) -> str:
        return "tau2"


Generator = Union[Twist, Shift, Rot, Rho1, Rho2, Tau1, Tau2]
INVOLUTIONS = (Rho1, Rho2, Tau1, Tau2)


def check_generator(g: Generator, n: int) -> None:
    if isinstance(g, Twist):
        check_curve(g.curve, n)
    elif isinstance(g, Shift):
        if g.source > n or g.target > n:
            raise ModelError(f"shift {g} does not live on S({n})")
    elif isinstance(g, (Tau1, Tau2)) and n < 2:
        raise ModelError("tau involutions need at least two ends")


class _LetterFields(NamedTuple):
    gen: Generator
    sign: int


class Letter(_LetterFields):
    __slots__ = ()

    def __new__(cls, gen: Generator, sign: int = 1):
        if sign not in (1, -1):
            raise ModelError("letter sign must be +1 or -1")
        return super().__new__(cls, gen, sign)

    def inverse(self) -> "Letter":
        return Letter(self.gen, -self.sign)


@dataclass(frozen=True)
class Word:
    letters: tuple[Letter, ...] = ()

    @classmethod
    def of(cls, *items: Union[Generator, Letter, "Word"]) -> "Word":
        out: list[Letter] = []
        for it in items:
            if isinstance(it, Word):
                out.extend(it.letters)
            elif isinstance(it, Letter):
                out.append(it)
            else:
                out.append(Letter(it, 1))
        return cls(tuple(out))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        return Word(base.letters * abs(k))

    def inverse(self) -> "Word":
        return Word(tuple(l.inverse() for l in reversed(self.letters)))

    def conj(self, by: "Word") -> "Word":
        """``self`` conjugated by ``by``: by * self * inv(by)."""
        return by * self * by.inverse()

    def is_twist_word(self) -> bool:
        return all(isinstance(l.gen, Twist) for l in self.letters)


def check_word(w: Word, n: int) -> None:
    for l in w:
        check_generator(l.gen, n)


# homology -------------------------------------------------------------------

_KIND_RANK = {"alpha": 0, "beta": 1, "delta": 2}


@dataclass(frozen=True)
class BasisIndex:
    kind: str  # alpha | beta | delta
    end: int
    index: int = 0

    def __post_init__(self):
        if self.kind not in _KIND_RANK:
            raise ModelError(f"unknown basis kind {self.kind!r}")
        if self.kind == "delta":
            if self.index != 0:
                raise ModelError("delta classes carry no index")
        elif self.index < 1:
            raise ModelError("alpha/beta index must be >= 1")

    @property
    def sort_key(self) -> tuple:
        if self.kind == "delta":
            return (1, self.end, 0, 0)
        return (0, self.end, self.index, _KIND_RANK[self.kind])

    def __lt__(self, other: "BasisIndex") -> bool:
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        if self.kind == "delta":
            return f"delta[{self.end}]"
        return f"{self.kind}[{self.end},{self.index}]"


def alpha(j: int, i: int) -> BasisIndex:
    return BasisIndex("alpha", j, i)


def beta(j: int, i: int) -> BasisIndex:
    return BasisIndex("beta", j, i)


def delta(j: int) -> BasisIndex:
    return BasisIndex("delta", j)


@dataclass(frozen=True)
class H1Vector:
    """Finitely supported integer vector; zero coefficients are never stored."""

    coeffs: tuple[tuple[BasisIndex, int], ...] = ()
    _map: dict = field(default=None, compare=False, hash=False, repr=False)

    @classmethod
    def from_dict(cls, d: dict[BasisIndex, int]) -> "H1Vector":
        items = tuple(sorted(((k, v) for k, v in d.items() if v), key=lambda kv: kv[0].sort_key))
        return cls(items)

    @classmethod
    def basis(cls, e: BasisIndex) -> "H1Vector":
        return cls(((e, 1),))

    def as_dict(self) -> dict[BasisIndex, int]:
        if self._map is None:
            object.__setattr__(self, "_map", dict(self.coeffs))
        return self._map

    def __getitem__(self, e: BasisIndex) -> int:
        return self.as_dict().get(e, 0)

    def support(self) -> list[BasisIndex]:
        return [k for k, _ in self.coeffs]

    def __add__(self, other: "H1Vector") -> "H1Vector":
        d = dict(self.as_dict())
        for k, v in other.coeffs:
            d[k] = d.get(k, 0) + v
        return H1Vector.from_dict(d)

    def __neg__(self) -> "H1Vector":
        return H1Vector(tuple((k, -v) for k, v in self.coeffs))

    def __sub__(self, other: "H1Vector") -> "H1Vector":
        return self + (-other)

    def scale(self, k: int) -> "H1Vector":
        if k == 0:
            return H1Vector()
        return H1Vector(tuple((e, k * v) for e, v in self.coeffs))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def max_index(self) -> int:
        return max((e.index for e, _ in self.coeffs), default=0)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, v in self.coeffs:
            sign = "-" if v < 0 else "+"
            mag = "" if abs(v) == 1 else f"{abs(v)}*"
            parts.append(f"{sign}{mag}{e}")
        text = "".join(parts)
        return text[1:] if text.startswith("+") else text


def vec(*terms: tuple[int, BasisIndex]) -> H1Vector:
    d: dict[BasisIndex, int] = {}
    for k, e in terms:
        d[e] = d.get(e, 0) + k
    return H1Vector.from_dict(d)


def iter_window_letters(w: Word) -> Iterable[Letter]:
    """Letters in application order (rightmost first)."""
    return reversed(w.letters)
