"""Permutation topology on automorphism groups of countable graphs: the
first-disagreement metric, its two-sided version, stabilizer neighbourhoods,
finitely supported approximations, and a Cauchy sequence with no limit."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

from .core import ModelError

Oracle = Callable[[int], int]


def _complete(i: int, j: int) -> bool:
    return i != j


@dataclass(frozen=True)
class CountableGraph:
    """Vertices x_1, x_2, ... (by index) with a decidable adjacency oracle."""

    adjacent: Callable[[int, int], bool] = _complete
    size: Optional[int] = None
    name: str = "complete"

    def vertices(self, depth: int) -> range:
        top = depth if self.size is None else min(depth, self.size)
        return range(1, top + 1)


COMPLETE = CountableGraph()


@dataclass(frozen=True)
class AutMap:
    """Bijection of the vertex indices given by a forward and a backward oracle."""

    forward: Oracle
    backward: Oracle
    depth: int = 64
    graph: CountableGraph = COMPLETE
    label: str = "g"

    def __call__(self, i: int) -> int:
        return self.forward(i)

    def inverse(self) -> "AutMap":
        return AutMap(self.backward, self.forward, self.depth, self.graph, f"inv({self.label})")

    def then(self, other: "AutMap") -> "AutMap":
        """Apply ``self`` first, then ``other``."""
        f, g = self.forward, other.forward
        fb, gb = self.backward, other.backward
        return AutMap(lambda i: g(f(i)), lambda i: fb(gb(i)), min(self.depth, other.depth),
                      self.graph, f"{other.label}*{self.label}")

    def problems(self, depth: Optional[int] = None) -> list[str]:
        """Violations of bijectivity or adjacency among the first ``depth`` vertices."""
        depth = self.depth if depth is None else depth
        out = []
        idx = self.graph.vertices(depth)
        for i in idx:
            if self.backward(self.forward(i)) != i:
                out.append(f"backward(forward({i})) != {i}")
            if self.forward(self.backward(i)) != i:
                out.append(f"forward(backward({i})) != {i}")
        adj = self.graph.adjacent
        for i in idx:
            for j in idx:
                if i < j and adj(i, j) != adj(self.forward(i), self.forward(j)):
                    out.append(f"adjacency of ({i},{j}) not preserved")
        return out

    def is_automorphism(self, depth: Optional[int] = None) -> bool:
        return not self.problems(depth)


def identity_map(depth: int = 64, graph: CountableGraph = COMPLETE) -> AutMap:
    return AutMap(lambda i: i, lambda i: i, depth, graph, "id")


def finite_support_map(assignment: dict[int, int], depth: int = 64, graph: CountableGraph = COMPLETE,
                       label: str = "h") -> AutMap:
    """Permutation moving only the keys of ``assignment``."""
    if sorted(assignment) != sorted(assignment.values()):
        raise ModelError("a finitely supported bijection must permute its support")
    forward = dict(assignment)
    backward = {v: k for k, v in forward.items()}
    return AutMap(lambda i: forward.get(i, i), lambda i: backward.get(i, i), depth, graph, label)


# exact dyadic distances ----------------------------------------------------------


@dataclass(frozen=True, order=True)
class Dyadic:
    """Exact distance.  With ``bound`` set the true distance is at most ``ceiling``:
    the maps agreed on every inspected vertex."""

    value: Fraction
    bound: bool = field(default=False, compare=False)
    ceiling: Fraction = field(default=Fraction(0), compare=False)

    @classmethod
    def power(cls, k: int) -> "Dyadic":
        return cls(Fraction(1, 2 ** k))

    def upper(self) -> Fraction:
        return self.ceiling if self.bound else self.value

    def __add__(self, other: "Dyadic") -> "Dyadic":
        bound = self.bound or other.bound
        ceiling = self.upper() + other.upper() if bound else Fraction(0)
        return Dyadic(self.value + other.value, bound, ceiling)

    def __str__(self) -> str:
        return f"<= {self.ceiling}" if self.bound else str(self.value)


def metric_d(f: AutMap, g: AutMap, depth: int) -> Dyadic:
    """2^-i at the first vertex x_i where f and g disagree."""
    if depth < 1:
        raise ModelError("depth must be at least 1")
    for i in range(1, depth + 1):
        if f(i) != g(i):
            return Dyadic.power(i)
    return Dyadic(Fraction(0), True, Fraction(1, 2 ** (depth + 1)))


def metric_dprime(f: AutMap, g: AutMap, depth: int) -> Dyadic:
    return metric_d(f, g, depth) + metric_d(f.inverse(), g.inverse(), depth)


def shift_example(n: int) -> AutMap:
    """Cycle x_1 -> x_2 -> ... -> x_n -> x_1 on the complete graph, identity beyond."""
    if n < 1:
        raise ModelError("n must be positive")

    def forward(i: int) -> int:
        if i < n:
            return i + 1
        return 1 if i == n else i

    def backward(i: int) -> int:
        if i == 1:
            return n
        return i - 1 if i <= n else i

    return AutMap(forward, backward, label=f"g_{n}")


# Cauchy behaviour ------------------------------------------------------------------


@dataclass(frozen=True)
class CauchyReport:
    N: int
    depth: int
    forward_ok: bool
    inverse_ok: bool
    forward_worst: Fraction
    inverse_values: tuple[Fraction, ...]
    forward_violation: Optional[tuple[int, int]] = None
    inverse_violation: Optional[tuple[int, int]] = None

    def lines(self) -> list[str]:
        bound = Fraction(1, 2 ** self.N)
        fwd = "PASS" if self.forward_ok else "FAIL"
        inv = "PASS" if self.inverse_ok else "FAIL"
        fdetail = f"max d={self.forward_worst} bound={bound}"
        if self.forward_violation:
            fdetail += f" violated at {self.forward_violation}"
        values = ",".join(str(v) for v in self.inverse_values) or "-"
        idetail = f"d values={{{values}}} bound={bound}"
        if self.inverse_violation:
            idetail += f" violated at {self.inverse_violation}"
        return [
            f"{fwd} cauchy-forward cauchy-family {fdetail}",
            f"{inv} cauchy-inverse cauchy-family {idetail}",
        ]


def cauchy_report(family: Callable[[int], AutMap], N: int, depth: int) -> CauchyReport:
    """Check d(g_n, g_m) <= 2^-N for all N < n < m <= depth, and the same for inverses."""
    if N < 0 or depth < 1:
        raise ModelError("need N >= 0 and depth >= 1")
    bound = Fraction(1, 2 ** N)
    maps = {k: family(k) for k in range(max(N, 0) + 1, depth + 1)}
    forward_ok = inverse_ok = True
    worst = Fraction(0)
    inverse_values: set[Fraction] = set()
    fviol = iviol = None
    for n in maps:
        for m in maps:
            if not n < m:
                continue
            d = metric_d(maps[n], maps[m], depth).value
            worst = max(worst, d)
            if d > bound and fviol is None:
                forward_ok, fviol = False, (n, m)
            di = metric_d(maps[n].inverse(), maps[m].inverse(), depth).value
            inverse_values.add(di)
            if di > bound and iviol is None:
                inverse_ok, iviol = False, (n, m)
    return CauchyReport(N, depth, forward_ok, inverse_ok, worst, tuple(sorted(inverse_values)), fviol, iviol)


@dataclass(frozen=True)
class LimitReport:
    bound: int
    values: dict
    injective: bool
    preimages_of_first: tuple[int, ...]

    @property
    def no_preimage_of_first(self) -> bool:
        """Certificate that no x_i with i <= bound is sent to x_1."""
        return not self.preimages_of_first


class NoLimit(ModelError):
    """The family does not settle on some inspected vertex."""


def _settled(values: list[int]) -> Optional[int]:
    """Index from which the list is constant, if that happens in its first half."""
    k = len(values) - 1
    while k > 0 and values[k - 1] == values[-1]:
        k -= 1
    return k if k <= len(values) // 2 else None


def _limit_values(oracle: Callable[[int, int], int], bound: int, horizon: int) -> dict[int, int]:
    out = {}
    for i in range(1, bound + 1):
        seq = [oracle(k, i) for k in range(1, horizon + 1)]
        if _settled(seq) is None:
            raise NoLimit(f"values at x_{i} do not settle within {horizon} terms")
        out[i] = seq[-1]
    return out


def pointwise_limit(family: Callable[[int], AutMap], bound: int, horizon: Optional[int] = None) -> LimitReport:
    """Pointwise limit on x_1..x_bound; a vertex settles when the family is constant
    there over the second half of the horizon."""
    if bound < 1:
        raise ModelError("bound must be positive")
    horizon = 2 * (bound + 1) if horizon is None else horizon
    cache: dict[int, AutMap] = {}

    def at(k: int, i: int) -> int:
        if k not in cache:
            cache[k] = family(k)
        return cache[k](i)

    values = _limit_values(at, bound, horizon)
    images = list(values.values())
    return LimitReport(
        bound=bound,
        values=values,
        injective=len(set(images)) == len(images),
        preimages_of_first=tuple(i for i, v in values.items() if v == 1),
    )


def limit_is_automorphism(family: Callable[[int], AutMap], bound: int, horizon: Optional[int] = None) -> bool:
    """Both the family and its inverses settle on x_1..x_bound and the limits invert each other."""
    try:
        fwd = pointwise_limit(family, bound, horizon).values
        bwd = pointwise_limit(lambda k: family(k).inverse(), bound, horizon).values
    except NoLimit:
        return False
    for i in range(1, bound + 1):
        if fwd[i] <= bound and bwd.get(fwd[i]) != i:
            return False
        if bwd[i] <= bound and fwd.get(bwd[i]) != i:
            return False
    return True


# stabilizers and density --------------------------------------------------------------


def in_stabilizer(g: AutMap, A: Iterable[int]) -> bool:
    return all(g(a) == a for a in A)


def dense_support_element(g: AutMap, A: Iterable[int]) -> AutMap:
    """Permutation supported on F = A u g(A) that agrees with g on A."""
    A = sorted(set(A))
    image = {a: g(a) for a in A}
    F = sorted(set(A) | set(image.values()))
    # send the rest of F onto what g(A) leaves uncovered, in order
    spare_src = [x for x in F if x not in image]
    spare_dst = [x for x in F if x not in set(image.values())]
    assignment = dict(image)
    assignment.update(zip(spare_src, spare_dst))
    return finite_support_map(assignment, g.depth, g.graph, f"approx({g.label})")


def support(g: AutMap, depth: int) -> list[int]:
    return [i for i in g.graph.vertices(depth) if g(i) != i]
