"""Words over the generators of Map(S(n)): parsing, free reduction, curve-image
rewriting and layered equality verdicts."""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Union

from .core import (
    FAMILIES,
    BasisIndex,
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
    check_curve,
    check_word,
)
from .curve_atlas import (
    LanternAxiom,
    _table,
    atlas_curves,
    axioms_from,
    commute,
    homology_class,
    neighbors,
    intersection,
)
from .homology_rep import act, act_unchecked, basis
from .shifts_and_flux import Perm, end_permutation, flux_vector, phi, safe_depth, sym_generated

DEFAULT_BUDGET = 20_000
BUDGET_ENV = "BIGMCG_MAX_BUDGET"

__all__ = [
    "Generator", "Twist", "Shift", "Rot", "Rho1", "Rho2", "Tau1", "Tau2", "Letter", "Word",
    "ParseError", "parse", "render", "free_reduce",
    "Atlas", "Image", "UNDEFINED", "EXHAUSTED", "curve_image", "conjugate_twist",
    "Verified", "Refuted", "Unknown", "EndWitness", "FluxWitness", "HomologyWitness",
    "CurveWitness", "equal_up_to", "trivial_up_to", "reevaluate", "effective_budget",
]


def effective_budget(budget: int) -> int:
    """Requested budget, capped by the environment variable when set."""
    cap = os.environ.get(BUDGET_ENV)
    if cap:
        try:
            budget = min(budget, int(cap))
        except ValueError:
            raise ModelError(f"{BUDGET_ENV} must be an integer, got {cap!r}") from None
    return budget


# parsing ----------------------------------------------------------------------


class ParseError(ModelError):
    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}: {text[:pos]}<HERE>{text[pos:]}")


_SIMPLE_ATOMS = {"rho1": Rho1(), "rho2": Rho2(), "tau1": Tau1(), "tau2": Tau2(), "R": Rot()}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str):
        raise ParseError(msg, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s: str) -> bool:
        self.skip()
        return self.text.startswith(s, self.pos)

    def expect(self, s: str):
        if not self.peek(s):
            self.error(f"expected {s!r}")
        self.pos += len(s)

    def integer(self) -> int:
        self.skip()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        digits = self.text[start:self.pos]
        if not digits.lstrip("+-"):
            self.pos = start
            self.error("expected integer")
        return int(digits)

    def word(self) -> list[Letter]:
        letters = self.factor()
        while self.peek("*"):
            self.pos += 1
            letters += self.factor()
        return letters

    def factor(self) -> list[Letter]:
        if self.peek("inv("):
            self.pos += 4
            inner = self.word()
            self.expect(")")
            return [l.inverse() for l in reversed(inner)]
        base = self.atom()
        if self.peek("^("):
            self.pos += 2
            by = self.word()
            self.expect(")")
            return by + base + [l.inverse() for l in reversed(by)]
        if self.peek("^"):
            self.pos += 1
            k = self.integer()
            unit = base if k >= 0 else [l.inverse() for l in reversed(base)]
            return unit * abs(k)
        return base

    def atom(self) -> list[Letter]:
        self.skip()
        if self.peek("T["):
            self.pos += 2
            self.skip()
            fam = None
            for f in sorted(FAMILIES, key=len, reverse=True):
                if self.text.startswith(f, self.pos):
                    fam = f
                    break
            if fam is None:
                self.error("unknown curve family")
            self.pos += len(fam)
            self.expect(",")
            j = self.integer()
            self.expect(",")
            i = self.integer()
            self.expect("]")
            try:
                return [Letter(Twist(CurveId(fam, j, i)))]
            except ModelError as exc:
                self.error(str(exc))
        if self.peek("h["):
            self.pos += 2
            a = self.integer()
            self.expect(",")
            b = self.integer()
            self.expect("]")
            try:
                return [Letter(Shift(a, b))]
            except ModelError as exc:
                self.error(str(exc))
        for name in ("rho1", "rho2", "tau1", "tau2", "R"):
            if self.peek(name):
                self.pos += len(name)
                return [Letter(_SIMPLE_ATOMS[name])]
        if self.peek("1"):
            self.pos += 1
            return []
        self.error("expected a generator")


def parse(text: str) -> Word:
    p = _Parser(text)
    letters = p.word()
    p.skip()
    if p.pos != len(text):
        p.error("unexpected trailing input")
    return Word(tuple(letters))


def render(w: Word) -> str:
    """Canonical text: runs of one letter collapse to a power."""
    if not w.letters:
        return "1"
    parts = []
    i = 0
    letters = w.letters
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        k = (j - i) * letters[i].sign
        atom = str(letters[i].gen)
        parts.append(atom if k == 1 else f"{atom}^{k}")
        i = j
    return "*".join(parts)


def free_reduce(w: Word) -> Word:
    out: list[Letter] = []
    for l in w.letters:
        if out and out[-1].gen == l.gen and out[-1].sign == -l.sign:
            out.pop()
        else:
            out.append(l)
    return Word(tuple(out))


# curve terms --------------------------------------------------------------------


@dataclass(frozen=True)
class Atlas:
    curve: CurveId

    def __str__(self) -> str:
        return str(self.curve)


@dataclass(frozen=True)
class Image:
    """Suspended image: a twist word (in normal form) applied to an atlas curve."""

    word: Word
    base: Atlas

    def __post_init__(self):
        if not self.word.letters:
            raise ModelError("suspended images carry a nonempty word")

    def __str__(self) -> str:
        return f"({render(self.word)})({self.base})"


class _Marker:
    def __init__(self, name: str):
        self.name = name

    def __repr__(self) -> str:
        return self.name

    __str__ = __repr__


UNDEFINED = _Marker("Undefined")
EXHAUSTED = _Marker("Exhausted")

CurveTerm = Union[Atlas, Image]


class _OutOfBudget(Exception):
    pass


class _Budget:
    def __init__(self, limit: int):
        self.left = limit

    def tick(self, k: int = 1):
        self.left -= k
        if self.left < 0:
            raise _OutOfBudget


Twisted = tuple[CurveId, int]


def _sort_key(t: Twisted):
    return (t[0].sort_key, t[1])


def _lex_normal(P: tuple[Twisted, ...], n: int) -> tuple[Twisted, ...]:
    """Lexicographically least word in the commutation class of P."""
    rest = list(P)
    out = []
    while rest:
        best = None
        for idx, t in enumerate(rest):
            if best is not None and _sort_key(t) >= _sort_key(rest[best]):
                continue
            if all(commute(t[0], rest[m][0], n) for m in range(idx)):
                best = idx
        out.append(rest.pop(best))
    return tuple(out)


def _normalize(P: tuple[Twisted, ...], base: CurveId, n: int, budget: _Budget) -> tuple[Twisted, ...]:
    changed = True
    while changed and P:
        budget.tick()
        changed = False
        # a twist fixes the curve when it misses the base and every earlier twist
        for k in range(len(P)):
            x = P[k][0]
            if commute(x, base, n) and all(commute(x, q[0], n) for q in P[k + 1:]):
                P = P[:k] + P[k + 1:]
                changed = True
                break
        if changed:
            continue
        # cancel inverse pairs separated by commuting letters
        for k in range(len(P)):
            x, s = P[k]
            for m in range(k + 1, len(P)):
                if P[m] == (x, -s):
                    P = P[:k] + P[k + 1:m] + P[m + 1:]
                    changed = True
                    break
                if not commute(P[m][0], x, n):
                    break
            if changed:
                break
    return _lex_normal(P, n) if P else P


@lru_cache(maxsize=4096)
def _effective_axiom(ax: LanternAxiom, n: int) -> tuple[Letter, ...]:
    """Axiom word without outer letters that fix the source (right) or target (left)."""
    letters = list(free_reduce(ax.word).letters)
    while letters and commute(letters[-1].gen.curve, ax.source, n):
        letters.pop()
    while letters and commute(letters[0].gen.curve, ax.target, n):
        letters.pop(0)
    return tuple(letters)


@lru_cache(maxsize=1 << 14)
def _axiom_table(z: CurveId, n: int) -> tuple[tuple[tuple[Letter, ...], CurveId], ...]:
    return tuple((_effective_axiom(ax, n), ax.target) for ax in axioms_from(z) if ax.position[0] <= n)


def _match_axiom(z: CurveId, letters: tuple[Letter, ...], pos: int, n: int):
    for eff, target in _axiom_table(z, n):
        size = len(eff)
        if 0 < size <= pos + 1 and letters[pos - size + 1:pos + 1] == eff:
            return target, size
    return None


_UNBOUNDED = 1 << 60


@lru_cache(maxsize=1 << 18)
def _step(g: Generator, sign: int, curve: CurveId, P: tuple[Twisted, ...], n: int):
    """One letter applied to the state (curve, P): returns (curve, P, ticks) or UNDEFINED.

    Axiom matching needs the surrounding word and is handled by the caller.
    """
    counter = _Budget(_UNBOUNDED)
    if isinstance(g, Twist):
        x = g.curve
        if not P:
            if commute(x, curve, n):
                return curve, P, 0
            return curve, ((x, sign),), 0
        y, sy = P[-1]
        if (x == curve and sy == sign and intersection(curve, y, n) == 1
                and all(commute(u, curve, n) and commute(u, y, n) for u, _ in P[:-1])):
            return y, (), 0
        P = _normalize(((x, sign),) + P, curve, n, counter)
        return curve, P, _UNBOUNDED - counter.left
    new_curve = _table(g, curve, n, sign)
    if new_curve is None:
        return UNDEFINED
    if P:
        moved = []
        for u, su in P:
            v = _table(g, u, n, sign)
            if v is None:
                return UNDEFINED
            moved.append((v, su))
        P = _normalize(tuple(moved), new_curve, n, counter)
    return new_curve, P, _UNBOUNDED - counter.left


def _rewrite(letters: tuple[Letter, ...], base: CurveId, P: tuple[Twisted, ...], n: int, budget: _Budget):
    curve = base
    pos = len(letters) - 1
    while pos >= 0:
        budget.tick()
        letter = letters[pos]
        g = letter.gen
        if not P and isinstance(g, Twist) and not commute(g.curve, curve, n):
            hit = _match_axiom(curve, letters, pos, n)
            if hit is not None:
                curve, used = hit
                pos -= used
                continue
        state = _step(g, letter.sign, curve, P, n)
        if state is UNDEFINED:
            return UNDEFINED
        curve, P, cost = state
        budget.tick(cost)
        pos -= 1
    if not P:
        return Atlas(curve)
    return Image(Word(tuple(Letter(Twist(u), su) for u, su in P)), Atlas(curve))


def _image(letters: tuple[Letter, ...], c: CurveTerm, n: int, budget: int):
    if isinstance(c, Image):
        base = c.base.curve
        P = tuple((l.gen.curve, l.sign) for l in c.word)
    else:
        base, P = c.curve, ()
    try:
        return _rewrite(letters, base, P, n, _Budget(budget))
    except _OutOfBudget:
        return EXHAUSTED


def curve_image(w: Word, c: Union[CurveTerm, CurveId], n: int, budget: int = DEFAULT_BUDGET):
    """Image of a curve term under ``w`` (rightmost letter first).

    Returns an ``Atlas`` term, a suspended ``Image``, ``UNDEFINED`` when a table
    entry leaves the atlas, or ``EXHAUSTED`` when the step budget runs out.
    """
    check_word(w, n)
    if isinstance(c, CurveId):
        c = Atlas(c)
    check_curve(c.base.curve if isinstance(c, Image) else c.curve, n)
    return _image(free_reduce(w).letters, c, n, effective_budget(budget))


def conjugate_twist(w: Word, c: CurveId, n: int, budget: int = DEFAULT_BUDGET) -> Word:
    """T_{w(c)} when the image reduces to an atlas curve, else w T_c w^-1."""
    t = curve_image(w, c, n, budget)
    if isinstance(t, Atlas):
        return Word.of(Twist(t.curve))
    return w * Word.of(Twist(c)) * w.inverse()


# verdicts -------------------------------------------------------------------------


@dataclass(frozen=True)
class EndWitness:
    end: int
    left: int
    right: int

    def __str__(self) -> str:
        return f"end {self.end}: {self.left} vs {self.right}"


@dataclass(frozen=True)
class FluxWitness:
    end: int
    depth: int
    left: int
    right: int

    def __str__(self) -> str:
        return f"flux at end {self.end}: {self.left} vs {self.right}"


@dataclass(frozen=True)
class HomologyWitness:
    vector: BasisIndex
    left: H1Vector
    right: H1Vector

    def __str__(self) -> str:
        return f"{self.vector}: {self.left} vs {self.right}"


@dataclass(frozen=True)
class CurveWitness:
    curve: CurveId
    left: object
    right: object

    def __str__(self) -> str:
        return f"{self.curve}: {self.left} vs {self.right}"


Witness = Union[EndWitness, FluxWitness, HomologyWitness, CurveWitness]


@dataclass(frozen=True)
class Verified:
    window: int
    decided: int = 0
    undecided: int = 0

    def __str__(self) -> str:
        return f"Verified(window={self.window}, curves decided={self.decided}, undecided={self.undecided})"


@dataclass(frozen=True)
class Refuted:
    witness: Witness

    def __str__(self) -> str:
        return f"Refuted({self.witness})"


@dataclass(frozen=True)
class Unknown:
    reason: str

    def __str__(self) -> str:
        return f"Unknown({self.reason})"


Verdict = Union[Verified, Refuted, Unknown]


def compare_terms(t1, t2, n: int) -> str:
    """'same', 'different', 'undecided' or 'exhausted'."""
    if t1 is EXHAUSTED or t2 is EXHAUSTED:
        return "exhausted"
    if t1 is UNDEFINED or t2 is UNDEFINED:
        return "undecided"
    if t1 == t2:
        return "same"
    if isinstance(t1, Atlas) and isinstance(t2, Atlas):
        return "different"
    if isinstance(t1, Atlas):
        t1, t2 = t2, t1
    if isinstance(t2, Atlas):
        return "different" if _moved_power(t1, t2.curve, 0, n) else "undecided"
    # two suspended powers of one twist on one base
    p1, p2 = _power(t1), _power(t2)
    if p1 and p2 and p1[0] == p2[0] and t1.base == t2.base:
        return "different" if _moved_power(t1, t1.base.curve, p2[1], n) else "undecided"
    return "undecided"


def _power(t: Image) -> Optional[tuple[CurveId, int]]:
    curves = {l.gen.curve for l in t.word}
    if len(curves) != 1:
        return None
    return (next(iter(curves)), sum(l.sign for l in t.word))


def _moved_power(t: Image, target: CurveId, offset: int, n: int) -> bool:
    """T_x^k(base) differs from T_x^offset(base) when k != offset and i(x, base) > 0."""
    p = _power(t)
    if p is None or t.base.curve != target:
        return False
    x, k = p
    i = intersection(x, target, n)
    return i is not None and i > 0 and k != offset


def _twist_curves(w: Word) -> set[CurveId]:
    return {l.gen.curve for l in w if isinstance(l.gen, Twist)}


def _homology_touched(curves: set[CurveId], n: int) -> set[BasisIndex]:
    """Basis vectors paired nontrivially with some twist class; all others are fixed."""
    out = set()
    for c in curves:
        for e, _ in homology_class(c, n).coeffs:
            if e.kind == "alpha":
                out.add(BasisIndex("beta", e.end, e.index))
            elif e.kind == "beta":
                out.add(BasisIndex("alpha", e.end, e.index))
    return out


def equal_up_to(w1: Word, w2: Word, n: int, window: int = 10, budget: int = DEFAULT_BUDGET) -> Verdict:
    """Layered shadow comparison: ends, flux, homology, atlas curves."""
    if window <= 0 or budget <= 0:
        raise ModelError("window and budget must be positive")
    check_word(w1, n)
    check_word(w2, n)
    budget = effective_budget(budget)
    w1, w2 = free_reduce(w1), free_reduce(w2)

    p1, p2 = end_permutation(w1, n), end_permutation(w2, n)
    if p1 != p2:
        j = next(k for k in range(1, n + 1) if p1(k) != p2(k))
        return Refuted(EndWitness(j, p1(j), p2(j)))

    if p1.is_identity():
        depth = max(safe_depth(w1, window), safe_depth(w2, window))
        f1, f2 = flux_vector(w1, n, depth), flux_vector(w2, n, depth)
        if f1 is not None and f2 is not None and f1 != f2:
            j = next(k for k in range(n) if f1[k] != f2[k])
            return Refuted(FluxWitness(j + 1, depth, f1[j], f2[j]))

    twist_only = w1.is_twist_word() and w2.is_twist_word()
    curves = _twist_curves(w1) | _twist_curves(w2)
    touched = _homology_touched(curves, n) if twist_only else None
    for e in basis(n, window):
        if touched is not None and e not in touched:
            continue
        x = H1Vector.basis(e)
        v1, v2 = act_unchecked(w1, x, n), act_unchecked(w2, x, n)
        if v1 != v2:
            return Refuted(HomologyWitness(e, v1, v2))

    decided = undecided = 0
    exhausted = False
    every = atlas_curves(n, window)
    if twist_only:
        # curves missed by every twist are fixed by both words
        moved = set()
        for x in curves:
            moved.update(neighbors(x, n, window))
        decided = len(every) - len(moved & set(every))
        every = [z for z in every if z in moved]
    for z in every:
        t1 = _image(w1.letters, Atlas(z), n, budget)
        t2 = _image(w2.letters, Atlas(z), n, budget)
        rel = compare_terms(t1, t2, n)
        if rel == "different":
            return Refuted(CurveWitness(z, t1, t2))
        if rel == "same":
            decided += 1
        else:
            undecided += 1
            exhausted |= rel == "exhausted"
    if exhausted:
        return Unknown(f"rewriting budget {budget} exhausted")
    return Verified(window, decided, undecided)


def trivial_up_to(w: Word, n: int, window: int = 10, budget: int = DEFAULT_BUDGET) -> Verdict:
    return equal_up_to(w, Word(), n, window, budget)


def reevaluate(witness: Witness, w1: Word, w2: Word, n: int, budget: int = DEFAULT_BUDGET) -> bool:
    """Recompute the witnessed observable on both sides; True when they differ."""
    if isinstance(witness, EndWitness):
        return end_permutation(w1, n)(witness.end) != end_permutation(w2, n)(witness.end)
    if isinstance(witness, FluxWitness):
        return phi(witness.end, w1, n, witness.depth) != phi(witness.end, w2, n, witness.depth)
    if isinstance(witness, HomologyWitness):
        x = H1Vector.basis(witness.vector)
        return act(w1, x, n) != act(w2, x, n)
    if isinstance(witness, CurveWitness):
        t1 = curve_image(w1, witness.curve, n, budget)
        t2 = curve_image(w2, witness.curve, n, budget)
        return compare_terms(t1, t2, n) == "different"
    raise ModelError(f"unknown witness {witness!r}")


# suites ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrderWitness:
    order: int
    expected: int

    def __str__(self) -> str:
        return f"generated {self.order} of {self.expected} permutations"


@dataclass(frozen=True)
class StepResult:
    step_id: str
    anchor: str
    verdict: Verdict

    @property
    def status(self) -> str:
        if isinstance(self.verdict, Verified):
            return "PASS"
        if isinstance(self.verdict, Refuted):
            return "FAIL"
        return "UNKNOWN"

    def line(self) -> str:
        detail = "" if isinstance(self.verdict, Verified) else f" {self.verdict}"
        return f"{self.status} {self.step_id} {self.anchor}{detail}"


@dataclass(frozen=True)
class Report:
    suite: str
    n: int
    window: int
    results: tuple[StepResult, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(r.status == "PASS" for r in self.results)

    @property
    def only_unknown(self) -> bool:
        return not self.passed and all(r.status != "FAIL" for r in self.results)

    def lines(self) -> list[str]:
        return [r.line() for r in self.results]


def _homology_verdict(w1: Word, w2: Word, n: int, window: int) -> Verdict:
    for e in basis(n, window):
        x = H1Vector.basis(e)
        v1, v2 = act(w1, x, n), act(w2, x, n)
        if v1 != v2:
            return Refuted(HomologyWitness(e, v1, v2))
    return Verified(window)


def _axiom_verdict(j: int, i: int, which: int, n: int, window: int) -> Verdict:
    """Homology bookkeeping for a registered figure fact: [word(source)] = +-[target]
    and the first boundary meridian is fixed."""
    from .curve_atlas import lantern_axioms_at

    ax = lantern_axioms_at(j, i)[which]
    src = act(ax.word, homology_class(ax.source, n), n)
    tgt = homology_class(ax.target, n)
    if src != tgt and src != -tgt:
        return Refuted(HomologyWitness(BasisIndex("alpha", j, i), src, tgt))
    a1 = homology_class(CurveId("a", j, i), n)
    moved = act(ax.word, a1, n)
    if moved != a1:
        return Refuted(HomologyWitness(BasisIndex("alpha", j, i), moved, a1))
    return Verified(window)


def run_step(step, n: int, window: int, budget: int = DEFAULT_BUDGET) -> Verdict:
    if step.kind == "equal":
        return equal_up_to(parse(step.lhs), parse(step.rhs), n, window, budget)
    if step.kind == "trivial":
        return trivial_up_to(parse(step.lhs), n, window, budget)
    if step.kind == "homology":
        return _homology_verdict(parse(step.lhs), parse(step.rhs), n, window)
    if step.kind == "axiom":
        return _axiom_verdict(*step.data, n, window)
    if step.kind == "transport":
        source, target = step.data
        t = curve_image(parse(step.lhs), source, n, budget)
        if t == Atlas(target):
            return Verified(window, 1, 0)
        if t is EXHAUSTED:
            return Unknown("rewriting budget exhausted")
        return Refuted(CurveWitness(source, t, Atlas(target)))
    if step.kind == "sym":
        import math

        perms = [end_permutation(parse(x), n) for x in (step.lhs, step.rhs)]
        if sym_generated(perms, n):
            return Verified(window)
        return Refuted(OrderWitness(_closure_size(perms, n), math.factorial(n)))
    raise ModelError(f"unknown step kind {step.kind!r}")


def _closure_size(perms: list[Perm], n: int) -> int:
    seen = {Perm.identity(n)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for p in frontier:
            for g in perms:
                q = p.then(g)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return len(seen)


def verify_suite(name: str, n: int, window: int = 10, budget: int = DEFAULT_BUDGET) -> Report:
    from .suites import ALIASES, steps_for

    if window <= 0 or budget <= 0:
        raise ModelError("window and budget must be positive")
    steps = steps_for(name, n, window)
    results = tuple(StepResult(s.step_id, s.anchor, run_step(s, n, window, budget)) for s in steps)
    return Report(ALIASES.get(name, name), n, window, results)
