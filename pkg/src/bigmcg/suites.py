"""Catalog of replayable identity chains, written in the word grammar.

Notation inside builders: ``X^Y`` (conjugation) is ``Y*X*inv(Y)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Optional

from .core import ModelError
from .curve_atlas import atlas_curves, intersection


@dataclass(frozen=True)
class Step:
    step_id: str
    anchor: str
    kind: str  # equal | trivial | homology | axiom | transport | sym
    lhs: str = "1"
    rhs: str = "1"
    data: Optional[tuple] = None


def T(fam: str, j: int, i: int) -> str:
    return f"T[{fam},{j},{i}]"


def bar(x: str) -> str:
    return f"inv({x})"


def conj(x: str, by: str) -> str:
    return f"{by}*{x}*inv({by})"


def prod(*xs: str) -> str:
    return "*".join(xs)


def h(i: int, n: int) -> str:
    return f"h[{i},{i % n + 1}]"


# consecutive twist differences ---------------------------------------------------


def differences(n: int) -> list[Step]:
    A = lambda j, i: T("a", j, i)
    Ap = lambda j, i: T("a'", j, i)
    B = lambda j, i: T("b", j, i)
    C = lambda j, i: T("c", j, i)
    h12 = "h[1,2]"
    steps = [
        Step("diff-01", "conjugation", "equal",
             prod(Ap(1, 1), bar(Ap(n, 1))), conj(prod(A(1, 1), bar(A(2, 1))), "rho1")),
        Step("diff-02", "conjugation", "equal",
             prod(A(2, 1), bar(Ap(n, 1))), conj(prod(Ap(1, 1), bar(Ap(n, 1))), h12)),
        Step("diff-03", "conjugation", "equal",
             prod(A(2, 2), bar(Ap(n, 1))), conj(prod(A(2, 1), bar(Ap(n, 1))), h12)),
        Step("diff-04", "free-reduction", "equal",
             prod(A(2, 1), bar(Ap(n, 1)), Ap(n, 1), bar(A(2, 2))), prod(A(2, 1), bar(A(2, 2)))),
        Step("diff-05", "conjugation", "equal",
             prod(B(2, 1), bar(B(2, 2))), conj(prod(B(1, 1), bar(B(2, 1))), h12)),
        Step("diff-06", "conjugation", "equal",
             prod(C(2, 0), bar(C(3, 0))), conj(prod(C(1, 0), bar(C(2, 0))), "R")),
        Step("diff-07", "free-reduction", "equal",
             prod(C(1, 0), bar(C(2, 0)), C(2, 0), bar(C(3, 0))), prod(C(1, 0), bar(C(3, 0)))),
    ]
    shifted = conj(prod(C(1, 0), bar(C(3, 0))), h12)
    if n == 3:
        # the shift also moves c[3,0] onto c[2,0]
        shifted = prod(shifted, C(2, 0), bar(C(3, 0)))
    steps += [
        Step("diff-08", "conjugation", "equal", prod(C(2, 1), bar(C(3, 0))), shifted),
        Step("diff-09", "free-reduction", "equal",
             prod(C(1, 0), bar(C(3, 0)), C(3, 0), bar(C(2, 1))), prod(C(1, 0), bar(C(2, 1)))),
        Step("diff-10", "conjugation", "equal",
             prod(C(2, 1), bar(C(2, 2))), conj(prod(C(1, 0), bar(C(2, 1))), h12)),
        Step("diff-11", "rotation-product", "equal", "R", "rho1*rho2"),
    ]
    return steps


# lantern chain on one end -----------------------------------------------------------


def lantern_words(j: int, i: int) -> dict[str, str]:
    """Twist names at the lantern bounded by a[j,i], c[j,i], c[j,i+1], a[j,i+2]."""
    w = {
        "A1": T("a", j, i), "A2": T("a", j, i + 1), "A3": T("a", j, i + 2),
        "B1": T("b", j, i), "B2": T("b", j, i + 1), "B3": T("b", j, i + 2),
        "C1": T("c", j, i), "C2": T("c", j, i + 1),
        "D1": T("d1", j, i), "D2": T("d2", j, i),
    }
    A1, A2, A3, B2, B3, C1, C2 = (w[k] for k in ("A1", "A2", "A3", "B2", "B3", "C1", "C2"))
    w["P"] = prod(B2, bar(A1), C1, bar(A1), A1, bar(A2), C2, bar(A1))
    w["Q"] = prod(B3, bar(A1), C2, bar(A1), A3, bar(A1), B3, bar(A1))
    return w


def lantern_steps(j: int, i: int, prefix: str) -> list[Step]:
    w = lantern_words(j, i)
    A1, A2, A3, C1, C2, D1, D2, B2 = (w[k] for k in ("A1", "A2", "A3", "C1", "C2", "D1", "D2", "B2"))
    return [
        Step(f"{prefix}-axiom-b-to-d1", "lantern-figure", "axiom", data=(j, i, 0)),
        Step(f"{prefix}-d1", "conjugation+lantern-figure", "equal",
             prod(D1, bar(A1)), conj(prod(B2, bar(A1)), w["P"])),
        Step(f"{prefix}-axiom-d1-to-d2", "lantern-figure", "axiom", data=(j, i, 1)),
        Step(f"{prefix}-d2", "conjugation+lantern-figure", "equal",
             prod(D2, bar(A1)), conj(prod(D1, bar(A1)), w["Q"])),
        Step(f"{prefix}-relation", "lantern-relation", "homology",
             prod(A1, C1, C2, A3), prod(A2, D1, D2)),
    ]


def lantern_chain(n: int) -> list[Step]:
    j = 2
    w = lantern_words(j, 1)
    A1, A2, A3 = w["A1"], w["A2"], w["A3"]
    B1, B2, B3 = w["B1"], w["B2"], w["B3"]
    C1, C2, D1, D2 = w["C1"], w["C2"], w["D1"], w["D2"]
    h12 = "h[1,2]"
    X = prod(A1, bar(A2), B1, bar(B2))
    target = conj(prod(A1, bar(A3)), X)
    inner = conj(prod(A1, bar(A3)), prod(A1, B1))
    steps = [
        Step("lantern-chain-01", "conjugation", "equal",
             prod(A1, bar(A3)), prod(A1, bar(A2), conj(prod(A1, bar(A2)), h12))),
        Step("lantern-chain-02", "conjugation", "equal",
             target, prod(X, A1, bar(A3), B2, bar(B1), A2, bar(A1))),
        Step("lantern-chain-03", "free-group", "equal",
             target, prod(bar(A2), bar(B2), inner, B2, A2)),
        Step("lantern-chain-04", "braid-transport", "equal",
             target, prod(bar(A2), bar(B2), B1, bar(A3), B2, A2)),
        Step("lantern-chain-05", "disjointness", "equal", target, prod(B1, bar(A3))),
        Step("lantern-chain-06", "braid-transport", "equal",
             conj(prod(B1, bar(A3)), prod(B1, bar(A3), C1, bar(C2))), prod(C1, bar(A3))),
        Step("lantern-chain-07", "free-group", "equal",
             prod(B3, bar(A1)), prod(bar(prod(B2, bar(B3))), B2, bar(A1))),
    ]
    lan = lantern_steps(j, 1, "lantern-chain")
    steps += [
        Step("lantern-chain-08", lan[0].anchor, lan[0].kind, data=lan[0].data),
        Step("lantern-chain-09", lan[1].anchor, lan[1].kind, lan[1].lhs, lan[1].rhs),
        Step("lantern-chain-10", lan[2].anchor, lan[2].kind, data=lan[2].data),
        Step("lantern-chain-11", lan[3].anchor, lan[3].kind, lan[3].lhs, lan[3].rhs),
        Step("lantern-chain-12", "free-group", "equal",
             prod(D2, bar(C1)), prod(D2, bar(A1), A1, bar(C1))),
        Step("lantern-chain-13", lan[4].anchor, lan[4].kind, lan[4].lhs, lan[4].rhs),
        Step("lantern-chain-14", "lantern-relation", "equal",
             A3, prod(A2, bar(C2), D1, bar(A1), D2, bar(C1))),
        Step("lantern-chain-15", "free-group", "equal", C1, prod(C1, bar(A1), A1)),
        Step("lantern-chain-16", "free-group", "equal", B1, prod(B1, bar(A3), A3)),
        Step("lantern-chain-17", "conjugation", "equal",
             T("c", 1, 0), prod(bar(h12), T("c", 2, 1), h12)),
    ]
    return steps


# chain built from the involution generators ---------------------------------------------


def involution_words(n: int) -> dict[str, str]:
    A = lambda j: T("a", j, 1)
    Ap = lambda j: T("a'", j, 1)
    B = lambda j: T("b", j, 1)
    C = lambda j: T("c", j, 0)
    w = {"F1": prod(B(1), C(1), bar(C(2)), bar(B(3))), "L1": prod(A(1), bar(Ap(2)))}
    w["L2"] = prod(B(1), bar(Ap(2)))
    w["L3"] = prod(Ap(3), bar(A(2)), B(3), C(2), bar(C(1)), bar(B(1)))
    w["L4"] = prod(B(3), bar(A(2)))
    w["L5"] = prod(C(1), bar(Ap(2)))
    w["L6"] = prod(B(2), bar(Ap(2)))
    w["L7"] = prod(Ap(2), bar(Ap(3)))
    return w


def involution_chain(n: int) -> list[Step]:
    w = involution_words(n)
    A = lambda j: T("a", j, 1)
    Ap = lambda j: T("a'", j, 1)
    B = lambda j: T("b", j, 1)
    C = lambda j: T("c", j, 0)
    F1, L1, L2, L3, L4, L5, L6, L7 = (w[k] for k in ("F1", "L1", "L2", "L3", "L4", "L5", "L6", "L7"))
    L1R = conj(L1, "R")
    B12 = prod(B(1), bar(B(2)))
    return [
        Step("inv-chain-01", "rotation-product", "equal", "R", "rho1*rho2"),
        Step("inv-chain-02", "conjugation", "equal",
             conj(L1, prod(L1, F1)), prod(L1, F1, L1, bar(F1), bar(L1))),
        Step("inv-chain-03", "braid-transport", "equal", conj(L1, prod(L1, F1)), L2),
        Step("inv-chain-04", "conjugation", "equal", prod(bar(L1R), bar(F1)), L3),
        Step("inv-chain-05", "braid-transport", "equal", conj(bar(L1R), L3), L4),
        Step("inv-chain-06", "conjugation", "equal", conj(L2, F1), prod(F1, L2, bar(F1))),
        Step("inv-chain-07", "braid-transport", "equal", conj(L2, F1), L5),
        Step("inv-chain-08", "conjugation", "equal",
             prod(conj(L4, "inv(R)"), L1), prod(B(2), bar(A(1)), A(1), bar(Ap(2)))),
        Step("inv-chain-09", "free-group", "equal", prod(conj(L4, "inv(R)"), L1), L6),
        Step("inv-chain-10", "free-group", "equal", B12, prod(L2, bar(L6))),
        Step("inv-chain-11", "conjugation", "equal",
             prod(bar(L2), B12, conj(L2, "R")),
             prod(Ap(2), bar(B(1)), B12, B(2), bar(Ap(3)))),
        Step("inv-chain-12", "free-group", "equal", prod(bar(L2), B12, conj(L2, "R")), L7),
        Step("inv-chain-13", "conjugation", "equal",
             prod(C(1), bar(C(2))), prod(L5, L7, bar(conj(L5, "R")))),
        Step("inv-chain-14", "conjugation", "equal",
             prod(A(1), bar(A(2))), prod(bar(conj(L4, "inv(R)")), conj(B12, "R"), L4)),
        Step("inv-chain-15", "free-group", "equal",
             prod(A(1), bar(A(2))), prod(A(1), bar(B(2)), B(2), bar(B(3)), B(3), bar(A(2)))),
    ]


def involutions(n: int) -> list[Step]:
    w = involution_words(n)
    F1, L1 = w["F1"], w["L1"]
    rho3 = "R*rho1*inv(R)"
    rho4 = "R*rho2*inv(R)"
    F1_moved = prod(T("b", 3, 1), T("c", 2, 0), bar(T("c", 1, 0)), bar(T("b", 1, 1)))
    L1_moved = prod(T("a'", 2, 1), bar(T("a", 1, 1)))
    return [
        Step("invol-01", "rotation-product", "equal", "R", "rho1*rho2"),
        Step("invol-02", "involution", "trivial", prod(rho3, rho3)),
        Step("invol-03", "involution", "trivial", prod(rho4, rho4)),
        Step("invol-04", "conjugation", "equal", prod(rho3, F1, rho3), F1_moved),
        Step("invol-05", "free-group", "equal", prod(rho3, F1, rho3, F1), prod(F1_moved, F1)),
        Step("invol-06", "involution", "trivial", prod(rho3, F1, rho3, F1)),
        Step("invol-07", "conjugation", "equal", prod(rho4, L1, rho4), L1_moved),
        Step("invol-08", "involution", "trivial", prod(rho4, L1, rho4, L1)),
        Step("invol-09", "shift-from-involutions", "equal", "tau1*tau2", "h[1,2]"),
        Step("invol-10", "involution", "trivial", "rho1*rho1"),
        Step("invol-11", "involution", "trivial", "rho2*rho2"),
        Step("invol-12", "involution", "trivial", "tau1*tau1"),
        Step("invol-13", "involution", "trivial", "tau2*tau2"),
        Step("invol-14", "cycle-and-transposition", "sym", "R", "tau1"),
    ]


# finite generating set ----------------------------------------------------------------


def finite(n: int) -> list[Step]:
    steps = []
    for i in range(1, n + 1):
        nxt = i % n + 1
        hi = h(i, n)
        steps.append(Step(f"finite-aprime-{i}", "conjugation", "equal",
                          T("a'", i, 1), prod(bar(hi), T("a", nxt, 1), hi)))
        steps.append(Step(f"finite-b-rot-{i}", "conjugation", "equal",
                          T("b", nxt, 1), conj(T("b", i, 1), "R")))
        for k in range(2, 5):
            steps.append(Step(f"finite-b-{i}-{k}", "conjugation", "equal",
                              T("b", i, k), prod(f"{hi}^{1 - k}", T("b", i, 1), f"{hi}^{k - 1}")))
        for k in range(1, 4):
            steps.append(Step(f"finite-c-{i}-{k}", "conjugation", "equal",
                              T("c", i, k), prod(f"{hi}^{-k}", T("c", i, 0), f"{hi}^{k}")))
        if i >= 2:
            steps.append(Step(f"finite-shift-rot-{i}", "conjugation", "equal",
                              hi, prod(f"R^{i - 1}", "h[1,2]", f"R^{-(i - 1)}")))
    for k in range(3, n + 1):
        chain = prod(*(f"h[{m},{m + 1}]" for m in range(k - 1, 0, -1)))
        steps.append(Step(f"finite-chain-{k}", "shift-chain", "equal", f"h[1,{k}]", chain))
    steps.append(Step("finite-tau", "shift-from-involutions", "equal", "tau1*tau2", "h[1,2]"))
    steps.append(Step("finite-sym", "cycle-and-transposition", "sym", "R", "tau1"))
    return steps


# relation suites over the whole atlas -------------------------------------------------------


def _pairs(n: int, window: int, value: int):
    curves = atlas_curves(n, window)
    for x, y in combinations(curves, 2):
        if intersection(x, y, n) == value:
            yield x, y


def braid(n: int, window: int) -> list[Step]:
    steps = []
    for x, y in _pairs(n, window, 1):
        tx, ty = T(x.family, x.end, x.index), T(y.family, y.end, y.index)
        tag = f"{x}~{y}"
        steps.append(Step(f"braid-{tag}", "braid", "equal", prod(tx, ty, tx), prod(ty, tx, ty)))
        steps.append(Step(f"transport-{tag}", "braid-transport", "transport", prod(tx, ty), data=(x, y)))
        steps.append(Step(f"transport-{y}~{x}", "braid-transport", "transport", prod(ty, tx), data=(y, x)))
    return steps


def commute(n: int, window: int) -> list[Step]:
    steps = []
    for x, y in _pairs(n, window, 0):
        tx, ty = T(x.family, x.end, x.index), T(y.family, y.end, y.index)
        steps.append(Step(f"commute-{x}~{y}", "disjointness", "equal", prod(tx, ty), prod(ty, tx)))
    return steps


def lantern(n: int, window: int) -> list[Step]:
    steps = []
    for j in range(1, n + 1):
        for i in range(1, max(window - 2, 0) + 1):
            steps += lantern_steps(j, i, f"lantern-{j}-{i}")
    return steps


SUITES: dict[str, Callable[[int, int], list[Step]]] = {
    "differences": lambda n, window: differences(n),
    "lantern-chain": lambda n, window: lantern_chain(n),
    "involution-chain": lambda n, window: involution_chain(n),
    "involutions": lambda n, window: involutions(n),
    "finite": lambda n, window: finite(n),
    "braid": braid,
    "commute": commute,
    "lantern": lantern,
}

# names used by the command line interface for the three replayed chains
ALIASES = {"lemma1": "differences", "lemma2": "lantern-chain", "lemma3": "involution-chain"}

CHAIN_SUITES = ("differences", "lantern-chain", "involution-chain", "involutions")


def steps_for(name: str, n: int, window: int) -> list[Step]:
    key = ALIASES.get(name, name)
    if key not in SUITES:
        raise ModelError(f"unknown suite {name!r}; known: {', '.join(sorted(SUITES) + sorted(ALIASES))}")
    if key in ("differences", "lantern-chain", "involution-chain", "involutions") and not 3 <= n <= 8:
        raise ModelError("chain suites need 3 <= n <= 8")
    return SUITES[key](n, window)
