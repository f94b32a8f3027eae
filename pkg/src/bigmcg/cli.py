"""Command-line front end.

Exit codes: 0 success or PASS, 1 FAIL or Refuted, 2 usage error, 3 only
Unknown / Inconclusive outcomes.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Optional

from .core import (
    FAMILIES,
    CurveId,
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
    check_word,
)
from .curve_atlas import parse_curve
from .end_space import Inconclusive, SurfaceDesc, compare, fingerprint, parse_code
from .homology_rep import UNKNOWN, act, parse_basis
from .polish_lab import cauchy_report, pointwise_limit, shift_example
from .shifts_and_flux import (
    flux_vector,
    genus_checks,
    model_shift_point,
    phi,
    separating_witness,
    twist_point,
)
from .suites import ALIASES, SUITES
from .surface_model import (
    Unsupported,
    euler_characteristic,
    finite_homeomorphic,
    generator_count,
    parse_signature,
    truncation,
)
from .word_engine import (
    DEFAULT_BUDGET,
    EXHAUSTED,
    UNDEFINED,
    Refuted,
    Verified,
    curve_image,
    equal_up_to,
    parse,
    render,
    trivial_up_to,
    verify_suite,
)

OK, FAIL, USAGE, UNKNOWN_ONLY = 0, 1, 2, 3


class Outcome:
    """Collected report: text lines, structured fields and an exit code."""

    def __init__(self, command: str):
        self.command = command
        self.lines: list[str] = []
        self.fields: dict = {}
        self.code = OK

    def say(self, line: str):
        self.lines.append(line)

    def render(self, fmt: str, seed: Optional[int]) -> str:
        if fmt == "json":
            tree = {"command": self.command, "exit": self.code, "seed": seed,
                    "lines": self.lines, **self.fields}
            return json.dumps(tree, indent=2, sort_keys=True, default=str)
        return "\n".join(self.lines)


def _verdict_code(v) -> int:
    if isinstance(v, Verified):
        return OK
    if isinstance(v, Refuted):
        return FAIL
    return UNKNOWN_ONLY


def _word(text: str, n: int) -> Word:
    w = parse(text)
    check_word(w, n)
    return w


# commands ---------------------------------------------------------------------------


def cmd_classify(args, out: Outcome):
    sig = parse_signature(args.sig)
    out.fields["signature"] = str(sig)
    chi = euler_characteristic(sig)
    out.say(f"signature {sig}")
    out.say(f"euler characteristic {chi}")
    out.fields["euler_characteristic"] = chi
    try:
        count = generator_count(sig)
        out.say(f"dehn twist generators {count}")
        out.fields["generator_count"] = count
    except Unsupported as exc:
        out.say(f"dehn twist generators unsupported: {exc}")
        out.fields["generator_count"] = None
    if args.against:
        other = parse_signature(args.against)
        same = finite_homeomorphic(sig, other)
        out.say(f"homeomorphic to {other}: {'yes' if same else 'no'}")
        out.fields["homeomorphic"] = same
    if args.truncate:
        t = truncation(args.ends, args.truncate)
        out.say(f"truncation of S({args.ends}) at level {args.truncate}: {t}")
        out.fields["truncation"] = str(t)


def cmd_endspace(args, out: Outcome):
    a = SurfaceDesc.from_code(parse_code(args.code), args.boundary)
    out.say(f"code {a.code}")
    out.say(f"fingerprint {fingerprint(a.code)}")
    out.fields["fingerprint"] = str(fingerprint(a.code))
    if args.against:
        b = SurfaceDesc.from_code(parse_code(args.against), args.boundary)
        result = compare(a, b)
        out.say(f"against {b.code}: {result}")
        out.fields["comparison"] = str(result)
        if isinstance(result, Inconclusive):
            out.code = UNKNOWN_ONLY


def cmd_eval(args, out: Outcome):
    n = args.ends
    w = _word(args.word, n)
    out.fields["word"] = render(w)
    if args.vector:
        x = parse_basis(args.vector, n)
        y = act(w, x, n, args.window)
        out.say(f"{render(w)} ({x}) = {y}")
        out.fields["image"] = str(y)
        if y is UNKNOWN:
            out.code = UNKNOWN_ONLY
        return
    c = parse_curve(args.curve)
    t = curve_image(w, c, n, args.budget)
    out.say(f"{render(w)} ({c}) = {t}")
    out.fields["image"] = str(t)
    if t is UNDEFINED or t is EXHAUSTED:
        out.code = UNKNOWN_ONLY


def cmd_equal(args, out: Outcome):
    n = args.ends
    v = equal_up_to(_word(args.w1, n), _word(args.w2, n), n, args.window, args.budget)
    out.say(str(v))
    out.fields["verdict"] = str(v)
    out.code = _verdict_code(v)


def cmd_trivial(args, out: Outcome):
    n = args.ends
    v = trivial_up_to(_word(args.word, n), n, args.window, args.budget)
    out.say(str(v))
    out.fields["verdict"] = str(v)
    out.code = _verdict_code(v)


def cmd_phi(args, out: Outcome):
    n = args.ends
    value = phi(args.end, _word(args.word, n), n, args.window)
    out.say(f"phi[{args.end}] = {'undefined' if value is None else value}")
    out.fields["phi"] = value
    if value is None:
        out.code = UNKNOWN_ONLY


def cmd_flux(args, out: Outcome):
    n = args.ends
    f = flux_vector(_word(args.word, n), n, args.window)
    out.say("flux undefined" if f is None else "flux " + " ".join(map(str, f)))
    out.fields["flux"] = None if f is None else list(f)
    if f is None:
        out.code = UNKNOWN_ONLY


def cmd_witness(args, out: Outcome):
    n = args.ends
    c = parse_curve(args.curve)
    w = parse(args.shift)
    if len(w) != 1 or not isinstance(w.letters[0].gen, Shift) or w.letters[0].sign != 1:
        raise ModelError("--shift takes a single handle shift such as h[1,2]")
    h = w.letters[0].gen
    gamma = separating_witness(c, h, n)
    check = genus_checks(c, h, n)
    status = "PASS" if check.holds() else "FAIL"
    out.say(f"gamma {gamma}")
    out.say(f"{status} genus-witness separating-witness genus(gamma,c)={check.base} "
            f"genus(gamma,h(c))={check.forward} genus(gamma,h^-1(c))={check.backward}")
    out.fields.update(gamma=str(gamma), base=check.base, forward=check.forward,
                      backward=check.backward, holds=check.holds())
    if not check.holds():
        out.code = FAIL


def cmd_suite(args, out: Outcome):
    if args.list:
        for name in sorted(SUITES):
            out.say(name)
        for alias, name in sorted(ALIASES.items()):
            out.say(f"{alias} -> {name}")
        return
    if not args.name:
        raise ModelError("suite needs --name (or --list)")
    report = verify_suite(args.name, args.ends, args.window, args.budget)
    out.lines.extend(report.lines())
    out.fields.update(suite=report.suite, ends=report.n, window=report.window,
                      steps=[{"id": r.step_id, "anchor": r.anchor, "status": r.status,
                              "detail": str(r.verdict)} for r in report.results])
    if report.passed:
        out.code = OK
    elif report.only_unknown:
        out.code = UNKNOWN_ONLY
    else:
        out.code = FAIL


def cmd_metric(args, out: Outcome):
    if args.demo != "gn":
        raise ModelError("the only demo is 'gn'")
    report = cauchy_report(shift_example, args.N, args.depth)
    out.lines.extend(report.lines())
    limit = pointwise_limit(shift_example, args.depth)
    cert = "PASS" if limit.no_preimage_of_first else "FAIL"
    out.say(f"{cert} limit-not-onto cauchy-family no x_i with i<={args.depth} maps to x_1")
    out.fields.update(forward_cauchy=report.forward_ok, inverse_cauchy=report.inverse_ok,
                      inverse_values=[str(v) for v in report.inverse_values],
                      no_preimage_of_first=limit.no_preimage_of_first)
    # the demo is expected to show a Cauchy family whose inverses are not Cauchy
    expected = report.forward_ok and not report.inverse_ok and limit.no_preimage_of_first
    out.say(f"demo {'as expected' if expected else 'UNEXPECTED'}")
    out.code = OK if expected else FAIL


def _floats(text: str) -> tuple[float, float]:
    try:
        a, b = (float(t) for t in text.split(","))
    except ValueError:
        raise ModelError(f"expected two comma-separated numbers, got {text!r}") from None
    return a, b


def cmd_stripmap(args, out: Outcome):
    p, q = _floats(args.point)
    if args.map == "twist":
        image = twist_point(p, q)
    else:
        image = model_shift_point(p, q)
    out.say(f"{args.map}({p}, {q}) = ({image[0]!r}, {image[1]!r})")
    out.fields["image"] = list(image)


def cmd_parse_check(args, out: Outcome):
    words = [args.word] if args.word else []
    if args.random:
        rng = random.Random(args.seed)
        words += [render(_random_word(rng, args.ends)) for _ in range(args.random)]
    if not words:
        raise ModelError("parse-check needs --word or --random")
    failures = 0
    for text in words:
        w = parse(text)
        again = parse(render(w))
        ok = again == w
        failures += not ok
        out.say(f"{'PASS' if ok else 'FAIL'} parse-check round-trip {render(w)}")
    out.fields["checked"] = len(words)
    out.fields["failures"] = failures
    out.code = FAIL if failures else OK


def _random_word(rng: random.Random, n: int, length: int = 8) -> Word:
    letters = []
    for _ in range(rng.randint(0, length)):
        kind = rng.random()
        if kind < 0.6:
            fam = rng.choice(FAMILIES)
            idx = rng.randint(0 if fam == "c" else 1, 6)
            g = Twist(CurveId(fam, rng.randint(1, n), idx))
        elif kind < 0.8:
            a, b = rng.sample(range(1, n + 1), 2)
            g = Shift(a, b)
        else:
            g = rng.choice([Rot(), Rho1(), Rho2(), Tau1(), Tau2()])
        letters.append(Letter(g, rng.choice((1, -1))))
    return Word(tuple(letters))


# argument parsing -------------------------------------------------------------------


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ends", type=_positive, default=3, help="number of ends n of S(n)")
    common.add_argument("--window", type=_positive, default=10, help="index window for shadows")
    common.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET, help="rewriting step budget")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("--format", choices=("text", "json"), default="text")

    parser = argparse.ArgumentParser(prog="bigmcg", description="Computations in mapping class groups of S(n).")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("classify", cmd_classify, "finite-type signature facts")
    p.add_argument("sig", help="signature g,b,n")
    p.add_argument("--against", help="second signature to compare with")
    p.add_argument("--truncate", type=_positive, help="also print the truncation of S(--ends) at this level")

    p = add("endspace", cmd_endspace, "end-space fingerprint and comparison")
    p.add_argument("code", help="e.g. finite:np,np | cantor:np | omega:p>p | Flute | S(4)")
    p.add_argument("--against", help="second code to compare with")
    p.add_argument("--boundary", type=int, default=0)

    p = add("eval", cmd_eval, "image of a curve or homology vector under a word")
    p.add_argument("--word", required=True)
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--curve")
    target.add_argument("--vector", help="alpha[j,i], beta[j,i] or delta[j]")

    p = add("equal", cmd_equal, "compare two words up to the window")
    p.add_argument("--w1", required=True)
    p.add_argument("--w2", required=True)

    p = add("trivial", cmd_trivial, "test a word for triviality up to the window")
    p.add_argument("--word", required=True)

    p = add("phi", cmd_phi, "genus flux across the cut around one end")
    p.add_argument("--word", required=True)
    p.add_argument("--end", type=_positive, required=True)

    p = add("flux", cmd_flux, "genus flux at every end")
    p.add_argument("--word", required=True)

    p = add("witness", cmd_witness, "separating curve witnessing a handle shift")
    p.add_argument("--curve", required=True, help="c[j,i] with i >= 2")
    p.add_argument("--shift", required=True, help="adjacent shift such as h[1,2]")

    p = add("suite", cmd_suite, "replay an identity suite")
    p.add_argument("--name")
    p.add_argument("--list", action="store_true")

    p = add("metric", cmd_metric, "permutation-topology metric demo")
    p.add_argument("--demo", default="gn")
    p.add_argument("--N", type=int, default=5)
    p.add_argument("--depth", type=_positive, default=20)

    p = add("stripmap", cmd_stripmap, "evaluate the annulus twist or the strip shift")
    p.add_argument("--map", choices=("twist", "shift"), required=True)
    p.add_argument("--point", required=True, help="theta,t for twist; x,y for shift")

    p = add("parse-check", cmd_parse_check, "parse and re-render words")
    p.add_argument("--word")
    p.add_argument("--random", type=int, default=0, help="also check this many seeded random words")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    out = Outcome(args.command)
    try:
        args.func(args, out)
    except ModelError as exc:
        print(f"bigmcg {args.command}: error: {exc}", file=sys.stderr)
        return USAGE
    print(out.render(args.format, args.seed))
    return out.code


if __name__ == "__main__":
    sys.exit(main())
