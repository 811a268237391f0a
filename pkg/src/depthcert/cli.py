"""Command line interface: problem files in, verdict reports out.

A problem file declares a ring, optionally a term order, an ideal, and named
linear forms:

    # pentagon plus a path
    ring: a b c d e f g h
    ideal: a*b b*c c*d d*e a*e a*f f*g g*h
    form s: h + g

Reports are plain text by default, or line-delimited JSON with --json; every
JSON line carries the command, verdict, theorem and elapsed_ms keys.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import dataclass, field

from . import combinatorics, initreg, oracle
from .core import LinearSum, MonomialIdeal, RingContext, TermOrder, sequence_term_order
from .errors import PreconditionError, ResourceLimitError, RingMismatchError
from .groebner import as_polynomial, buchberger

__all__ = ["ProblemFile", "ProblemFileError", "parse", "print_problem", "main"]


class ProblemFileError(ValueError):
    """Problem-file syntax or consistency error, pinned to a line."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass
class ProblemFile:
    ring: RingContext
    order: TermOrder | None
    ideal: MonomialIdeal
    forms: dict[str, LinearSum] = field(default_factory=dict)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProblemFile):
            return NotImplemented
        return (
            self.ring.names == other.ring.names
            and (self.order.priority if self.order else None)
            == (other.order.priority if other.order else None)
            and self.ideal == other.ideal
            and self.forms == other.forms
        )


def parse(text: str) -> ProblemFile:
    """Parse problem-file text; see the module docstring for the grammar."""
    ring: RingContext | None = None
    order: TermOrder | None = None
    ideal: MonomialIdeal | None = None
    forms: dict[str, LinearSum] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ProblemFileError(f"expected '<header>:', got {line!r}", lineno)
        header, _, rest = line.partition(":")
        header = header.strip()
        tokens = rest.split()
        if header == "ring":
            if ring is not None:
                raise ProblemFileError("duplicate ring declaration", lineno)
            try:
                ring = RingContext(tokens)
            except ValueError as e:
                raise ProblemFileError(str(e), lineno) from None
            continue
        if ring is None:
            raise ProblemFileError("the ring must be declared first", lineno)
        if header == "order":
            if order is not None:
                raise ProblemFileError("duplicate order declaration", lineno)
            if not tokens or tokens[0] != "lex":
                raise ProblemFileError("only 'order: lex <names>' is supported", lineno)
            for name in tokens[1:]:
                if name not in ring.names:
                    raise ProblemFileError(f"undeclared variable {name!r}", lineno)
            try:
                order = TermOrder.lex(ring, tokens[1:])
            except ValueError as e:
                raise ProblemFileError(str(e), lineno) from None
        elif header == "ideal":
            if ideal is not None:
                raise ProblemFileError("duplicate ideal declaration", lineno)
            gens = []
            for token in tokens:
                try:
                    gens.append(ring.parse_monomial(token))
                except (ValueError, KeyError) as e:
                    raise ProblemFileError(f"bad monomial {token!r}: {e}", lineno) from None
            ideal = MonomialIdeal(ring, gens)
        elif header.startswith("form"):
            parts = header.split()
            if len(parts) != 2:
                raise ProblemFileError("form header must be 'form <id>:'", lineno)
            name = parts[1]
            if name in forms:
                raise ProblemFileError(f"duplicate form {name!r}", lineno)
            variables = [v.strip() for v in rest.split("+")]
            if not all(variables):
                raise ProblemFileError("malformed form, expected '<var> + <var> ...'", lineno)
            for v in variables:
                if v not in ring.names:
                    raise ProblemFileError(f"undeclared variable {v!r}", lineno)
            try:
                forms[name] = LinearSum(ring, variables)
            except ValueError as e:
                raise ProblemFileError(str(e), lineno) from None
        else:
            raise ProblemFileError(f"unknown header {header!r}", lineno)
    if ring is None:
        raise ProblemFileError("missing ring declaration", 1)
    if ideal is None:
        raise ProblemFileError("missing ideal declaration", 1)
    return ProblemFile(ring=ring, order=order, ideal=ideal, forms=forms)


def print_problem(pf: ProblemFile) -> str:
    """Canonical text for a ProblemFile; parse(print_problem(pf)) == pf."""
    lines = ["ring: " + " ".join(pf.ring.names)]
    if pf.order is not None:
        lines.append("order: lex " + " ".join(pf.ring.names[i] for i in pf.order.priority))
    lines.append("ideal: " + " ".join(str(g) for g in pf.ideal.sorted_gens()))
    for name, form in pf.forms.items():
        lines.append(f"form {name}: {form}")
    return "\n".join(lines) + "\n"


class UsageError(ValueError):
    pass


def _load(path: str) -> ProblemFile:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e}") from None
    return parse(text)


def _selected_forms(pf: ProblemFile, names: list[str] | None) -> list[tuple[str, LinearSum]]:
    if not names:
        return list(pf.forms.items())
    chosen = []
    for name in names:
        if name not in pf.forms:
            raise UsageError(f"no form {name!r} in the problem file")
        chosen.append((name, pf.forms[name]))
    return chosen


def _order_for(pf: ProblemFile, forms: list[LinearSum]) -> TermOrder:
    if pf.order is not None:
        return pf.order
    if forms:
        return sequence_term_order(pf.ring, forms)
    return TermOrder.lex(pf.ring)


def _gens(ideal: MonomialIdeal) -> list[str]:
    return [str(g) for g in ideal.sorted_gens()]


def _order_names(order: TermOrder) -> str:
    return " > ".join(order.ring.names[i] for i in order.priority)


# ---------------------------------------------------------------------------
# command handlers: each returns (verdict, payload, human lines)


def _cmd_gb(pf: ProblemFile, args) -> tuple[bool, dict, list[str]]:
    forms = _selected_forms(pf, args.form)
    order = _order_for(pf, [f for _, f in forms])
    polys = [as_polynomial(g) for g in pf.ideal.power(args.power).gens]
    polys += [f.to_polynomial() for _, f in forms]
    basis = buchberger(polys, order)
    ini = basis.initial_ideal()
    return (
        True,
        {
            "basis": [str(p) for p in basis.elements],
            "initial_ideal": _gens(ini),
            "order": _order_names(order),
        },
        [f"order: {_order_names(order)}", "basis:"]
        + [f"  {p}" for p in basis.elements]
        + ["initial ideal: " + " ".join(_gens(ini))],
    )


def _cmd_initial(pf: ProblemFile, args) -> tuple[bool, dict, list[str]]:
    forms = _selected_forms(pf, args.form)
    order = _order_for(pf, [f for _, f in forms])
    chain = initreg.iterated_initial(
        pf.ideal.power(args.power), [f for _, f in forms], order
    )
    return (
        True,
        {
            "order": _order_names(order),
            "chain": [_gens(J) for J in chain],
            "final": _gens(chain[-1]),
        },
        [f"order: {_order_names(order)}"]
        + [f"J{i}: " + " ".join(_gens(J)) for i, J in enumerate(chain)],
    )


def _cmd_ass(pf: ProblemFile, args) -> tuple[bool, dict, list[str]]:
    primes = oracle.associated_primes(pf.ideal.power(args.power))
    supports = [[pf.ring.names[i] for i in sorted(p.support)] for p in primes]
    return (
        True,
        {"primes": supports, "count": len(supports)},
        [f"associated primes ({len(supports)}):"]
        + ["  (" + ", ".join(s) + ")" for s in supports],
    )


def _cmd_depth(pf: ProblemFile, args) -> tuple[bool, dict, list[str]]:
    power = pf.ideal.power(args.power)
    route = "resolution"
    if args.power == 2 and len(power.gens) > 24:
        certified = initreg.certified_square_depth(pf.ideal)
        if certified is not None:
            value, certificate, witness = certified
            return (
                True,
                {
                    "depth": value,
                    "route": "two-sided certificate",
                    "sequence": [str(f) for f in certificate.forms],
                    "betti_witness": str(witness),
                },
                [
                    f"depth: {value}",
                    "route: two-sided certificate",
                    "sequence: " + "; ".join(str(f) for f in certificate.forms),
                    f"betti witness: {witness}",
                ],
            )
        route = "resolution (certificate inconclusive)"
    value = oracle.depth(power)
    return (
        True,
        {"depth": value, "route": route},
        [f"depth: {value}", f"route: {route}"],
    )


def _cmd_power(pf: ProblemFile, args) -> tuple[bool, dict, list[str]]:
    power = pf.ideal.power(args.power)
    return (
        True,
        {"generators": _gens(power), "count": len(power.gens)},
        [f"minimal generators of the power ({len(power.gens)}):", "  " + " ".join(_gens(power))],
    )


def _cmd_colon(pf: ProblemFile, args) -> tuple[bool, dict, list[str]]:
    forms = _selected_forms(pf, args.form)
    if len(forms) != 1:
        raise UsageError("colon needs exactly one binomial form (use --form)")
    name, form = forms[0]
    if len(form) != 2:
        raise UsageError(f"form {name!r} is not a binomial")
    quotient = initreg.colon_linear_binomial(
        pf.ideal, args.power, form.variables[0], form.variables[1]
    )
    return (
        True,
        {"form": str(form), "power": args.power, "generators": _gens(quotient)},
        [f"({'I' if args.power == 1 else f'I^{args.power}'} : {form}) = "
         + "(" + ", ".join(_gens(quotient)) + ")"],
    )


def _cmd_star_check(pf: ProblemFile, args) -> tuple[bool, dict, list[str]]:
    forms = _selected_forms(pf, args.form)
    if not forms:
        raise UsageError("star-check needs at least one form")
    results = []
    lines = []
    for name, form in forms:
        outcome = initreg.check_star(pf.ideal, form)
        if isinstance(outcome, initreg.StarWitness):
            results.append({"form": str(form), "passed": True, "order": _order_names(outcome.order)})
            lines.append(f"{name}: {form} satisfies the condition; order {_order_names(outcome.order)}")
        else:
            powers = [
                {"variable": pf.ring.names[v], "generator": str(g)}
                for v, g in outcome.power_violations
            ]
            covers = [str(g) for g in outcome.cover_violations]
            results.append(
                {"form": str(form), "passed": False, "power_violations": powers, "cover_violations": covers}
            )
            why = []
            if powers:
                why.append("squared: " + ", ".join(f"{p['variable']} in {p['generator']}" for p in powers))
            if covers:
                why.append("uncovered: " + ", ".join(covers))
            lines.append(f"{name}: {form} fails ({'; '.join(why)})")
    return all(r["passed"] for r in results), {"checks": results}, lines


def _cmd_regular_check(pf: ProblemFile, args) -> tuple[bool, dict, list[str]]:
    forms = _selected_forms(pf, args.form)
    if not forms:
        raise UsageError("regular-check needs at least one form")
    order = _order_for(pf, [f for _, f in forms])
    report = initreg.is_initially_regular(
        pf.ideal.power(args.power), [f for _, f in forms], order
    )
    steps = []
    lines = [f"order: {_order_names(order)}"]
    for (name, _), step in zip(forms, report.steps):
        entry = {
            "form": str(step.form),
            "regular": step.regular,
            "tested_against": _gens(step.tested_against),
        }
        if step.witness is not None:
            entry["witness"] = "(" + ", ".join(step.witness.names()) + ")"
        steps.append(entry)
        verdictword = "regular" if step.regular else "zerodivisor"
        lines.append(f"{name}: {step.form} is {verdictword} on the current quotient")
        if step.witness is not None:
            lines.append(f"  witness prime: ({', '.join(step.witness.names())})")
    lines.append("initially regular" if report.ok else "not initially regular")
    return report.ok, {"steps": steps, "initially_regular": report.ok}, lines


def _cmd_find_initreg(pf: ProblemFile, args) -> tuple[bool, dict, list[str]]:
    certificate = initreg.find_sequences(pf.ideal)
    payload = {
        "forms": [str(f) for f in certificate.forms],
        "kinds": list(certificate.kinds),
        "certificate_verdict": certificate.verdict,
        "depth_lower_bound": certificate.depth_lower_bound,
        "order": _order_names(certificate.order) if certificate.order else None,
    }
    lines = [
        f"depth lower bound for the square: {certificate.depth_lower_bound}",
        "forms: " + ("; ".join(str(f) for f in certificate.forms) or "(none)"),
        f"certified as: {certificate.verdict}",
    ]
    return certificate.depth_lower_bound > 0, payload, lines


def _cmd_tt_ass_square(pf: ProblemFile, args) -> tuple[bool, dict, list[str]]:
    primes = combinatorics.tt_associated_primes_square(pf.ideal)
    named = [[pf.ring.names[i] for i in sorted(p.support)] for p in primes]
    named.sort(key=lambda s: (len(s), s))
    return (
        True,
        {"primes": named, "count": len(named)},
        [f"associated primes of the square ({len(named)}):"]
        + ["  (" + ", ".join(s) + ")" for s in named],
    )


def _cmd_graph_bound(pf: ProblemFile, args) -> tuple[bool, dict, list[str]]:
    if args.vertex not in pf.ring.names:
        raise UsageError(f"no variable {args.vertex!r} in the ring")
    graph = combinatorics.to_hypergraph(pf.ideal)
    bound = combinatorics.power_regularity_bound(graph, args.vertex)
    printable = "inf" if bound == math.inf else int(bound)
    form = combinatorics.star_form(graph, args.vertex)
    return (
        True,
        {"vertex": args.vertex, "bound": printable, "form": str(form)},
        [f"bound: {printable}", f"form: {form}"],
    )


def _cmd_leaves_bound(pf: ProblemFile, args) -> tuple[bool, dict, list[str]]:
    graph = combinatorics.to_hypergraph(pf.ideal)
    result = combinatorics.leaves_bound(graph)
    return (
        True,
        {
            "bound": result.bound,
            "leaves": [pf.ring.names[v] for v in result.leaves],
            "forms": [str(f) for f in result.forms],
        },
        [
            f"bound: {result.bound}",
            "leaves: " + ", ".join(pf.ring.names[v] for v in result.leaves),
            "forms: " + "; ".join(str(f) for f in result.forms),
        ],
    )


def _cmd_verify_lemmas(pf, args) -> tuple[bool, dict, list[str]]:
    from . import verify

    results = verify.run_all()
    checks = [
        {"name": r.name, "passed": r.passed, "detail": r.detail, "elapsed_ms": r.elapsed_ms}
        for r in results
    ]
    lines = [
        f"{'pass' if r.passed else 'FAIL'}  {r.name}  ({r.elapsed_ms} ms)  {r.detail}"
        for r in results
    ]
    ok = all(r.passed for r in results)
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    return ok, {"checks": checks}, lines


_THEOREMS = {
    "gb": "reduced Groebner basis via Buchberger",
    "initial": "iterated initial ideals along a head-elimination order",
    "ass": "associated primes via irreducible decomposition and localization",
    "depth": "depth via multigraded resolution homology",
    "power": "minimal generators of an ideal power",
    "colon": "binomial colon intersection identity",
    "star-check": "head cover condition with squarefree powers",
    "regular-check": "initial regularity along iterated initial ideals",
    "find-initreg": "criterion families with disjoint supports",
    "tt-ass-square": "second-power associated primes via two-saturating vertex sets",
    "graph-bound": "odd cycle distance bound for power regularity",
    "leaves-bound": "distant leaves certificate",
    "verify-lemmas": "worked-example regression suite",
}

_HANDLERS = {
    "gb": _cmd_gb,
    "initial": _cmd_initial,
    "ass": _cmd_ass,
    "depth": _cmd_depth,
    "power": _cmd_power,
    "colon": _cmd_colon,
    "star-check": _cmd_star_check,
    "regular-check": _cmd_regular_check,
    "find-initreg": _cmd_find_initreg,
    "tt-ass-square": _cmd_tt_ass_square,
    "graph-bound": _cmd_graph_bound,
    "leaves-bound": _cmd_leaves_bound,
    "verify-lemmas": _cmd_verify_lemmas,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="depthcert",
        description="Certificates and oracles for depth bounds on monomial ideal powers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _HANDLERS:
        p = sub.add_parser(name, help=_THEOREMS[name])
        if name != "verify-lemmas":
            p.add_argument("file", help="problem file")
        p.add_argument("--json", action="store_true", help="line-delimited JSON output")
        if name in {"gb", "initial", "ass", "depth", "power", "colon", "regular-check"}:
            p.add_argument("--power", type=int, default=1, metavar="t")
        if name in {"gb", "initial", "colon", "star-check", "regular-check"}:
            p.add_argument("--form", action="append", metavar="ID",
                           help="form name from the file; repeatable")
        if name == "graph-bound":
            p.add_argument("--vertex", required=True, metavar="NAME")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    started = time.perf_counter()
    try:
        pf = _load(args.file) if args.command != "verify-lemmas" else None
        if pf is not None and getattr(args, "power", 1) < 1:
            raise UsageError("--power must be a positive integer")
        verdict, payload, lines = _HANDLERS[args.command](pf, args)
    except (ProblemFileError, UsageError, RingMismatchError, PreconditionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ResourceLimitError as e:
        print(f"resource limit: {e}", file=sys.stderr)
        return 3
    elapsed_ms = int((time.perf_counter() - started) * 1000)
    record = {
        "command": args.command,
        "verdict": verdict,
        "theorem": _THEOREMS[args.command],
        "elapsed_ms": elapsed_ms,
    }
    record.update(payload)
    if args.json:
        print(json.dumps(record, sort_keys=True))
    else:
        print(f"command: {args.command}")
        print(f"theorem: {_THEOREMS[args.command]}")
        for line in lines:
            print(line)
        print(f"verdict: {'pass' if verdict else 'fail'}")
        print(f"elapsed_ms: {elapsed_ms}")
    return 0 if verdict else 1


if __name__ == "__main__":
    sys.exit(main())
