"""Worked-example regression registry behind the verify-lemmas command.

Every check replays a concrete example from the development of the library
against frozen expected values.  Checks raise AssertionError on mismatch and
return a one-line detail string on success; run_all never raises.
"""

from __future__ import annotations

import contextlib
import io
import math
import os
import random
import tempfile
import time
from dataclasses import dataclass
from fractions import Fraction

from . import cli, combinatorics, initreg, oracle
from .core import (
    LinearSum,
    Monomial,
    MonomialIdeal,
    Polynomial,
    RingContext,
    TermOrder,
    sequence_term_order,
)
from .errors import PreconditionError
from .groebner import as_polynomial, initial_ideal, s_polynomial

__all__ = ["CheckResult", "run_all", "check_names"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    elapsed_ms: int


def _ideal(ring: RingContext, *gens: str) -> MonomialIdeal:
    return MonomialIdeal(ring, [ring.parse_monomial(g) for g in gens])


# ---------------------------------------------------------------------------
# fixtures


def _intro():
    R = RingContext(list("abcdefg"))
    return R, _ideal(R, "a*b*c", "a*c*d", "a*e", "e*f", "f*g")


def _pentagon_path():
    R = RingContext(list("abcdefgh"))
    return R, _ideal(R, "a*b", "b*c", "c*d", "d*e", "a*e", "a*f", "f*g", "g*h")


def _graph36():
    R = RingContext(list("abcdef"))
    return R, _ideal(R, "a*b", "b*c", "b*d", "c*d", "d*e", "e*f")


def _nonsqfree():
    R = RingContext(list("abcdef"))
    return R, _ideal(R, "a^2*b", "b*c^2", "b*d^2", "c*d", "d*e", "e*f")


def _path6():
    R = RingContext(list("abcdefg"))
    return R, _ideal(R, "a*b", "b*c", "c*d", "d*e", "e*f", "f*g")


def _path3():
    R = RingContext(list("abcd"))
    return R, _ideal(R, "a*b", "b*c", "c*d")


def _pentagon():
    R = RingContext(["x1", "x2", "x3", "x4", "x5"])
    return R, _ideal(R, "x1*x2", "x2*x3", "x3*x4", "x4*x5", "x1*x5")


def _star_graph():
    R = RingContext(["b0", "b1", "b2", "b3", "b4", "b5", "x1", "x2", "x3", "x4"])
    return R, _ideal(
        R, "b0*b1", "b0*b2", "b0*b3", "b0*b4", "b0*b5", "b1*x1", "b2*x2", "b3*x3", "b4*x4"
    )


def _tree13():
    R = RingContext([f"x{i}" for i in range(1, 14)])
    return R, _ideal(
        R, "x1*x2", "x2*x3", "x3*x4", "x4*x5", "x5*x6", "x4*x7",
        "x7*x8", "x8*x9", "x9*x10", "x10*x11", "x11*x12", "x12*x13",
    )


def _ex38():
    R = RingContext([f"x{i}" for i in range(1, 9)])
    return R, _ideal(R, "x1*x2", "x2*x3", "x3*x4", "x4*x5", "x4*x6", "x6*x7", "x7*x8")


def _tenvar():
    R = RingContext(["a", "b", "x1", "x2", "x3", "x4", "y1", "y2", "y3", "y4"])
    I = _ideal(
        R, "a*b", "b*x1*y1", "b*x2*y2", "b*x3*y3", "b*x4*y4",
        "x1*x2*x3*x4", "y1*y2*y3*y4",
    )
    f1 = as_polynomial(R.parse_monomial("b^3*x1*x2*x3*x4*y1*y2*y3*y4"))
    f2 = as_polynomial(R.parse_monomial("a*b^2*x1*x2*x3*x4*y1*y2*y3*y4"))
    return R, I, f1, f2


def _random_poly(ring: RingContext, rng: random.Random, variables: list[int]) -> Polynomial:
    terms = {}
    for _ in range(rng.randint(1, 4)):
        exps = [0] * ring.nvars
        for v in variables:
            exps[v] = rng.randint(0, 2)
        terms[ring.monomial(exps)] = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))
    p = Polynomial(ring, terms)
    return p if not p.is_zero() else as_polynomial(ring.variable(variables[0]))


# ---------------------------------------------------------------------------
# checks


def check_spoly_scaling() -> str:
    ring = RingContext(list("uvwxyz"))
    order = TermOrder.lex(ring)
    rng = random.Random(8191)
    for _ in range(40):
        g1 = _random_poly(ring, rng, [3, 4, 5])
        g2 = _random_poly(ring, rng, [3, 4, 5])
        m1 = ring.monomial([rng.randint(0, 2), rng.randint(0, 2), rng.randint(0, 2), 0, 0, 0])
        m2 = ring.monomial([rng.randint(0, 2), rng.randint(0, 2), rng.randint(0, 2), 0, 0, 0])
        left = s_polynomial(as_polynomial(m1) * g1, as_polynomial(m2) * g2, order)
        right = as_polynomial(m1.lcm(m2)) * s_polynomial(g1, g2, order)
        assert left == right
    return "40 disjoint-block scalings match exactly"


def check_spoly_common_factor() -> str:
    ring = RingContext(list("uvwxyz"))
    order = TermOrder.lex(ring)
    rng = random.Random(4099)
    for _ in range(40):
        f = _random_poly(ring, rng, [0, 1, 2, 3])
        m = ring.monomial([rng.randint(0, 2) for _ in range(6)])
        n = ring.monomial([rng.randint(0, 2) for _ in range(6)])
        assert s_polynomial(as_polynomial(m) * f, as_polynomial(n) * f, order).is_zero()
    return "40 common-factor S-polynomials vanish"


def check_pentagon_initial_ideal() -> str:
    R, I = _pentagon()
    order = TermOrder.lex(R, front=["x1", "x2", "x5"])
    closed = initreg.closed_form_ini_trinomial(I, "x1", "x2", "x5", order)
    f = LinearSum(R, ["x1", "x2", "x5"]).to_polynomial()
    ini = initial_ideal([as_polynomial(g) for g in I.gens] + [f], order)
    assert closed == ini
    assert ini.contains(R.parse_monomial("x4*x5"))
    assert ini.contains(R.parse_monomial("x3*x5^2"))
    return "closed form matches Buchberger; x4*x5 and x3*x5^2 present"


def check_star_graph_initial_ideal() -> str:
    R, I = _star_graph()
    f = LinearSum(R, ["b0", "b1", "b2", "b3", "b4", "b5"]).to_polynomial()
    ini = initial_ideal([as_polynomial(g) for g in I.gens] + [f], TermOrder.lex(R))
    got = sorted(str(g) for g in ini.gens)
    expect = sorted([
        "b0", "b1*x1", "b2*x2", "b3*x3", "b4*x4",
        "b1^2", "b1*b2", "b1*b3", "b1*b4", "b1*b5",
        "b2^2*x1", "b2*b3*x1", "b2*b4*x1", "b2*b5*x1",
        "b3^2*x1*x2", "b3*b4*x1*x2", "b3*b5*x1*x2",
        "b4^2*x1*x2*x3", "b4*b5*x1*x2*x3",
        "b5^2*x1*x2*x3*x4",
    ])
    assert got == expect
    return "all 20 generators reproduced, ending in b5^2*x1*x2*x3*x4"


def check_power_membership_10var() -> str:
    R, I, f1, f2 = _tenvar()
    I4 = I.power(4)
    a, b = as_polynomial(R.variable("a")), as_polynomial(R.variable("b"))
    assert I4.contains_polynomial(b * f1)
    assert not I4.contains_polynomial(a * f1)
    assert I4.contains_polynomial(a * f2)
    return "b*f1 and a*f2 in the fourth power, a*f1 outside"


def check_intro_star_witnesses() -> str:
    R, I = _intro()
    for variables in (["a", "c", "e"], ["g", "f"]):
        outcome = initreg.check_star(I, LinearSum(R, variables))
        assert isinstance(outcome, initreg.StarWitness)
    return "a+c+e and g+f both satisfy the head-cover condition"


def check_hat_substitution() -> str:
    R = RingContext(list("abcde"))
    m = R.parse_monomial("a*b*d^2")
    assert str(initreg.hat_substitute(m, "a", "b")) == "b^2*d^2"
    assert str(initreg.hat_substitute(R.parse_monomial("a^2*c"), "a", "e")) == "c*e^2"
    return "b0*b1*M' maps to b1^2*M'"


def check_intro_initially_regular() -> str:
    R, I = _intro()
    forms = [LinearSum(R, ["g", "f"]), LinearSum(R, ["d", "a"]), LinearSum(R, ["a", "c", "e"])]
    report = initreg.is_initially_regular(I, forms)
    assert report.ok
    order = sequence_term_order(R, forms)
    assert [R.names[i] for i in order.priority] == list("gdafceb")
    return "three-step chain regular; order g>d>a>f>c>e>b"


def check_tree13_initially_regular_square() -> str:
    R, I = _tree13()
    forms = [
        LinearSum(R, ["x1", "x2"]),
        LinearSum(R, ["x13", "x12"]),
        LinearSum(R, ["x5", "x6", "x4"]),
        LinearSum(R, ["x9", "x8", "x10"]),
    ]
    report = initreg.is_initially_regular(I.power(2), forms)
    assert report.ok and all(s.regular for s in report.steps)
    return "four forms initially regular on the square"


def check_colon_power4_counterexample() -> str:
    R, I, f1, f2 = _tenvar()
    try:
        initreg.colon_linear_binomial(I, 4, "a", "b")
        raise AssertionError("t=4 was not refused")
    except PreconditionError:
        pass
    I4 = I.power(4)
    ab = LinearSum(R, ["a", "b"]).to_polynomial()
    assert I4.contains_polynomial((f1 - f2) * ab)
    assert not I4.contains_polynomial(f1 * ab)
    assert not I4.contains_polynomial(f2 * ab)
    return "t=4 refused; (f1-f2)(a+b) inside, f1(a+b) and f2(a+b) outside"


def check_graph36_pair_verdicts() -> str:
    R, I = _graph36()
    assert initreg.criterion_binomial(I, "f", "e").passed
    bad = initreg.criterion_binomial(I, "a", "b")
    assert not bad.passed
    assert bad.obstruction == (R.index("c"), R.index("d"))
    return "f+e passes; a+b fails with witness (c, d)"


def check_nonnecessity_example() -> str:
    R, I = _nonsqfree()
    assert not initreg.criterion_binomial(I, "a", "b").passed
    zerodiv, _ = oracle.is_zerodivisor_linear(I.power(2), LinearSum(R, ["a", "b"]))
    assert not zerodiv
    return "criterion fails yet a+b is regular on the square"


def check_path_families() -> str:
    _, p6 = _path6()
    assert initreg.criterion_binomial_family(p6, [("a", "b"), ("g", "f")]).passed
    _, p3 = _path3()
    outcome = initreg.criterion_binomial_family(p3, [("a", "b"), ("d", "c")])
    assert not outcome.passed
    assert any("b*c" in reason for reason in outcome.failures)
    return "path-6 family passes; path-3 family fails on the generator b*c"


def check_pentagon_trinomial_clause_e() -> str:
    R, I = _pentagon()
    outcome = initreg.criterion_trinomial(I, "x1", "x2", "x5")
    assert not outcome.passed
    witnesses = [v.witness for v in outcome.violations if v.clause == "e"]
    assert (R.index("x3"), R.index("x4")) in witnesses
    return "clause (e) fails with witness (x3, x4)"


def check_pentagon_square_closed_form() -> str:
    R, I = _pentagon()
    order = TermOrder.lex(R, front=["x1", "x2", "x5"])
    try:
        initreg.closed_form_ini_square_trinomial(I, "x1", "x2", "x5", order)
        raise AssertionError("square closed form accepted the pentagon")
    except PreconditionError:
        pass
    f = LinearSum(R, ["x1", "x2", "x5"]).to_polynomial()
    ini_sq = initial_ideal([as_polynomial(g) for g in I.power(2).gens] + [f], order)
    inner = initreg.closed_form_ini_trinomial(I, "x1", "x2", "x5", order)
    naive = inner.power(2).plus([R.variable("x1")])
    w = R.parse_monomial("x3*x4*x5^2")
    assert ini_sq.contains(w) and not naive.contains(w)
    w3 = R.parse_monomial("x3*x4*x5^3")
    assert ini_sq.contains(w3) and naive.contains(w3)
    return "x3*x4*x5^2 separates the true initial ideal from the naive square"


def check_tree13_triple_family() -> str:
    _, I = _tree13()
    outcome = initreg.criterion_trinomial_family(I, [("x5", "x6", "x4"), ("x9", "x8", "x10")])
    assert outcome.passed, outcome.failures
    return "both triples pass with disjoint neighborhoods"


def check_tree13_combined_certificate() -> str:
    _, I = _tree13()
    outcome = initreg.criterion_combined(
        I, [("x1", "x2"), ("x13", "x12")], [("x5", "x6", "x4"), ("x9", "x8", "x10")]
    )
    assert outcome.passed and outcome.certificate is not None
    assert outcome.certificate.depth_lower_bound == 4
    assert outcome.certificate.verdict == "initially_regular"
    return "two pairs and two triples certify depth >= 4 for the square"


def check_ex38_binomial_family() -> str:
    _, I = _ex38()
    outcome = initreg.criterion_combined(
        I, [("x1", "x2"), ("x5", "x4"), ("x8", "x7")], []
    )
    assert outcome.passed and outcome.certificate is not None
    assert outcome.certificate.depth_lower_bound == 3
    assert outcome.certificate.verdict == "regular"
    return "three leaf pairs certify depth >= 3 for the square"


def check_find_sequences_bounds() -> str:
    _, tree = _tree13()
    assert initreg.find_sequences(tree).depth_lower_bound >= 4
    _, ex38 = _ex38()
    assert initreg.find_sequences(ex38).depth_lower_bound >= 3
    R = RingContext(list("xyz"))
    triangle = _ideal(R, "x*y", "x*z", "y*z")
    assert initreg.find_sequences(triangle).depth_lower_bound == 0
    return "bounds 4, 3 and 0 on tree-13, the 8-vertex tree and the triangle"


def check_intro_hypergraph() -> str:
    R, I = _intro()
    H = combinatorics.to_hypergraph(I)
    sizes = sorted(len(e) for e in H.edges)
    assert sizes == [2, 2, 2, 3, 3]
    return "two 3-edges and three 2-edges recovered"


def check_star_forms() -> str:
    _, pp = _pentagon_path()
    H = combinatorics.to_hypergraph(pp)
    assert str(combinatorics.star_form(H, "h")) == "h + g"
    _, star = _star_graph()
    HS = combinatorics.to_hypergraph(star)
    assert str(combinatorics.star_form(HS, "b0")) == "b0 + b1 + b2 + b3 + b4 + b5"
    return "stars at h and at the hub match"


def check_pentagon_path_odd_cycle() -> str:
    R, I = _pentagon_path()
    H = combinatorics.to_hypergraph(I)
    analysis = combinatorics.analyze_cycles(H)
    assert not analysis.bipartite
    cycle = analysis.unique_odd_cycle
    assert cycle is not None and len(cycle) == 5
    assert analysis.k == 2 and analysis.distances[R.index("h")] == 3
    return "unique 5-cycle, k=2, d(h, C)=3"


def check_power_regularity_bounds() -> str:
    _, pp = _pentagon_path()
    H = combinatorics.to_hypergraph(pp)
    assert combinatorics.power_regularity_bound(H, "h") == 4
    _, p6 = _path6()
    H6 = combinatorics.to_hypergraph(p6)
    assert combinatorics.power_regularity_bound(H6, "a") == math.inf
    return "bound 4 at h; bipartite path unbounded"


def check_star_graph_neighborhoods() -> str:
    R, I = _star_graph()
    hub = {str(m) for m in combinatorics.neighborhood_monomials(I, "b0")}
    assert hub == {"b1", "b2", "b3", "b4", "b5"}
    spoke = {str(m) for m in combinatorics.neighborhood_monomials(I, "b2")}
    assert spoke == {"x2", "b0"}
    return "N(b0) = {b1..b5}, N(b2) = {x2, b0}"


def check_intro_square_saturation() -> str:
    R, I = _intro()
    primes = combinatorics.tt_associated_primes_square(I)
    ace = {R.index("a"), R.index("c"), R.index("e")}
    assert all(not ace <= set(p.support) for p in primes)
    zerodiv, _ = oracle.is_zerodivisor_linear(I.power(2), LinearSum(R, ["a", "c", "e"]))
    assert not zerodiv
    return "no associated prime of the square contains {a, c, e}; a+c+e regular"


def check_ex38_leaves_bound() -> str:
    R, I = _ex38()
    H = combinatorics.to_hypergraph(I)
    result = combinatorics.leaves_bound(H)
    assert result.bound == 3
    assert {R.names[v] for v in result.leaves} == {"x1", "x5", "x8"}
    assert [str(f) for f in result.forms] == ["x1 + x2", "x5 + x4", "x8 + x7"]
    _, p3 = _path3()
    assert combinatorics.leaves_bound(combinatorics.to_hypergraph(p3)).bound == 1
    return "leaves {x1, x5, x8} give bound 3; path-3 gives 1"


def check_pentagon_path_fifth_power_socle() -> str:
    R, I = _pentagon_path()
    I5 = I.power(5)
    w = R.parse_monomial("a^2*b*c*d*e*f^2*g")
    assert not I5.contains(w)
    for i in range(R.nvars):
        assert I5.contains(w * R.variable(i))
    return "socle witness pins depth of the fifth power at 0"


def check_intro_depth() -> str:
    _, I = _intro()
    assert oracle.depth(I) == 3
    return "depth 3 for the intro quotient"


def check_depth_table() -> str:
    _, p6 = _path6()
    assert oracle.depth(p6) == 3 and oracle.depth(p6.power(2)) == 2
    _, g36 = _graph36()
    assert oracle.depth(g36) == 2 and oracle.depth(g36.power(2)) == 1
    _, tree = _tree13()
    assert oracle.depth(tree) == 5
    certified = initreg.certified_square_depth(tree)
    assert certified is not None and certified[0] == 4
    return "depths 3/2, 2/1 and 5/4 reproduced"


def check_square_regular_sequences() -> str:
    R6, p6 = _path6()
    forms = [LinearSum(R6, ["a", "b"]), LinearSum(R6, ["g", "f"])]
    assert oracle.is_regular_sequence(p6.power(2), forms)
    R3, p3 = _path3()
    forms3 = [LinearSum(R3, ["a", "b"]), LinearSum(R3, ["d", "c"])]
    assert not oracle.is_regular_sequence(p3.power(2), forms3)
    return "path-6 pair is regular on the square, path-3 pair is not"


def check_polarization_names() -> str:
    R = RingContext(["b1"])
    pol = oracle.polarize(_ideal(R, "b1^2"))
    assert [str(g) for g in pol.ideal.sorted_gens()] == ["b1*b1_2"]
    return "b1^2 polarizes to b1*b1_2"


_INTRO_FILE = """\
ring: a b c d e f g
order: lex g f d a b c e
ideal: a*b*c a*c*d a*e e*f f*g
form f1: g + f
form f2: d + a
form f3: a + c + e
"""


def check_problem_file_roundtrip() -> str:
    pf = cli.parse(_INTRO_FILE)
    assert len(pf.ideal.gens) == 5
    assert [pf.ring.names[i] for i in pf.order.priority] == list("gfdabce")
    assert cli.parse(cli.print_problem(pf)) == pf
    return "intro file parses to 5 generators and round-trips"


def _run_cli(lines: str, argv: list[str]) -> tuple[int, str]:
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "problem.txt")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(lines)
        buffer = io.StringIO()
        with contextlib.redirect_stdout(buffer):
            code = cli.main([argv[0], path] + argv[1:])
    return code, buffer.getvalue()


def check_cli_depth_square() -> str:
    text = "ring: " + " ".join(f"x{i}" for i in range(1, 14)) + "\n"
    text += ("ideal: x1*x2 x2*x3 x3*x4 x4*x5 x5*x6 x4*x7 x7*x8 x8*x9 "
             "x9*x10 x10*x11 x11*x12 x12*x13\n")
    code, out = _run_cli(text, ["depth", "--power", "2"])
    assert code == 0 and "depth: 4" in out
    return "depth --power 2 prints 4 and exits 0"


def check_cli_graph_bound() -> str:
    text = "ring: a b c d e f g h\nideal: a*b b*c c*d d*e a*e a*f f*g g*h\n"
    code, out = _run_cli(text, ["graph-bound", "--vertex", "h"])
    assert code == 0 and "bound: 4" in out
    return "graph-bound --vertex h prints 4 and exits 0"


CHECKS: list[tuple[str, "callable"]] = [
    ("spoly-scaling", check_spoly_scaling),
    ("spoly-common-factor", check_spoly_common_factor),
    ("pentagon-initial-ideal", check_pentagon_initial_ideal),
    ("star-graph-initial-ideal", check_star_graph_initial_ideal),
    ("power-membership-10var", check_power_membership_10var),
    ("intro-star-witnesses", check_intro_star_witnesses),
    ("hat-substitution", check_hat_substitution),
    ("intro-initially-regular", check_intro_initially_regular),
    ("tree13-initially-regular-square", check_tree13_initially_regular_square),
    ("colon-power4-counterexample", check_colon_power4_counterexample),
    ("graph36-pair-verdicts", check_graph36_pair_verdicts),
    ("nonnecessity-example", check_nonnecessity_example),
    ("path-families", check_path_families),
    ("pentagon-trinomial-clause-e", check_pentagon_trinomial_clause_e),
    ("pentagon-square-closed-form", check_pentagon_square_closed_form),
    ("tree13-triple-family", check_tree13_triple_family),
    ("tree13-combined-certificate", check_tree13_combined_certificate),
    ("ex38-binomial-family", check_ex38_binomial_family),
    ("find-sequences-bounds", check_find_sequences_bounds),
    ("intro-hypergraph", check_intro_hypergraph),
    ("star-forms", check_star_forms),
    ("pentagon-path-odd-cycle", check_pentagon_path_odd_cycle),
    ("power-regularity-bounds", check_power_regularity_bounds),
    ("star-graph-neighborhoods", check_star_graph_neighborhoods),
    ("intro-square-saturation", check_intro_square_saturation),
    ("ex38-leaves-bound", check_ex38_leaves_bound),
    ("pentagon-path-fifth-power-socle", check_pentagon_path_fifth_power_socle),
    ("intro-depth", check_intro_depth),
    ("depth-table", check_depth_table),
    ("square-regular-sequences", check_square_regular_sequences),
    ("polarization-names", check_polarization_names),
    ("problem-file-roundtrip", check_problem_file_roundtrip),
    ("cli-depth-square", check_cli_depth_square),
    ("cli-graph-bound", check_cli_graph_bound),
]


def check_names() -> list[str]:
    return [name for name, _ in CHECKS]


def run_all(names: list[str] | None = None) -> list[CheckResult]:
    """Run the selected checks (all by default); never raises."""
    selected = CHECKS if names is None else [(n, f) for n, f in CHECKS if n in set(names)]
    results = []
    for name, fn in selected:
        started = time.perf_counter()
        try:
            detail = fn()
            passed = True
        except Exception as e:  # noqa: BLE001 - registry reports, never raises
            detail = f"{type(e).__name__}: {e}"
            passed = False
        elapsed_ms = int((time.perf_counter() - started) * 1000)
        results.append(CheckResult(name=name, passed=passed, detail=detail, elapsed_ms=elapsed_ms))
    return results
