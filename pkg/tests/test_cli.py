"""Problem-file parsing and end-to-end command behavior."""

from __future__ import annotations

import contextlib
import io
import json
import subprocess
import sys

import pytest

from depthcert import cli, initreg, oracle
from depthcert.verify import CheckResult

PATH3 = """\
ring: a b c d
ideal: a*b b*c c*d
form ab: a + b
form ac: a + c
form b: b
form f1: b + a + c
"""

PATH6 = """\
ring: a b c d e f g
ideal: a*b b*c c*d d*e e*f f*g
"""

PENTAGON_PATH = """\
# pentagon plus a path
ring: a b c d e f g h
ideal: a*b b*c c*d d*e a*e a*f f*g g*h
form s: h + g
"""

TRIANGLE = """\
ring: x y z
ideal: x*y x*z y*z
"""

EX38 = """\
ring: x1 x2 x3 x4 x5 x6 x7 x8
ideal: x1*x2 x2*x3 x3*x4 x4*x5 x4*x6 x6*x7 x7*x8
"""

TREE13 = """\
ring: x1 x2 x3 x4 x5 x6 x7 x8 x9 x10 x11 x12 x13
ideal: x1*x2 x2*x3 x3*x4 x4*x5 x5*x6 x4*x7 x7*x8 x8*x9 x9*x10 x10*x11 x11*x12 x12*x13
"""


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = cli.main(argv)
    return code, out.getvalue(), err.getvalue()


def run_json(argv):
    # --json output is a single JSON line
    code, out, _ = run(argv + ["--json"])
    lines = [line for line in out.splitlines() if line]
    assert len(lines) == 1, out
    return code, json.loads(lines[0])


def write(tmp_path, text, name="problem.txt"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


@pytest.fixture()
def path3_file(tmp_path):
    return write(tmp_path, PATH3)


# ---------------------------------------------------------------------------
# parsing


def test_parse_worked_example():
    pf = cli.parse(PENTAGON_PATH)
    assert list(pf.ring.names) == list("abcdefgh")
    assert pf.order is None
    assert len(pf.ideal.gens) == 8
    assert list(pf.forms) == ["s"]
    assert str(pf.forms["s"]) == "h + g"


def test_parse_skips_comments_and_blank_lines():
    text = "# header comment\n\nring: a b   # trailing\n\n  ideal: a*b\n#done\n"
    pf = cli.parse(text)
    assert list(pf.ring.names) == ["a", "b"]
    assert [str(g) for g in pf.ideal.gens] == ["a*b"]


def test_parse_order_completion():
    # omitted names are appended in ring order
    pf = cli.parse("ring: a b c\norder: lex b\nideal: a*b\n")
    assert pf.order.priority == (1, 0, 2)


def test_parse_errors_carry_line_numbers():
    cases = [
        ("ideal: a*b\n", 1, "ring must be declared first"),
        ("junk\n", 1, "expected '<header>:'"),
        ("ring: a a b\n", 1, "duplicate variable names"),
        ("ring: a b\nring: a\n", 2, "duplicate ring"),
        ("ring: a b\norder: lex a\norder: lex b\n", 3, "duplicate order"),
        ("ring: a b\norder: grlex a\n", 2, "only 'order: lex <names>'"),
        ("ring: a b\norder: lex q\n", 2, "undeclared variable 'q'"),
        ("ring: a b\nideal: a*q\n", 2, "bad monomial 'a*q'"),
        ("ring: a b\nideal: a\nideal: b\n", 3, "duplicate ideal"),
        ("ring: a b\nform: a + b\n", 2, "form header must be 'form <id>:'"),
        ("ring: a b\nform f q: a\n", 2, "form header must be 'form <id>:'"),
        ("ring: a b\nideal: a*b\nform f: a\nform f: b\n", 4, "duplicate form 'f'"),
        ("ring: a b\nform f: a + \n", 2, "malformed form"),
        ("ring: a b\nform f: a + q\n", 2, "undeclared variable 'q'"),
        ("ring: a b\nideal: a*b\nform f: a + a\n", 3, "repeated variable"),
        ("ring: a b\nwhat: x\n", 2, "unknown header 'what'"),
        ("", 1, "missing ring"),
        ("ring: a b\n", 1, "missing ideal"),
    ]
    for text, line, fragment in cases:
        with pytest.raises(cli.ProblemFileError) as exc:
            cli.parse(text)
        assert exc.value.line == line, text
        assert fragment in str(exc.value), text


def test_print_problem_roundtrip():
    texts = [
        PATH3,
        PENTAGON_PATH,
        TREE13,
        "ring: a b c\norder: lex b\nideal: a*b\n",
    ]
    for text in texts:
        pf = cli.parse(text)
        canonical = cli.print_problem(pf)
        assert canonical.endswith("\n")
        assert cli.parse(canonical) == pf
        assert cli.print_problem(cli.parse(canonical)) == canonical


# ---------------------------------------------------------------------------
# argument and file errors


def test_argparse_exit_codes(path3_file):
    assert run([])[0] == 2
    assert run(["--help"])[0] == 0
    assert run(["depth"])[0] == 2
    assert run(["graph-bound", path3_file])[0] == 2  # --vertex is required


def test_file_errors(tmp_path):
    code, _, err = run(["depth", str(tmp_path / "nope.txt")])
    assert code == 2
    assert "cannot read" in err
    bad = write(tmp_path, "ring: a b\nideal: a*q\n")
    code, _, err = run(["depth", bad])
    assert code == 2
    assert "error: line 2" in err


def test_usage_errors(path3_file):
    code, _, err = run(["depth", path3_file, "--power", "0"])
    assert code == 2 and "positive integer" in err
    code, _, err = run(["star-check", path3_file, "--form", "nope"])
    assert code == 2 and "no form 'nope'" in err
    code, _, err = run(["graph-bound", path3_file, "--vertex", "q"])
    assert code == 2 and "no variable 'q'" in err


# ---------------------------------------------------------------------------
# command payloads against the library


def test_depth_human_output(path3_file):
    code, out, _ = run(["depth", path3_file])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "command: depth"
    assert "theorem: depth via multigraded resolution homology" in lines
    assert "depth: 2" in lines
    assert "route: resolution" in lines
    assert "verdict: pass" in lines
    assert any(line.startswith("elapsed_ms:") for line in lines)


def test_depth_json_record(path3_file):
    code, rec = run_json(["depth", path3_file])
    assert code == 0
    assert rec["command"] == "depth"
    assert rec["verdict"] is True
    assert rec["depth"] == oracle.depth(cli.parse(PATH3).ideal) == 2
    assert rec["route"] == "resolution"
    assert isinstance(rec["elapsed_ms"], int)
    assert "theorem" in rec


def test_depth_square_certificate_route(tmp_path):
    # 12 edges give 78 square generators, past the resolution cutoff
    code, rec = run_json(["depth", write(tmp_path, TREE13), "--power", "2"])
    assert code == 0
    assert rec["route"] == "two-sided certificate"
    assert rec["depth"] == 4
    assert len(rec["sequence"]) == 4
    assert rec["betti_witness"].startswith("x1*")


def test_power_and_ass_match_library(path3_file):
    square = cli.parse(PATH3).ideal.power(2)
    code, rec = run_json(["power", path3_file, "--power", "2"])
    assert code == 0
    assert rec["generators"] == [str(g) for g in square.sorted_gens()]
    assert rec["count"] == 6

    code, rec = run_json(["ass", path3_file, "--power", "2"])
    assert code == 0
    expected = [
        [square.ring.names[i] for i in sorted(p.support)]
        for p in oracle.associated_primes(square)
    ]
    assert rec["primes"] == expected
    assert rec["count"] == len(expected) == 3


def test_gb_payload(path3_file):
    code, rec = run_json(["gb", path3_file, "--form", "ab"])
    assert code == 0
    assert rec["order"] == "a > b > c > d"
    assert rec["basis"] == ["c*d", "b*c", "b^2", "a + b"]
    assert rec["initial_ideal"] == ["a", "c*d", "b*c", "b^2"]


def test_initial_chain_payload(path3_file):
    code, rec = run_json(["initial", path3_file, "--form", "b"])
    assert code == 0
    assert rec["order"] == "b > a > c > d"
    assert rec["chain"] == [["c*d", "b*c", "a*b"], ["b", "c*d"]]
    assert rec["final"] == rec["chain"][-1]


def test_star_check_verdicts(path3_file):
    code, out, _ = run(["star-check", path3_file, "--form", "ab"])
    assert code == 0
    assert "verdict: pass" in out

    code, rec = run_json(["star-check", path3_file, "--form", "ac"])
    assert code == 1
    check = rec["checks"][0]
    assert check["passed"] is False
    assert check["cover_violations"] == ["a*b"]
    assert check["power_violations"] == []

    # one failing form sinks the whole report
    code, rec = run_json(["star-check", path3_file, "--form", "ab", "--form", "ac"])
    assert code == 1
    assert [c["passed"] for c in rec["checks"]] == [True, False]


def test_regular_check_verdicts(path3_file):
    code, rec = run_json(["regular-check", path3_file, "--form", "ab"])
    assert code == 0
    assert rec["initially_regular"] is True
    assert rec["steps"][0]["regular"] is True
    assert rec["steps"][0]["tested_against"] == ["c*d", "b*c", "a*b"]

    code, out, _ = run(["regular-check", path3_file, "--form", "b"])
    assert code == 1
    assert "witness prime: (b, c)" in out
    assert "not initially regular" in out
    code, rec = run_json(["regular-check", path3_file, "--form", "b"])
    assert rec["steps"][0]["witness"] == "(b, c)"


def test_colon_payload_and_guards(path3_file):
    ideal = cli.parse(PATH3).ideal
    code, rec = run_json(["colon", path3_file, "--form", "ab", "--power", "2"])
    assert code == 0
    expected = initreg.colon_linear_binomial(ideal, 2, "a", "b")
    assert rec["generators"] == [str(g) for g in expected.sorted_gens()]
    assert rec["power"] == 2

    code, _, err = run(["colon", path3_file])
    assert code == 2 and "exactly one binomial form" in err
    code, _, err = run(["colon", path3_file, "--form", "f1"])
    assert code == 2 and "not a binomial" in err
    code, _, err = run(["colon", path3_file, "--form", "ab", "--power", "4"])
    assert code == 2 and "1 <= t <= 3" in err


def test_find_initreg_verdicts(tmp_path):
    code, rec = run_json(["find-initreg", write(tmp_path, PATH6)])
    assert code == 0
    assert rec["depth_lower_bound"] == 2
    assert rec["forms"] == ["a + b", "g + f"]
    assert rec["kinds"] == ["binomial", "binomial"]
    assert rec["certificate_verdict"] == "regular"

    # a triangle admits nothing; the verdict is an honest fail
    code, rec = run_json(["find-initreg", write(tmp_path, TRIANGLE, "tri.txt")])
    assert code == 1
    assert rec["depth_lower_bound"] == 0
    assert rec["forms"] == [] and rec["order"] is None


def test_tt_ass_square_payload_and_guard(path3_file, tmp_path):
    code, rec = run_json(["tt-ass-square", path3_file])
    assert code == 0
    assert rec["primes"] == [["a", "c"], ["b", "c"], ["b", "d"]]
    assert rec["count"] == 3
    # same support sets as the resolution-based route on the square
    _, direct = run_json(["ass", path3_file, "--power", "2"])
    assert sorted(map(tuple, rec["primes"])) == sorted(map(tuple, direct["primes"]))

    code, _, err = run(["tt-ass-square", write(tmp_path, TREE13)])
    assert code == 3
    assert "resource limit:" in err and "12 variables" in err


def test_graph_bound_payloads(path3_file, tmp_path):
    code, rec = run_json(["graph-bound", path3_file, "--vertex", "a"])
    assert code == 0
    assert rec["bound"] == "inf"  # bipartite
    assert rec["form"] == "a + b"

    code, rec = run_json(["graph-bound", write(tmp_path, PENTAGON_PATH), "--vertex", "h"])
    assert code == 0
    assert rec["bound"] == 4
    assert rec["form"] == "h + g"


def test_leaves_bound_payloads(path3_file, tmp_path):
    code, rec = run_json(["leaves-bound", path3_file])
    assert code == 0
    assert (rec["bound"], rec["leaves"], rec["forms"]) == (1, ["a"], ["a + b"])

    code, rec = run_json(["leaves-bound", write(tmp_path, EX38)])
    assert code == 0
    assert rec["bound"] == 3
    assert rec["leaves"] == ["x1", "x5", "x8"]
    assert rec["forms"] == ["x1 + x2", "x5 + x4", "x8 + x7"]


def test_verify_lemmas_wiring(monkeypatch):
    canned = [
        CheckResult(name="alpha", passed=True, detail="ok", elapsed_ms=1),
        CheckResult(name="beta", passed=False, detail="boom", elapsed_ms=2),
    ]
    monkeypatch.setattr("depthcert.verify.run_all", lambda names=None: canned)
    code, out, _ = run(["verify-lemmas"])
    assert code == 1
    assert "FAIL  beta" in out
    assert "1/2 checks passed" in out

    monkeypatch.setattr("depthcert.verify.run_all", lambda names=None: canned[:1])
    code, rec = run_json(["verify-lemmas"])
    assert code == 0
    assert rec["verdict"] is True
    assert rec["checks"] == [
        {"name": "alpha", "passed": True, "detail": "ok", "elapsed_ms": 1}
    ]


def test_module_entrypoint(path3_file):
    proc = subprocess.run(
        [sys.executable, "-m", "depthcert.cli", "depth", path3_file, "--json"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["depth"] == 2
