import io
import json
import re
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given

from bifset import cli
from bifset.cli import algebraic_json, main, parse_input, render_svg
from bifset.errors import DegreeLimitExceeded, InputError, MatchingUnresolved, PolySyntaxError
from bifset.poly import BiPoly, format_poly
from bifset.realroots import isolate_real_roots
from corpus import BROUGHTON, EX82, analysed
from strategies import bipolys


def run(argv, stdin=None, capsys=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


# -- parser ---------------------------------------------------------------------------------

@pytest.mark.parametrize("text, want", [
    ("x + x^2*y", {(1, 0): 1, (2, 1): 1}),
    ("2x^2y^3 - 9xy^2 + 12y", {(2, 3): 2, (1, 2): -9, (0, 1): 12}),
    ("3/4", {(0, 0): Fraction(3, 4)}),
    ("-x", {(1, 0): -1}),
    ("(x+1)^2", {(2, 0): 1, (1, 0): 2, (0, 0): 1}),
    ("2(x - y)y", {(1, 1): 2, (0, 2): -2}),
    ("x y", {(1, 1): 1}),
    ("1 2 x", {(1, 0): 12}),
    ("x - x", {}),
    ("(1/2)^3 x", {(1, 0): Fraction(1, 8)}),
])
def test_parse_examples(text, want):
    assert parse_input(text) == BiPoly(want)


@pytest.mark.parametrize("text, offset", [
    ("x +* y", 3),
    ("x^", 2),
    ("(x + y", 6),
    ("", 0),
    ("x ^ -2", 4),
    ("3/0", 2),
    ("x)", 1),
    ("é + x", 0),
    ("x + é", 4),
    ("2.5x", 1),
    ("x + z", 4),
])
def test_parse_errors_carry_byte_offsets(text, offset):
    with pytest.raises(PolySyntaxError) as ex:
        parse_input(text)
    assert ex.value.offset == offset


def test_degree_cap():
    assert parse_input("x^64").degree == 64
    with pytest.raises(DegreeLimitExceeded):
        parse_input("x^65")
    with pytest.raises(DegreeLimitExceeded):
        parse_input("x^40 * y^40")
    with pytest.raises(DegreeLimitExceeded):
        parse_input("(x^9)^8")
    assert parse_input("x^3", degree_cap=3).degree == 3


def test_constant_exponent_cap():
    assert parse_input("2^10") == BiPoly.const(1024)
    with pytest.raises(InputError):
        parse_input("2^100000")


@given(bipolys())
def test_format_then_parse_is_identity(p):
    assert parse_input(format_poly(p)) == p


@given(bipolys(), bipolys())
def test_parse_respects_arithmetic(p, q):
    s, t = format_poly(p), format_poly(q)
    assert parse_input(f"({s}) * ({t}) - ({t})") == p * q - q


# -- algebraic numbers in JSON -------------------------------------------------------------------

def test_algebraic_json_of_sqrt():
    v = isolate_real_roots([3, 0, -2])[1]
    d = algebraic_json(v, 15)
    assert d["minpoly"] == [3, 0, -2]
    assert "rational" not in d
    lo, hi = (Fraction(s) for s in d["isolator"])
    assert lo < Fraction(d["decimal"]) < hi or lo <= Fraction(d["decimal"]) <= hi
    assert abs(float(d["decimal"]) - (2 / 3) ** 0.5) <= float(d["error"]) + 1e-300
    assert float(d["error"]) < 1e-13


def test_algebraic_json_of_rational():
    d = algebraic_json(isolate_real_roots([4, -3])[0], 8)
    assert d["rational"] == "3/4" and d["decimal"] == "0.75"


# -- command line: analysis ------------------------------------------------------------------------

def test_analyze_text_broughton(capsys):
    code, out, _ = run(["analyze", BROUGHTON], capsys=capsys)
    assert code == 0
    assert "critical values: none" in out
    assert "atypical regular values: 0 (Splitting)" in out
    assert "bifurcation set: {0}" in out


def test_analyze_json_line(capsys):
    code, out, _ = run(["analyze", "x", "--format", "json"], capsys=capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["schema_version"] == "1.0"
    assert len(doc["arcs"]) == 2 and doc["bifurcation_set"] == []
    assert [a["sample"]["x"] for a in doc["arcs"]] == ["1", "-1"]
    assert doc["infinity_points"] == [{"projective": "[1:0:0]", "slope": None}]


def test_analyze_reads_stdin(capsys, monkeypatch):
    code, out, _ = run(["analyze", "-", "--format", "json"], stdin="x + x^2*y\n",
                       capsys=capsys, monkeypatch=monkeypatch)
    assert code == 0
    assert json.loads(out)["input"]["parsed"] == "x^2*y + x"


def test_analyze_nonprimitive(capsys):
    code, out, _ = run(["analyze", "(x^2 + y^2)^2", "--format", "json"], capsys=capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["primitivity"]["primitive"] is False
    assert doc["primitivity"]["center"] == ["0", "0"]
    assert doc["primitivity"]["translation"] == ["1", "0"]
    assert [v["rational"] for v in doc["bifurcation_set"]] == ["0"]


def test_analyze_example_two_json(capsys):
    code, out, _ = run(["analyze", EX82, "--radius-override", "3", "--format", "json"], capsys=capsys)
    assert code == 0
    doc = json.loads(out)
    assert len(doc["arcs"]) == 10
    assert doc["radius"] == {"R": "3", "certified_bound": doc["radius"]["certified_bound"], "overridden": True}
    assert doc["bifurcation_set"] == []
    assert sorted(c["parity"] for c in doc["clusters"] if c["limit"]["kind"] == "finite") == ["Even", "Even"]


def test_json_is_deterministic(capsys):
    outs = [run(["analyze", BROUGHTON, "--format", "json", "--digits", "20"], capsys=capsys)[1]
            for _ in range(2)]
    assert outs[0] == outs[1]


def test_digits_control_decimals(capsys):
    _, out, _ = run(["analyze", BROUGHTON, "--format", "json", "--digits", "30"], capsys=capsys)
    slope = json.loads(out)["infinity_points"][0]["slope"]
    assert slope["minpoly"] == [1, 0, -2]
    assert len(slope["decimal"].lstrip("-").replace(".", "")) == 30


def test_output_file(tmp_path, capsys):
    target = tmp_path / "r.json"
    code, out, _ = run(["analyze", "x", "--format", "json", "-o", str(target)], capsys=capsys)
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["schema_version"] == "1.0"


def test_oracle_check_in_report(capsys):
    code, out, _ = run(["analyze", BROUGHTON, "--oracle", "check", "--format", "json"], capsys=capsys)
    assert code == 0
    oracle = json.loads(out)["oracle"]
    assert oracle["disagreements"] == []
    assert len(oracle["arcs"]) == 6
    assert [s["atypical"] for s in oracle["sweeps"]].count(True) == 1


# -- command line: errors and exit codes ----------------------------------------------------------------

def test_syntax_error_exit_code_and_json_diagnostic(capsys):
    code, out, err = run(["analyze", "x +* y", "--format", "json"], capsys=capsys)
    assert code == 1 and out == ""
    d = json.loads(err)
    assert d["error"] == "PolySyntaxError" and d["offset"] == 3 and d["exit_code"] == 1


def test_syntax_error_text_diagnostic(capsys):
    code, _, err = run(["analyze", "x +* y"], capsys=capsys)
    assert code == 1
    assert err.startswith("bifset: PolySyntaxError:") and "(byte 3)" in err


@pytest.mark.parametrize("argv, kind", [
    (["analyze", "3/4"], "ConstantPolynomial"),
    (["analyze", "x - x"], "ZeroPolynomial"),
    (["analyze", "x^65"], "DegreeLimitExceeded"),
    (["analyze", "x^3 + x*y^2 - 4x + 5", "--radius-override", "2"], "OverrideTooSmall"),
    (["analyze", "x", "--digits", "0"], "InputError"),
])
def test_input_errors_exit_one(argv, kind, capsys):
    code, _, err = run(argv + ["--format", "json"], capsys=capsys)
    assert code == 1
    assert json.loads(err)["error"] == kind


def test_usage_errors_exit_one(capsys):
    with pytest.raises(SystemExit) as ex:
        main(["analyze", "x", "--oracle", "maybe"])
    assert ex.value.code == 1
    with pytest.raises(SystemExit) as ex:
        main(["analyze", "x", "--radius-override", "abc"])
    assert ex.value.code == 1
    with pytest.raises(SystemExit) as ex:
        main([])
    assert ex.value.code == 1


def test_analysis_failure_exits_two(capsys, monkeypatch):
    def boom(*a, **k):
        raise MatchingUnresolved("synthetic failure")
    monkeypatch.setattr("bifset.pipeline.analyze", boom)
    code, _, err = run(["analyze", "x", "--format", "json"], capsys=capsys)
    assert code == 2
    assert json.loads(err) == {"error": "MatchingUnresolved", "message": "synthetic failure", "exit_code": 2}


def test_parse_subcommand(capsys):
    code, out, _ = run(["parse", "(x+1)^2 - 1"], capsys=capsys)
    assert code == 0 and out.strip() == "x^2 + 2*x"


def test_console_script_runs():
    p = subprocess.run([sys.executable, "-m", "bifset", "analyze", "x"], capture_output=True, text=True)
    assert p.returncode == 0 and "bifurcation set: {}" in p.stdout


# -- pictures -------------------------------------------------------------------------------------------

def test_svg_for_example_two(tmp_path, capsys):
    target = tmp_path / "p.svg"
    code, _, _ = run(["analyze", EX82, "--radius-override", "3", "--plot", str(target)], capsys=capsys)
    assert code == 0
    svg = target.read_text()
    assert svg.startswith("<svg") and 'version="1.1"' in svg
    labels = re.findall(r'dominant-baseline="middle">(\d+)</text>', svg)
    assert sorted(map(int, labels)) == list(range(1, 11))
    assert svg.count('r="4"') == 10


def test_svg_band_colours_for_a_line():
    svg = render_svg(analysed("x"))
    paths = re.findall(r'<path d="[^"]*" fill="(#[0-9a-f]+)"', svg)
    # four wedges per band; the upper band (after arc 1) is where J > 0
    assert paths == [cli._BAND_COLOR[1]] * 4 + [cli._BAND_COLOR[-1]] * 4


def test_svg_is_deterministic_and_draws_levels(capsys, tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    for t in (a, b):
        code, _, _ = run(["analyze", BROUGHTON, "--plot", str(t), "--levels", "-0.1,0.1"], capsys=capsys)
        assert code == 0
    assert a.read_text() == b.read_text()
    svg = a.read_text()
    assert svg.count('fill="none" stroke="#333333"') == 1
    assert svg.count('fill="none" stroke="#7d3c98"') == 1
    assert "fibres at -0.1, 0.1" in svg
