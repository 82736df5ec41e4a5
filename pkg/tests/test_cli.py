"""Expression syntax and the command line front end."""
import json
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from framedkv.alphabet import Alphabet
from framedkv.cli import run
from framedkv.errors import ExprSyntaxError
from framedkv.expr import Gen, Num, Op, lie_to_text, parse_expr, parse_element, parse_lie, to_text
from framedkv.lie import LieElement, bch
from framedkv.scalars import Poly

A = Alphabet.from_names(["x[1,1]", "y[1,1]", "t[1,2]"])


# --- expressions ---------------------------------------------------------------------------

leaves = st.one_of(
    st.sampled_from(["x[1,1]", "y[1,1]", "t[1,2]"]).map(Gen),
    st.fractions(min_value=-4, max_value=4, max_denominator=3).map(Num),
)


def extend(children):
    binary = st.tuples(st.sampled_from(["brk", "+", "mul"]), children, children).map(
        lambda t: Op(t[0], (t[1], t[2])))
    scaled = st.tuples(st.fractions(min_value=-3, max_value=3, max_denominator=2), children).map(
        lambda t: Op("smul", (Num(t[0]), t[1])))
    return st.one_of(binary, scaled)


trees = st.recursive(leaves, extend, max_leaves=6)


@given(trees)
def test_print_parse_round_trip(node):
    assert parse_expr(to_text(node)) == node


def test_parse_and_evaluate():
    x = LieElement.generator(A, 4, "x[1,1]")
    y = LieElement.generator(A, 4, "y[1,1]")
    got = parse_lie("(+ (brk x[1,1] y[1,1]) (smul 1/2 x[1,1]))", A, 4)
    assert got == x.bracket(y) + x.scale(Fraction(1, 2))
    assert parse_lie("(bch x[1,1] y[1,1])", A, 4) == bch([x, y])
    assert parse_element("(log (exp x[1,1]))", A, 4) == x.to_tensor()
    assert parse_expr("?s").value == Poly.var("s")


def test_comments_and_whitespace():
    assert parse_expr("(+ x[1,1] ; a comment\n   y[1,1])") == Op("+", (Gen("x[1,1]"), Gen("y[1,1]")))


@pytest.mark.parametrize("text,line,col", [
    ("(+ x[1,1]\n   (foo y[1,1]))", 2, 5),
    ("(brk x[1,1])", 1, 1),
    ("(+ x[1,1]", 1, 1),
    ("x[1,1] y[1,1]", 1, 8),
    ("(smul x[1,1] y[1,1])", 1, 7),
    ("@", 1, 1),
])
def test_syntax_errors_carry_positions(text, line, col):
    with pytest.raises(ExprSyntaxError) as err:
        parse_expr(text)
    assert (err.value.line, err.value.column) == (line, col)


def test_lie_to_text_round_trip():
    e = parse_lie("(+ (brk x[1,1] (brk x[1,1] y[1,1])) (smul -2 t[1,2]))", A, 4)
    assert parse_lie(lie_to_text(e), A, 4) == e


# --- verbs -------------------------------------------------------------------------------------

def call(*argv):
    return run(list(argv) + ["--no-timing"])


def test_dims_disk_and_genus():
    doc, status = call("dims", "-n", "3", "-D", "4", "--unframed")
    assert status == 0 and doc["result"]["dims"] == [0, 3, 0, 1]
    doc, status = call("dims", "-g", "1", "-n", "2", "-D", "4", "--tower")
    assert status == 0 and doc["result"]["dims"] == doc["result"]["dims_tower"]


def test_dims_from_presentation_file(tmp_path):
    spec = {"generators": [{"name": "x[1]", "weight": 1}, {"name": "y[1]", "weight": 1}],
            "relators": ["(brk x[1] (brk x[1] y[1]))", "(brk y[1] (brk x[1] y[1]))"]}
    path = tmp_path / "heis.json"
    path.write_text(json.dumps(spec))
    doc, status = call("dims", "--input", str(path), "-D", "4")
    assert status == 0, doc
    assert doc["result"]["dims"] == [2, 1, 0, 0]


def test_bch_and_nf():
    doc, status = call("bch", "x[1,1]", "y[1,1]", "-D", "3")
    assert status == 0
    assert sorted(c for _, c in doc["result"]["bch"]) == ["1", "1", "1/12", "1/12", "1/2"]
    doc, status = call("bch", "x[1,1]", "(smul -1 x[1,1])", "-D", "4")
    assert status == 0 and doc["result"]["bch"] == []
    doc, status = call("nf", "-g", "1", "-n", "2", "-D", "4", "(brk x[1,1] y[1,1])")
    assert status == 0 and doc["result"]["normal_form"]


def test_insert_and_verification_verbs():
    doc, status = call("insert", "-g", "1", "--labels", "1,2", "--k", "1", "--J", "a,b", "t[1,2]")
    assert status == 0 and doc["result"]["target_labels"] == ["a", "b", "2"]
    assert len(doc["result"]["image"]) == 2
    doc, status = call("verify-action", "-g", "1", "-n", "1")
    assert status == 0 and doc["ok"]
    doc, status = call("verify-action", "-g", "1", "-n", "1", "--mutate")
    assert status == 1 and not doc["ok"] and doc["failures"]
    doc, status = call("verify-split", "-g", "0", "-n", "1", "-D", "4")
    assert status == 0


def test_goldman_turaev_fox():
    doc, status = call("goldman", "-g", "1", "-n", "1", "-D", "4", "x[*,1]", "y[*,1]")
    assert status == 0 and doc["result"]["exact_up_to_weight"] == 2
    doc, status = call("turaev", "-g", "1", "-D", "5", "(brk x[*,1] y[*,1])")
    assert status == 0 and doc["result"]["cobracket"]
    doc, status = call("fox-eval", "-g", "1", "x[*,1]", "y[*,1]")
    assert status == 0 and doc["result"]["value"] == [["1", "1"]]


def test_kv_check(tmp_path):
    path = tmp_path / "ad.json"
    # the logarithm of Ad_{exp(omega)} on (g, n) = (1, 1)
    omega = "(+ (brk x[1] y[1]) z[1])"
    path.write_text(json.dumps({"g": 1, "n": 1, "D": 4,
                                "u": {"x1": f"(brk x[1] {omega})", "y1": f"(brk y[1] {omega})"},
                                "conjugators": [omega]}))
    doc, status = call("kv-check", "--input", str(path), "--check", "KRV", "--framing", "c=2")
    assert status == 0, doc
    assert doc["result"]["checks"]["KRV"]["ok"]
    doc, status = call("kv-check", "--input", str(path))
    assert status == 0 and "KRV" in doc["result"]["members"]


def test_framing_and_series():
    doc, status = call("framing-eqs", "--genus", "2", "--handle", "2")
    assert status == 0 and doc["result"]["matches_reference"]
    doc, status = call("series", "--name", "s", "-D", "4")
    assert doc["result"]["coefficients"] == ["-1/2", "-1/12", "0", "1/720", "0"]


def test_errors_and_exit_codes(monkeypatch):
    doc, status = call("bch", "(foo x[1,1])", "-D", "3")
    assert status == 2 and doc["error"]["kind"] == "syntax"
    doc, status = call("frobnicate")
    assert status == 2 and doc["error"]["kind"] == "usage"
    monkeypatch.setenv("FRAMEDKV_MAX_DEGREE", "3")
    doc, status = call("series", "-D", "5")
    assert status == 2 and doc["error"]["kind"] == "degree"
    doc, status = call("framing-eqs", "--genus", "0")
    assert status == 2 and not doc["ok"]


def test_global_flags_in_either_position():
    a, _ = run(["--no-timing", "--seed", "3", "series", "-D", "3"])
    b, _ = run(["series", "-D", "3", "--seed", "3", "--no-timing"])
    assert a == b and a["timing_ms"] == 0


def test_module_entry_point_is_deterministic():
    cmd = [sys.executable, "-m", "framedkv", "dims", "-g", "1", "-n", "1", "-D", "4", "--no-timing"]
    first = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    assert first == second
    assert json.loads(first)["ok"] is True
