import json
from pathlib import Path

import pytest

from braidorder.cli import main, parse_endomorphism
from braidorder.errors import ParseError
from braidorder.words import parse_word

GOLDEN = Path(__file__).parent / "golden"
MAGIC = "s1^2 s2^-1"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_artin_magic(capsys):
    code, out, _ = run(capsys, "artin", "3", MAGIC)
    assert code == 0
    assert out.splitlines() == [
        "x1 -> x1 x3 x1 x3^-1 x1^-1",
        "x2 -> x1 x3 x1^-1",
        "x3 -> x3^-1 x2 x3",
    ]


def test_artin_identity_and_b2(capsys):
    assert run(capsys, "artin", "3", "")[1].splitlines() == ["x1 -> x1", "x2 -> x2", "x3 -> x3"]
    assert run(capsys, "artin", "2", "s1")[1].splitlines() == ["x1 -> x1 x2 x1^-1", "x2 -> x1"]


@pytest.mark.parametrize(
    "braid, code, verdict",
    [(MAGIC, 0, "BI_ORDER_PRESERVING"), ("s1", 3, "INCONCLUSIVE"), ("s1 s2", 4, "NO_FIXED_POINT")],
)
def test_certify_exit_codes(capsys, braid, code, verdict):
    got, out, _ = run(capsys, "--json", "certify", "3", braid)
    assert got == code
    assert json.loads(out)["verdict"] == verdict


def test_certify_text_table(capsys):
    _, out, _ = run(capsys, "certify", "3", MAGIC)
    assert "orbit {2,3}" in out and "h_O = 1" in out and "BI_ORDER_PRESERVING" in out


def test_certify_fixed_i0(capsys):
    code, out, _ = run(capsys, "certify", "3", MAGIC, "--i0", "2")
    assert code == 64


@pytest.mark.parametrize(
    "argv, golden",
    [
        (["--json", "certify", "3", MAGIC], "certify_magic.json"),
        (["--json", "complete", "5", "s1 s3", "axis"], "complete_axis_s1s3.json"),
        (["verify", "3", MAGIC, "--samples", "50", "--json"], "verify_magic_50.json"),
    ],
)
def test_json_matches_golden(capsys, argv, golden):
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second == (GOLDEN / golden).read_text()


def test_demo_matches_certify(capsys):
    code, text, _ = run(capsys, "demo")
    assert code == 0
    assert "orbit {2,3}" in text and "h_O" in text and "= 1" in text
    demo = run(capsys, "--json", "demo")[1]
    assert demo == run(capsys, "--json", "certify", "3", MAGIC)[1]


def test_complete_strategies(capsys):
    code, out, _ = run(capsys, "--json", "complete", "3", "s1 s2", "b3")
    data = json.loads(out)
    assert code == 0 and data["certificate"]["verdict"] == "BI_ORDER_PRESERVING"
    assert len(data["alpha"].split()) <= 1
    code, out, _ = run(capsys, "--json", "complete", "4", "s3", "lower")
    assert code == 0 and json.loads(out)["certificate"]["verdict"] == "BI_ORDER_PRESERVING"
    assert run(capsys, "complete", "3", "s2", "axis")[0] == 64
    assert run(capsys, "complete", "4", "s1", "b3")[0] == 64


def test_compare(capsys):
    code, out, err = run(capsys, "compare", "3", MAGIC, "x2", "x3")
    assert code == 0 and "LESS" in out and "y3_0" in out and err == ""
    assert "EQUAL" in run(capsys, "compare", "3", MAGIC, "x2 x3", "x2 x3")[1]
    out = run(capsys, "compare", "3", MAGIC, "1", "x1")[1]
    assert "LESS" in out and "h(a^-1 b) = 1" in out
    _, out, err = run(capsys, "compare", "3", "s1", "x1", "x2")
    assert "warning" in err and "INCONCLUSIVE" in err


def test_compare_json_and_dump(capsys):
    code, out, err = run(capsys, "--json", "compare", "3", MAGIC, "x2", "x3", "--dump-magnus")
    data = json.loads(out)
    assert data["relation"] == "LESS"
    assert "X" in err


def test_compare_undecided_at_cap(capsys):
    # a commutator has depth 2 in K, so a cap of 1 cannot decide it
    code, out, err = run(capsys, "--cap", "1", "compare", "3", MAGIC, "1", "x2 x3 x2^-1 x3^-1")
    assert code == 5
    assert "UNDECIDED_AT_CAP" in out + err and "cap 1" in out + err
    assert run(capsys, "--cap", "2", "compare", "3", MAGIC, "1", "x2 x3 x2^-1 x3^-1")[0] == 0


def test_verify_exit_and_flags_after_subcommand(capsys):
    code, out, _ = run(capsys, "verify", "3", MAGIC, "--samples", "10", "--seed", "3", "--cap", "8")
    assert code == 0 and "seed 3" in out
    assert run(capsys, "verify", "3", "s1", "--samples", "5")[0] == 3


@pytest.mark.parametrize("seed", ["1", "77"])
def test_verify_pure_braid_and_repeatability(capsys, seed):
    argv = ["--json", "--seed", seed, "verify", "4", "s2 s1^2 s2^-1 s3^2", "--samples", "60"]
    code, first, _ = run(capsys, *argv)
    report = json.loads(first)["report"]
    assert code == 0 and sum(report["violations"].values()) == 0
    assert run(capsys, *argv)[1] == first


def test_endomorphism_file(capsys, tmp_path):
    endo = tmp_path / "phi.txt"
    endo.write_text("# left-order example\nx1 = x3 x2 x3^-1\nx2 = x3 x1 x3^-1\nx3 = x3\n")
    assert run(capsys, "certify", "3", "--endo", str(endo))[0] == 64
    code, out, _ = run(capsys, "--trust-automorphism", "--json", "certify", "3", "--endo", str(endo))
    assert code == 2
    assert json.loads(out)["verdict"] == "LEFT_ORDER_PRESERVING"
    endo.write_text("x1 = x2^-1\nx2 = x1\nx3 = x3\n")
    code, out, err = run(capsys, "--trust-automorphism", "certify", "3", "--endo", str(endo))
    assert code == 65 and "NOT_CONJUGACY_FORM" in out + err and "x1" in out + err


def test_parse_endomorphism_positions():
    images = parse_endomorphism("x1 = x2\n\nx2 = x1 # swap\n", 2)
    assert images == {1: parse_word("x2"), 2: parse_word("x1")}
    with pytest.raises(ParseError) as err:
        parse_endomorphism("x1 = x2\nx2 = x1 y3\n", 2)
    assert (err.value.line, err.value.column) == (2, 9)
    with pytest.raises(ParseError) as err:
        parse_endomorphism("x1 = x2\n  bad\n", 2)
    assert (err.value.line, err.value.column) == (2, 3)
    with pytest.raises(ParseError):
        parse_endomorphism("x1 = x2\n", 2)
    with pytest.raises(ParseError):
        parse_endomorphism("x1 = x3\nx2 = x1\n", 2)


def test_parse_error_reports_position(capsys):
    code, out, err = run(capsys, "artin", "3", "s1 s9")
    assert code == 65 and "column 4" in out + err
    code, _, err = run(capsys, "compare", "3", MAGIC, "x1 x", "x2")
    assert code == 65 and "column" in err


def test_usage_errors(capsys):
    assert run(capsys, "bogus")[0] == 64
    assert run(capsys, "artin", "three", "s1")[0] == 64
    assert run(capsys, "certify", "3")[0] == 64
    assert run(capsys)[0] == 64
