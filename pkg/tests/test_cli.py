import csv
import io
import json
from fractions import Fraction

import pytest

from umbral import cli
from umbral.cli import (
    OutputDocument,
    latex_poly,
    latex_rational,
    main,
    parse_document,
    render_document,
)
from umbral.ring import Poly
from umbral.verify import VerificationReport


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), stdout=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run("--no-timestamp", *argv)
    return code, json.loads(text)


def entry(doc, v):
    return next(e["value"] for e in doc["payload"]["entries"] if e["v"] == v)


def test_numbers_examples():
    code, doc = run_json("numbers", "--family", "bernoulli", "--d", "2", "--max-deg", "2", "--t", "1")
    assert code == 0 and entry(doc, [1, 1]) == "1/6"
    assert doc["schema"] == "1" and "timestamp" not in doc
    _, doc = run_json("numbers", "--family", "euler", "--d", "1", "--max-deg", "1", "--t", "symbolic")
    assert entry(doc, [1]) == ["0"]
    _, doc = run_json("numbers", "--family", "bernoulli", "--d", "1", "--max-deg", "0")
    assert doc["payload"]["entries"] == [{"v": [0], "value": ["1"]}]


def test_numbers_symbolic_lowest_degree_first():
    _, doc = run_json("numbers", "--family", "bernoulli", "--max-deg", "2")
    assert entry(doc, [2]) == ["0", "-1/12", "1/4"]


def test_poly_examples():
    _, doc = run_json("poly", "--family", "bernoulli", "--v", "1", "--t", "1")
    assert doc["payload"]["polynomial"]["text"] == "x1 - 1/2"
    _, doc = run_json("poly", "--family", "euler", "--v", "1")
    assert doc["payload"]["polynomial"]["text"] == "x1 - 1/2*t"
    _, doc = run_json("poly", "--family", "bernoulli", "--v", "1,1")
    assert doc["payload"]["polynomial"]["text"] == "x1*x2 - 1/2*t*x1 - 1/2*t*x2 + 1/4*t^2 - 1/12*t"
    _, doc = run_json("poly", "--family", "euler", "--v", "0,0")
    assert doc["payload"]["polynomial"]["text"] == "1"


def test_eval_examples():
    _, doc = run_json("eval", "--family", "bernoulli", "--v", "1", "--x", "1/2", "--t", "1")
    assert doc["payload"]["value"] == "0"
    _, doc = run_json("eval", "--family", "euler", "--v", "1", "--x", "1", "--t", "2")
    assert doc["payload"]["value"] == "0"
    _, doc = run_json("eval", "--family", "euler", "--v", "0,0,0", "--x", "3,-1/2,7", "--t", "5/3")
    assert doc["payload"]["value"] == "1"


@pytest.mark.parametrize(
    "argv",
    [
        ["numbers", "--family", "gamma"],
        ["numbers", "--family", "bernoulli", "--d", "5"],
        ["numbers", "--family", "bernoulli", "--max-deg", "13"],
        ["eval", "--family", "bernoulli", "--v", "1,1", "--x", "1", "--t", "1"],
        ["poly", "--family", "euler", "--v", "1,-1"],
        ["eval", "--family", "euler", "--v", "1", "--x", "1", "--t", "1/0"],
        ["verify", "--suite", "montecarlo", "--samples", "10"],
        [],
    ],
)
def test_argument_errors_exit_one(argv, capsys):
    with pytest.raises(SystemExit) as info:
        code = main(argv, stdout=io.StringIO())
        raise SystemExit(code)
    assert info.value.code == 1
    assert capsys.readouterr().err


def test_max_order_flag():
    code, doc = run_json("--max-order", "14", "numbers", "--family", "euler", "--max-deg", "14", "--t", "1")
    assert code == 0 and entry(doc, [14]) == "-199360981"
    code, _ = run_json("poly", "--family", "euler", "--v", "13", "--max-order", "13")
    assert code == 0


def test_verify_exact_degree_zero():
    code, doc = run_json("verify", "--suite", "exact", "--max-deg", "0")
    assert code == 0 and doc["payload"]["all_passed"]


def test_verify_oracle_reports_timings():
    code, doc = run_json("verify", "--suite", "oracle", "--max-deg", "4", "--d", "2")
    assert code == 0
    code, text = run("verify", "--suite", "oracle", "--max-deg", "4", "--d", "2")
    details = json.loads(text)["payload"]["reports"][0]["details"]
    assert set(details) == {"partition_path_seconds", "gf_path_seconds"}


def test_verify_failure_exit_two(monkeypatch):
    def failing(*args, **kwargs):
        rep = VerificationReport("broken")
        rep.record(False, {"v": [1]}, Fraction(1), Fraction(0))
        return [rep]

    monkeypatch.setattr(cli, "run_exact_suite", failing)
    code, doc = run_json("verify", "--suite", "exact")
    assert code == 2 and not doc["payload"]["all_passed"]
    assert doc["payload"]["reports"][0]["counterexample"]["lhs"] == "1"


@pytest.mark.parametrize(
    "argv",
    [
        ["numbers", "--family", "bernoulli", "--d", "2", "--max-deg", "3"],
        ["numbers", "--family", "euler", "--d", "3", "--max-deg", "2", "--t=-3/2"],
        ["poly", "--family", "bernoulli", "--v", "2,1"],
        ["poly", "--family", "euler", "--v", "2,1", "--t", "1/3"],
        ["eval", "--family", "euler", "--v", "2,1", "--x", "1/2,-1", "--t", "2"],
        ["verify", "--suite", "exact", "--max-deg", "2"],
    ],
)
def test_round_trip(argv):
    _, text = run(*argv)
    doc = parse_document(text)
    assert render_document(doc, "json") == text
    assert parse_document(render_document(doc, "json")) == doc


def test_csv_and_json_carry_same_values():
    argv = ["numbers", "--family", "bernoulli", "--d", "2", "--max-deg", "3"]
    _, doc = run_json(*argv)
    _, text = run("--format", "csv", *argv)
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0][:2] == ["v", "t^0"]
    for row, e in zip(rows[1:], doc["payload"]["entries"]):
        assert row[0] == ",".join(map(str, e["v"]))
        coeffs = row[1:]
        while len(coeffs) > 1 and coeffs[-1] == "0":
            coeffs.pop()
        assert coeffs == e["value"]

    argv = ["numbers", "--family", "euler", "--d", "2", "--max-deg", "4", "--t", "1/2"]
    _, doc = run_json(*argv)
    _, text = run("--format", "csv", *argv)
    rows = list(csv.reader(io.StringIO(text)))
    assert [r[1] for r in rows[1:]] == [e["value"] for e in doc["payload"]["entries"]]


def test_csv_polynomial():
    _, text = run("--format", "csv", "poly", "--family", "bernoulli", "--v", "1", "--t", "1")
    assert list(csv.reader(io.StringIO(text))) == [["x", "coefficient"], ["0", "-1/2"], ["1", "1"]]


def test_latex_output():
    assert latex_rational(Fraction(-1, 2)) == r"-\frac{1}{2}"
    assert latex_rational(3) == "3"
    x1, t = Poly.var("x1"), Poly.var("t")
    assert latex_poly(x1**2 - t / 2) == r"x_{1}^{2} - \frac{1}{2} t"
    _, text = run("--format", "latex", "poly", "--family", "bernoulli", "--v", "1", "--t", "1")
    assert r"\frac{1}{2}" in text and "x_{1}" in text
    _, text = run("--format", "latex", "numbers", "--family", "bernoulli", "--max-deg", "2", "--t", "1")
    assert text.startswith(r"\begin{tabular}") and r"\frac{1}{6}" in text


def test_format_flag_after_subcommand():
    _, a = run("--format", "csv", "--no-timestamp", "poly", "--family", "euler", "--v", "2")
    _, b = run("poly", "--family", "euler", "--v", "2", "--format", "csv", "--no-timestamp")
    assert a == b


def test_identical_arguments_identical_output():
    argv = ["--no-timestamp", "verify", "--suite", "all", "--max-deg", "2", "--d", "2", "--samples", "20000"]
    assert run(*argv) == run(*argv)
    code, text = run("poly", "--family", "euler", "--v", "1")
    assert "timestamp" in json.loads(text)


def test_document_key_order_is_sorted():
    doc = OutputDocument(command={"b": 1, "a": 2}, payload={"kind": "value", "value": Fraction(1, 3)})
    text = doc.to_json()
    assert text.index('"command"') < text.index('"payload"') < text.index('"schema"')
    assert parse_document(text) == doc
