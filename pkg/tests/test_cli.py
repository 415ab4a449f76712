import json
from fractions import Fraction

import pytest

from ratbase.cli import main
from ratbase.export import read_spans_csv
from ratbase.numeration import parse_word


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_repr_and_eval(capsys):
    assert run(capsys, "repr", "-p", "3", "-q", "2", "4")[:2] == (0, "2,1,2\n")
    assert run(capsys, "eval", "-p", "3", "-q", "2", "")[:2] == (0, "0\n")
    assert run(capsys, "eval", "-p", "3", "-q", "2", "1,0")[:2] == (0, "3/4\n")
    assert run(capsys, "eval", "-p", "4", "-q", "3", "-1")[:2] == (0, "-1/3\n")
    assert run(capsys, "eval", "-p", "4", "-q", "3", "-1,0,3")[0] == 0
    code, out, _ = run(capsys, "repr", "-p", "7", "-q", "3", "100", "--roundtrip")
    word, value = out.split()
    assert code == 0 and value == "100"
    assert run(capsys, "eval", "-p", "7", "-q", "3", word)[1] == "100\n"


def test_words(capsys):
    code, out, _ = run(capsys, "minword", "-p", "3", "-q", "2", "-n", "1", "-k", "8")
    assert code == 0 and parse_word(out.split()[0]) == [1, 0, 1, 1, 0, 0, 0, 1]
    _, out, _ = run(capsys, "spanword", "-p", "3", "-q", "2", "-n", "0", "-k", "5")
    assert parse_word(out.split()[0]) == [2, 1, 2, 2, 1]
    _, out, _ = run(capsys, "maxword", "-p", "3", "-q", "2", "-n", "0", "-k", "5", "--states")
    assert "1,2,4,7,11" in out


@pytest.mark.parametrize("pq", [("3", "2"), ("4", "3"), ("7", "3")])
def test_transduce_matches(capsys, pq):
    for n in range(11):
        code, out, _ = run(capsys, "transduce", "-p", pq[0], "-q", pq[1], "-n", str(n), "-k", "40")
        assert code == 0 and out.endswith("MATCH\n")


def test_transduce_edge_cases(capsys):
    code, out, _ = run(capsys, "transduce", "-p", "3", "-q", "2", "-n", "0", "-k", "0")
    assert code == 0 and out.endswith("MATCH\n")
    code, out, _ = run(capsys, "transduce", "-p", "3", "-q", "2", "-n", "0", "-k", "8",
                       "--inject-mismatch")
    assert code == 1 and out.endswith("MISMATCH\n")


def test_span_formats(capsys, tmp_path):
    code, out, _ = run(capsys, "span", "-p", "7", "-q", "3", "-n", "0", "--n-max", "3",
                       "-k", "16", "--format", "json")
    data = json.loads(out)
    assert code == 0 and [r["n"] for r in data["spans"]] == [0, 1, 2, 3]
    target = tmp_path / "s.csv"
    run(capsys, "span", "-p", "7", "-q", "3", "--n-max", "3", "-k", "16", "--format", "csv",
        "-o", str(target))
    rows = read_spans_csv(target.read_text())
    assert [dict(r, n=int(r["n"]), k=int(r["k"])) for r in rows] == data["spans"]
    assert all(Fraction(r["span_lo"]) <= Fraction(r["span_hi"]) for r in rows)


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "seqic", "-p", "7", "-q", "3", "--n-max", "200")
    assert code == 0 and json.loads(out)["ok"]
    code, out, _ = run(capsys, "verify", "seqic", "-p", "7", "-q", "3", "-n", "20",
                       "--format", "text")
    assert code == 0 and "violations 0" in out
    code, out, _ = run(capsys, "verify", "cantor", "-p", "4", "-q", "3")
    assert code == 2 and json.loads(out)["error"] == "PreconditionViolated"
    assert run(capsys, "verify", "nope", "-p", "3", "-q", "2")[0] == 2


def test_verify_failure_exit_code(capsys, monkeypatch):
    import ratbase.verify as v
    monkeypatch.setattr(v, "substitution_candidates", lambda *a: [])
    code, out, _ = run(capsys, "verify", "seqic", "-p", "3", "-q", "2", "-n", "5")
    data = json.loads(out)
    assert code == 1 and data["violations"] == 6 and "replay" in data["first_counterexample"]


def test_usage_errors(capsys):
    assert run(capsys, "repr", "-p", "6", "-q", "4", "1")[0] == 2
    assert run(capsys, "eval", "-p", "3", "-q", "2", "1,x")[0] == 2
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "repr", "-p", "3")[0] == 2
    assert run(capsys, "witness", "-p", "3", "-q", "2", "2")[0] == 2


def test_export(capsys, tmp_path):
    target = tmp_path / "t.dot"
    assert run(capsys, "export", "tree", "-p", "3", "-q", "2", "-n", "10", "-o", str(target))[0] == 0
    assert target.read_text().startswith("digraph")
    code, out, _ = run(capsys, "export", "tree", "-p", "3", "-q", "2", "-n", "-1")
    assert code == 0 and out.endswith("{\n}\n")
    code, out, _ = run(capsys, "export", "fractal", "-p", "3", "-q", "2", "-n", "10")
    assert code == 0 and out.startswith("<svg")
    assert run(capsys, "export", "tree", "-p", "3", "-q", "2", "--format", "svg")[0] == 2
    bad = tmp_path / "missing" / "x.dot"
    assert run(capsys, "export", "tree", "-p", "3", "-q", "2", "-o", str(bad))[0] == 3


def test_search_and_witness(capsys):
    assert run(capsys, "search-prefix", "-p", "3", "-q", "2", "2")[:2] == (0, "0\n")
    assert run(capsys, "search-prefix", "-p", "3", "-q", "2", "1")[0] == 2
    assert run(capsys, "witness", "-p", "4", "-q", "3", "3,-1")[:2] == (0, "0,3\n")
    code, out, _ = run(capsys, "search-run", "-p", "3", "-q", "2", "0", "1")
    assert code == 0 and int(out) >= 0
