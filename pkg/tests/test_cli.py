import json
import subprocess
import sys

import pytest

from boolq.cli import main
from boolq.core import parse_poly, parse_truth_table, poly_from_truth_table
from boolq.harness import FindingsReport
from boolq.maxonomial import DecisionTree, QueryTrace
from boolq.measures import MeasureReport


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


class TestMeasures:
    def test_parity4(self, capsys):
        code, doc = run_json(capsys, "measures", "--family", "parity", "--n", "4")
        assert code == 0
        assert (doc["deg"], doc["bs"], doc["d"]) == (4, 4, 4)
        assert MeasureReport.from_document(doc).to_document() == doc

    def test_dictator(self, capsys):
        code, doc = run_json(capsys, "measures", "--tt", "n=1;bits=01")
        assert code == 0
        assert (doc["deg"], doc["bs"], doc["d"], doc["ndeg"], doc["qe_lower"]) == (1, 1, 1, 1, 1)

    def test_human(self, capsys):
        code, out, _ = run(capsys, "measures", "--tt", "n=2;hex=e", "--profile")
        assert code == 0 and "bs_profile" in out and "deg" in out

    def test_malformed_bits(self, capsys):
        code, out, err = run(capsys, "measures", "--tt", "n=2;bits=011")
        assert code == 2 and err.startswith("boolq:")

    def test_two_inputs(self, capsys):
        code, _, err = run(capsys, "measures", "--tt", "n=1;bits=01", "--family", "or", "--n", "2")
        assert code == 2 and "exactly one" in err

    def test_cap(self, capsys):
        code, doc = run_json(capsys, "measures", "--family", "or", "--n", "4", "--ndeg-cap", "3")
        assert code == 3 and doc["ndeg"] is None and "ndeg" in doc["unavailable"]

    def test_poly_input(self, capsys):
        text = '{"n": 2, "terms": [{"mask": "0b01", "coeff": 1}, {"mask": "0b10", "coeff": 1}, {"mask": "0b11", "coeff": -1}]}'
        code, doc = run_json(capsys, "measures", "--poly", text)
        assert code == 0 and (doc["deg"], doc["ndeg"]) == (2, 1)

    def test_non_boolean_poly(self, capsys):
        code, _, _ = run(capsys, "measures", "--poly", '{"n": 1, "terms": [{"mask": "0b1", "coeff": 2}]}')
        assert code == 2

    def test_file(self, capsys, tmp_path):
        path = tmp_path / "f.txt"
        path.write_text("n=3;bits=00010111\n")
        code, doc = run_json(capsys, "measures", "--file", str(path))
        assert code == 0 and doc["deg"] == 3
        code, _, _ = run(capsys, "measures", "--file", str(tmp_path / "missing"))
        assert code == 2


class TestRun:
    def test_parity3(self, capsys):
        code, doc = run_json(capsys, "run", "--family", "parity", "--n", "3", "--x", "101")
        assert code == 0
        assert (doc["value"], doc["rounds"], doc["total_queries"]) == (0, 1, 3)

    def test_or2_trace(self, capsys):
        code, doc = run_json(capsys, "run", "--tt", "n=2;bits=0111", "--x", "00", "--trace")
        assert code == 0 and doc["value"] == 0
        trace = QueryTrace.from_document(doc["trace"])
        assert trace.rounds[0].maxonomial == 0b11
        assert doc["trace"]["rounds"][0]["maxonomial"] == "0b11"

    def test_or2_trace_human(self, capsys):
        code, out, _ = run(capsys, "run", "--tt", "n=2;bits=0111", "--x", "00", "--trace")
        assert "maxonomial 0b11" in out

    def test_const1(self, capsys):
        code, doc = run_json(capsys, "run", "--family", "const1", "--n", "2", "--x", "11")
        assert code == 0 and (doc["value"], doc["total_queries"]) == (1, 0)

    def test_point_arity(self, capsys):
        code, _, _ = run(capsys, "run", "--family", "parity", "--n", "3", "--x", "10")
        assert code == 2

    def test_check_boolean(self, capsys):
        code, _, _ = run(capsys, "run", "--poly", '{"n": 2, "terms": [{"mask": "0b01", "coeff": 2}]}',
                         "--x", "00", "--check-boolean")
        assert code == 2


class TestVerify:
    def test_exhaustive_n3(self, capsys):
        code, out, _ = run(capsys, "verify", "--exhaustive", "--n", "3")
        assert code == 0 and "status: pass" in out

    def test_json_round_trip(self, capsys):
        code, out, _ = run(capsys, "verify", "--exhaustive", "--n", "2", "--format", "json")
        rep = FindingsReport.from_document(json.loads(out))
        assert code == 0 and rep.to_json() == out

    def test_random_repeatable(self, capsys):
        argv = ("verify", "--random", "--n", "8", "--count", "500", "--seed", "7")
        _, a, _ = run(capsys, *argv)
        _, b, _ = run(capsys, *argv)
        assert a == b and "seed=7" in a

    def test_cap(self, capsys):
        code, _, err = run(capsys, "verify", "--exhaustive", "--n", "9")
        assert code == 3 and "cap" in err

    def test_bad_check(self, capsys):
        code, _, _ = run(capsys, "verify", "--exhaustive", "--n", "2", "--checks", "nope")
        assert code == 2

    def test_failure_exit(self, capsys, monkeypatch):
        from boolq import harness

        monkeypatch.setattr(harness, "decision_tree_depth", lambda tt, lim: 99)
        code, out, _ = run(capsys, "verify", "--exhaustive", "--n", "2", "--checks", "theorem3")
        assert code == 1 and "FAILURES" in out


class TestFamily:
    def test_bits_hex_poly(self, capsys):
        _, bits, _ = run(capsys, "family", "or", "--n", "2")
        _, hexa, _ = run(capsys, "family", "or", "--n", "2", "--emit", "hex")
        _, poly, _ = run(capsys, "family", "or", "--n", "2", "--emit", "poly")
        assert bits.strip() == "n=2;bits=0111"
        assert parse_truth_table(hexa) == parse_truth_table(bits)
        assert parse_poly(poly) == poly_from_truth_table(parse_truth_table(bits))

    def test_address(self, capsys):
        _, out, _ = run(capsys, "family", "address", "--k", "1")
        assert out.strip() == "n=3;bits=00100111"

    def test_invalid(self, capsys):
        code, _, _ = run(capsys, "family", "majority", "--n", "4")
        assert code == 2


class TestTree:
    def test_parity3(self, capsys, tmp_path):
        dot = tmp_path / "t.dot"
        code, doc = run_json(capsys, "tree", "--family", "parity", "--n", "3", "--dot", str(dot))
        assert code == 0 and (doc["depth"], doc["leaves"]) == (3, 8)
        assert DecisionTree.from_document(doc).to_document() == doc
        assert dot.read_text().startswith("digraph")

    def test_text_round_trip(self, capsys):
        _, out, _ = run(capsys, "tree", "--family", "const1", "--n", "2")
        body = "".join(ln + "\n" for ln in out.splitlines() if not ln.startswith("#"))
        tree = DecisionTree.from_text(body)
        assert tree.depth() == 0 and tree.leaves() == 1

    def test_budget(self, capsys):
        code, _, _ = run(capsys, "tree", "--family", "parity", "--n", "4", "--node-budget", "5")
        assert code == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "boolq", "measures", "--family", "and", "--n", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "ndeg" in proc.stdout
