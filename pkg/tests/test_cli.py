import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from ditrail import cli, complete_digraph, format_digraph, parse_instance
from ditrail.digraph import digraph_sha256
from ditrail.theorems import DEGREE_SUM, HypothesisReport

SCHEMA = json.loads(resources.files("ditrail").joinpath("schemas/report.schema.json").read_text())


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def report(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    data = json.loads(out)
    jsonschema.validate(data, SCHEMA)
    return code, data


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def test_oracle_two_cycle(capsys, files):
    code, data = report(capsys, "oracle", files("c2.txt", "2 2\n0 1\n1 0\n"))
    assert code == 0 and data["status"] == "found"
    assert data["result"]["witness"] == "0 1 0"
    assert data["certificate"]["arc_count"] == 2


def test_oracle_none_and_subset(capsys, files):
    f = files("star.txt", "3 2\n0 1\n0 2\n")
    code, data = report(capsys, "oracle", f, "--method", "subset")
    assert code == 0 and data["status"] == "none" and data["certificate"] is None


def test_oracle_budget_inconclusive(capsys, files, monkeypatch):
    f = files("k6.txt", format_digraph(complete_digraph(6)))
    monkeypatch.setenv("DITRAIL_BUDGET", "1")
    code, data = report(capsys, "oracle", f, "--method", "subset")
    assert code == 0 and data["status"] == "inconclusive" and data["budget"]["exhausted"]
    code, data = report(capsys, "oracle", f, "--budget", "100000")
    assert data["status"] == "found"


def test_check_degree_sum_on_complete(capsys, files):
    f = files("k4.txt", format_digraph(complete_digraph(4)))
    code, data = report(capsys, "check", f, "--theorem", "degree-sum", "--verify")
    assert code == 0
    assert data["checks"][0]["holds"] is True
    assert data["certificate"]["theorem"] == DEGREE_SUM
    assert data["input_sha256"] == digraph_sha256(complete_digraph(4))


def test_check_lambda_matching_on_five_cycle(capsys, files):
    f = files("c5.txt", "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n")
    code, data = report(capsys, "check", f, "--theorem", "lambda-matching")
    assert code == 0
    (c,) = data["checks"]
    assert c["holds"] is False and c["diagnostics"]["lambda"] == 1


def test_check_all_theorems_by_default(capsys, files):
    code, data = report(capsys, "check", files("k3.txt", format_digraph(complete_digraph(3))))
    assert len(data["checks"]) == 6


def test_check_precondition_reported_per_check(capsys, files):
    code, data = report(capsys, "check", files("k1.txt", "1 0\n"), "--theorem",
                        "supereulerian-degree,degree-sum")
    assert code == 0
    assert "precondition_error" in data["checks"][0]["diagnostics"]


def test_violation_exit_code(capsys, files, monkeypatch):
    forged = HypothesisReport(DEGREE_SUM, True, {})
    monkeypatch.setattr(cli, "run_check", lambda *a, **k: forged)
    code, data = report(capsys, "check", files("p.txt", "2 1\n0 1\n"),
                        "--theorem", "degree-sum", "--verify")
    assert code == 1 and data["status"] == "violation"


@pytest.mark.parametrize("text", ["2 1\n0 1\n1 0\n", "garbage\n", "2 1\n0 0\n"])
def test_malformed_input_exit_2(capsys, files, text):
    code, out, err = run(capsys, "check", files("bad.txt", text))
    assert code == 2 and out == "" and "error" in err


def test_missing_file_and_bad_s(capsys, files):
    assert run(capsys, "oracle", "/nonexistent/x.txt")[0] == 2
    f = files("c2.txt", "2 2\n0 1\n1 0\n")
    assert run(capsys, "oracle", f, "--s", "0,9")[0] == 2
    assert run(capsys, "oracle", f, "--s", "a")[0] == 2


def test_inline_s_wins_with_warning(capsys, caplog, files):
    f = files("s.txt", "3 3\n0 1\n1 0\n1 2\nS: 0 1\n")
    code, out, err = run(capsys, "oracle", f, "--s", "0,2")
    assert json.loads(out)["S"] == [0, 2] and json.loads(out)["status"] == "none"
    assert "overrides" in caplog.text


def test_construct_out_star(capsys, files):
    code, data = report(capsys, "construct", files("star.txt", "4 3\n0 1\n0 2\n0 3\n"))
    assert code == 0 and data["status"] == "certified-impossible"


def test_construct_emits_moves_and_certificate(capsys, files):
    code, data = report(capsys, "construct", files("k4.txt", format_digraph(complete_digraph(4))))
    assert data["status"] == "success" and data["moves"][0]["move"] == "initial_trail"
    assert set(data["certificate"]["vertices"]) == {0, 1, 2, 3}


def test_gen_complete_three(capsys):
    code, out, _ = run(capsys, "gen", "--n", "3", "--p", "1")
    assert code == 0 and out == format_digraph(complete_digraph(3))


def test_gen_round_trip_hash(capsys, tmp_path):
    out_dir = tmp_path / "inst"
    code, data = report(capsys, "gen", "--n", "6", "--count", "4", "--seed", "3",
                        "--target", "degree-sum", "--out", str(out_dir))
    assert code == 0 and len(data["result"]["files"]) == 4
    for path, h in zip(data["result"]["files"], data["result"]["sha256"]):
        D, S = parse_instance(open(path).read())
        assert S is not None and digraph_sha256(D) == h
        assert format_digraph(D, S) == open(path).read()


def test_hunt_report(capsys):
    code, data = report(capsys, "hunt", "--n-min", "4", "--n-max", "5", "--budget", "40")
    assert code == 0 and data["result"]["stats"]["candidates"] == 40
    assert run(capsys, "hunt", "--n-min", "6", "--n-max", "4")[0] == 2


def test_reports_are_byte_identical(capsys, files):
    f = files("k5.txt", format_digraph(complete_digraph(5)))
    outs = [run(capsys, "construct", f)[1] for _ in range(2)]
    assert outs[0] == outs[1]
    timed = json.loads(run(capsys, "construct", f, "--timing")[1])
    assert timed["timing_ms"] is not None


def test_report_file_written(capsys, files, tmp_path):
    f = files("c2.txt", "2 2\n0 1\n1 0\n")
    dest = tmp_path / "r.json"
    code, out, _ = run(capsys, "oracle", f, "--report", str(dest))
    assert dest.read_text() == out


def test_console_script_module_entry(tmp_path):
    p = tmp_path / "c2.txt"
    p.write_text("2 2\n0 1\n1 0\n")
    proc = subprocess.run([sys.executable, "-m", "ditrail", "oracle", str(p)],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["result"]["witness"] == "0 1 0"
