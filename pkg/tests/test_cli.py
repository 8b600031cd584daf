from __future__ import annotations

import dataclasses
import json

import pytest

from dngame import cli, reproduce
from dngame.fixtures import data_path, load_fixtures


def data(name):
    return str(data_path(name))


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


class TestNonexcl:
    def test_table(self, capsys):
        code, out, _ = run(capsys, "nonexcl", data("linguistic_scale.json"))
        assert code == 0
        lines = out.splitlines()
        assert lines[0].split() == ["VP", "P", "MP", "M", "MG", "G", "VG", "X"]
        assert lines[1].split()[:3] == ["VP", "1.000", "0.116"]
        assert "0.170" in lines[5]

    def test_json(self, capsys):
        code, out, _ = run(capsys, "nonexcl", data("linguistic_scale.json"), "--format", "json")
        doc = json.loads(out)
        assert doc["labels"][-1] == "X"
        assert doc["matrix"][4][5] == pytest.approx(0.170, abs=5e-4)

    def test_single_label(self, capsys, tmp_path):
        code, out, _ = run(capsys, "--format", "json", "nonexcl", write(tmp_path, "s.json", {"L": [0, 0.5, 1]}))
        assert json.loads(out)["matrix"] == [[1.0, 0.0], [0.0, 1.0]]

    def test_malformed_tfn(self, capsys, tmp_path):
        code, _, err = run(capsys, "nonexcl", write(tmp_path, "s.json", {"L": [0.9, 0.5, 0.1]}))
        assert code == 2
        assert '"s.json.L"' in err and "ParseError" in err
        assert len(err.strip().splitlines()) == 1

    def test_error_json(self, capsys, tmp_path):
        code, _, err = run(capsys, "--format", "json", "nonexcl", str(tmp_path / "none.json"))
        rec = json.loads(err)
        assert code == 2 and rec["exit"] == 2 and rec["error"] == "ParseError"


class TestCombine:
    def test_example(self, capsys):
        code, out, _ = run(capsys, "combine", data("ecr_example.json"), data("ecr_example_matrix.json"))
        assert code == 0
        assert "step 1: K_D = 0.423" in out
        body = [line.split() for line in out.splitlines()[2:]]
        assert body == [
            ["{a}", "0.589"], ["{b}", "0.225"], ["{X}", "0.035"], ["{a,b}", "0.075"],
            ["{a,X}", "0.045"], ["{b,X}", "0.014"], ["{a,b,X}", "0.017"],
        ]

    def test_json(self, capsys):
        code, out, _ = run(capsys, "combine", data("ecr_example.json"), data("ecr_example_matrix.json"), "--format=json")
        doc = json.loads(out)
        assert doc["steps"][0]["conflict"] == pytest.approx(0.423, abs=5e-4)
        assert sum(r["mass"] for r in doc["result"]) == pytest.approx(1.0, abs=1e-9)

    def test_dempster_degeneracy(self, capsys, tmp_path):
        ds = write(tmp_path, "d.json", {"theta": ["a", "b"], "dnumbers": [
            [{"focal": ["a"], "mass": 0.6}, {"focal": ["a", "b"], "mass": 0.4}],
            [{"focal": ["b"], "mass": 0.5}, {"focal": ["a", "b"], "mass": 0.5}],
        ]})
        m = write(tmp_path, "m.json", {"labels": ["a", "b"], "matrix": [[1, 0], [0, 1]]})
        code, out, _ = run(capsys, "--format", "json", "combine", ds, m)
        doc = json.loads(out)
        got = {tuple(r["focal"]): r["mass"] for r in doc["result"]}
        assert doc["steps"][0]["conflict"] == pytest.approx(0.3)
        assert got == pytest.approx({("a",): 3 / 7, ("b",): 2 / 7, ("a", "b"): 2 / 7})

    def test_total_conflict(self, capsys, tmp_path):
        ds = write(tmp_path, "d.json", {"theta": ["a", "b"], "dnumbers": [
            [{"focal": ["a"], "mass": 1}], [{"focal": ["a"], "mass": 1}], [{"focal": ["b"], "mass": 1}],
        ]})
        m = write(tmp_path, "m.json", {"labels": ["a", "b"], "matrix": [[1, 0], [0, 1]]})
        code, _, err = run(capsys, "combine", ds, m)
        assert code == 3
        assert "TotalExclusiveConflictError" in err and "step 2" in err

    def test_needs_two(self, capsys, tmp_path):
        ds = write(tmp_path, "d.json", {"theta": ["a"], "dnumbers": [[{"focal": ["a"], "mass": 1}]]})
        m = write(tmp_path, "m.json", {"labels": ["a"], "matrix": [[1]]})
        assert run(capsys, "combine", ds, m)[0] == 2


class TestRun:
    def test_column(self, capsys):
        code, out, _ = run(capsys, "run", data("scenario_bs1.json"), "--column", "BS1")
        assert code == 0
        assert out.splitlines()[-1] == "payoffs: AS1=0.779, AS2=0.689, AS3=0.192, AS4=0.317, AS5=0.153"
        assert "fuzzy payoff: (0.629, 0.791, 0.918)" in out

    def test_column_json(self, capsys):
        code, out, _ = run(capsys, "run", data("scenario_bs1.json"), "--column", "BS1", "--player", "Alpha", "--format", "json")
        doc = json.loads(out)
        pay = [doc["strategies"][s]["payoff"] for s in ("AS1", "AS2", "AS3", "AS4", "AS5")]
        assert pay == pytest.approx([0.779, 0.689, 0.192, 0.317, 0.154], abs=2e-3)

    def test_game_document(self, capsys):
        code, out, _ = run(capsys, "run", data("game_dnt.json"), "--full")
        assert code == 0
        assert "pure-strategy equilibria: (AS5, BS3)" in out

    def test_game_document_json(self, capsys):
        code, out, _ = run(capsys, "run", data("game_topsis.json"), "--format", "json")
        doc = json.loads(out)
        assert doc["equilibria"] == [["AS5", "BS3"]]
        assert doc["best_response_counts"]["Beta"]["BS4"] == 4
        assert doc["rankings"]["Alpha"]["BS3"] == {"AS1": 4, "AS2": 5, "AS3": 3, "AS4": 2, "AS5": 1}

    def test_missing_cases(self, capsys):
        code, _, err = run(capsys, "run", data("scenario_bs1.json"), "--full")
        assert code == 4
        assert "Beta|AS1" in err

    def test_missing_column(self, capsys):
        code, _, err = run(capsys, "run", data("scenario_bs1.json"), "--column", "BS2")
        assert code == 4 and "Alpha|BS2" in err

    def test_full_scenario(self, capsys, tmp_path, full_scenario_doc):
        path = write(tmp_path, "full.json", full_scenario_doc)
        code, out, _ = run(capsys, "run", path, "--full", "--workers", "2", "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert len(doc["payoffs"]) == 5 and len(doc["cases"]) == 9
        assert doc["payoffs"][0][0][0] == pytest.approx(0.779, abs=2e-3)

    def test_deterministic_output(self, capsys, tmp_path, full_scenario_doc):
        path = write(tmp_path, "full.json", full_scenario_doc)
        first = run(capsys, "run", path, "--format", "json")[1]
        assert run(capsys, "run", path, "--format", "json", "--workers", "3")[1] == first

    def test_column_rejected_for_games(self, capsys):
        assert run(capsys, "run", data("game_dnt.json"), "--column", "BS1")[0] == 2


class TestReproduce:
    def test_all_pass(self, capsys):
        code, out, _ = run(capsys, "reproduce-paper")
        assert code == 0
        assert out.splitlines()[-1].endswith(" passed, 0 failed")
        assert all(line.startswith("PASS") for line in out.splitlines()[:-1])

    def test_only(self, capsys):
        code, out, _ = run(capsys, "reproduce-paper", "--only", "nonexcl", "--format", "json")
        groups = {c["group"] for c in json.loads(out)}
        assert code == 0 and groups == {"nonexcl"}

    def test_tolerance_override(self, capsys):
        code, out, _ = run(capsys, "--tolerance", "1e-9", "reproduce-paper", "--only", "weights")
        assert code == 1 and "FAIL" in out

    def test_perturbed_fixture(self, capsys, monkeypatch):
        fx = load_fixtures()
        expected = json.loads(json.dumps(fx.expected))
        expected["ecr_conflict"] = 0.5
        monkeypatch.setattr(reproduce, "load_fixtures", lambda: dataclasses.replace(fx, expected=expected))
        code, out, _ = run(capsys, "reproduce-paper")
        failed = [line for line in out.splitlines() if line.startswith("FAIL")]
        assert code == 1
        assert len(failed) == 1 and "K_D" in failed[0] and "ecr-two-source-example" in failed[0]


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as err:
        cli.main([])
    assert err.value.code == 2
    with pytest.raises(SystemExit):
        cli.main(["run", "x.json", "--column", "BS1", "--full"])
