import io
import json

import pytest

from hardness import cli
from hardness.cnf import ClauseSet
from hardness.families import php

EXAMPLE = "p cnf 2 3\n1 0\n-1 2 0\n-1 -2 0\n"


@pytest.fixture
def example(tmp_path):
    path = tmp_path / "ex.cnf"
    path.write_text(EXAMPLE)
    return str(path)


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


def test_measure_json(capsys, example):
    code, out = run(capsys, "measure", example, "--json")
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == cli.SCHEMA_VERSION
    assert data["measures"] == {
        "hd": 1, "dep": 2, "wid": 2, "whd": 1, "semspace": 2, "resspace": 2, "treespace": 2,
    }


def test_measure_subset_and_relative_variables(capsys, example):
    code, out = run(capsys, "measure", example, "--measures", "hd,whd", "--vars", "2", "--json")
    assert code == 0
    assert set(json.loads(out)["measures"]) == {"hd", "whd"}


def test_exit_codes(capsys, tmp_path, example):
    assert run(capsys, "measure", str(tmp_path / "missing.cnf"))[0] == 2
    assert run(capsys, "measure", example, "--measures", "height")[0] == 2
    bad = tmp_path / "bad.cnf"
    bad.write_text("p cnf 1 1\n1 x 0\n")
    assert run(capsys, "measure", str(bad))[0] == 2
    assert run(capsys, "verify")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    php_path = tmp_path / "php.cnf"
    assert run(capsys, "generate", "php", "3", "2", "-o", str(php_path))[0] == 0
    assert run(capsys, "measure", str(php_path), "--cap", "3")[0] == 3


def test_generate_round_trip(capsys, tmp_path):
    path = tmp_path / "php.cnf"
    names = tmp_path / "names.json"
    assert run(capsys, "generate", "php", "3", "2", "-o", str(path), "--names", str(names))[0] == 0
    assert cli.read_cnf(str(path)) == php("plain", 3, 2)
    assert json.loads(names.read_text())["1"] == "p_1_1"
    code, out = run(capsys, "generate", "tseitin", "--graph", "cycle:3")
    assert code == 0 and "p cnf 3 6" in out.splitlines()


def test_verify_files(capsys, tmp_path):
    bottom = tmp_path / "bot.cnf"
    bottom.write_text("p cnf 0 1\n0\n")
    code, out = run(capsys, "verify", str(bottom), "--json")
    assert code == 0
    report = json.loads(out)["reports"][0]
    assert report["measures"]["treespace"] == 1 and report["ok"]
    path = tmp_path / "php.cnf"
    run(capsys, "generate", "php", "3", "2", "-o", str(path))
    code, out = run(capsys, "verify", str(path), "--json")
    assert code == 0
    assert json.loads(out)["reports"][0]["measures"]["hd"] == 2


def test_verify_reports_violations(capsys, example, monkeypatch):
    wrong = {"hd": 3, "dep": 2, "wid": 2, "whd": 1, "semspace": 2, "resspace": 2, "treespace": 2}
    monkeypatch.setattr(cli, "compute_measures", lambda *a, **k: (dict(wrong), {}))
    code, out = run(capsys, "verify", example)
    assert code == 1
    assert "hd <= dep: VIOLATED" in out


def test_relation_checks_skip_missing_values():
    rows = cli.relation_checks({"hd": 1, "dep": None}, 2, 2)
    assert {r["relation"]: r["holds"] for r in rows}["hd <= dep"] is None


def test_game_value_and_scripted_replay(capsys, tmp_path, example, monkeypatch):
    code, out = run(capsys, "game", "value", example, "--game", "whd")
    assert code == 0 and out.strip().endswith("1")
    first, second = tmp_path / "t1.json", tmp_path / "t2.json"
    monkeypatch.setattr("sys.stdin", io.StringIO("-\n-\n-\n"))
    assert run(capsys, "game", "play", example, "--game", "whd", "--transcript", str(first))[0] == 0
    assert run(capsys, "game", "play", example, "--game", "whd", "--replay", str(first),
               "--transcript", str(second))[0] == 0
    assert first.read_bytes() == second.read_bytes()


def test_game_play_on_closed_input(capsys, example, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(""))
    assert run(capsys, "game", "play", example)[0] == 2


def test_reduce_prime_blocked_extend(capsys, tmp_path, example):
    code, out = run(capsys, "reduce", example, "-k", "1")
    assert code == 0 and "0" in out.split("\n", 1)[1]
    assert run(capsys, "prime", example)[0] == 0
    assert run(capsys, "blocked", "list", example)[0] == 0
    path = tmp_path / "php.cnf"
    run(capsys, "generate", "php", "3", "2", "-o", str(path))
    ext = tmp_path / "ext.cnf"
    assert run(capsys, "extend", "from-proof", str(path), "-o", str(ext))[0] == 0
    assert ClauseSet(php("plain", 3, 2)) <= cli.read_cnf(str(ext))


@pytest.mark.parametrize("target", ["space_gap", "ss_factor", "weak_union", "whd_vs_ss", "conj_wid_whd"])
def test_probes_with_small_budget(capsys, target):
    code, out = run(capsys, "probe", target, "--budget", "3", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["target"] == target and data["seed"] == 20240607


def test_corpus_output(capsys, tmp_path):
    path = tmp_path / "c.jsonl"
    assert run(capsys, "corpus", "random", "--count", "4", "-o", str(path))[0] == 0
    rows = [json.loads(line) for line in path.read_text().splitlines()]
    assert len(rows) == 4 and all(isinstance(r, list) for r in rows)
