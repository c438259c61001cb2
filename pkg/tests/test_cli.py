from __future__ import annotations

import csv
import json
from fractions import Fraction

import pytest

from c3z3.cli import CACHE_ENV, default_cache, main
from c3z3.golden import ROWS
from c3z3.store import HodgeStore, InvariantKey


@pytest.fixture
def cache(tmp_path, monkeypatch):
    monkeypatch.setenv(CACHE_ENV, str(tmp_path / "cachedir"))
    return tmp_path / "cachedir" / "cache.json"


def test_env_override(cache):
    assert default_cache() == cache


def test_compute_three_holds_the_seeds(cache, capsys):
    assert main(["compute", "--max-insertions", "3"]) == 0
    store = HodgeStore.load(cache)
    assert set(store.invariants) == {InvariantKey(3, 0, 0), InvariantKey(1, 1, 1), InvariantKey(0, 3, 0), InvariantKey(0, 0, 3)}


def test_compute_verify_and_export(cache, capsys, tmp_path):
    assert main(["compute", "--max-insertions", "12"]) == 0
    first = cache.read_text()
    assert main(["compute", "--max-insertions", "12"]) == 0
    assert cache.read_text() == first
    capsys.readouterr()
    assert main(["verify"]) == 0
    out = capsys.readouterr().out
    assert "checked: 29" in out and "OK" in out

    out_json = tmp_path / "export.json"
    assert main(["export", "--format", "json", "--out", str(out_json)]) == 0
    assert HodgeStore.load(out_json).dumps() == first

    out_csv = tmp_path / "table.csv"
    assert main(["export", "--format", "csv", "--out", str(out_csv)]) == 0
    rows = list(csv.reader(out_csv.open()))
    by_n = {int(r[0]): [c for c in r[1:] if c] for r in rows[1:]}
    for N, row in ROWS.items():
        if N <= 12:
            assert [Fraction(c) for c in by_n[N]] == [Fraction(c) for c in row]

    capsys.readouterr()
    assert main(["export", "--format", "json", "--t", "1,2,3"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert {"n1": 3, "n2": 0, "value": "1/3"} in data
    assert {"n1": 0, "n2": 3, "value": "2"} in data

    assert main(["export", "--format", "csv", "--table", "hodge"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "n1,n2,i,j,k,value" and "6,0,1,1,1,1/27" in lines


def test_tampered_cache_fails(cache, capsys):
    assert main(["compute", "--max-insertions", "9"]) == 0
    data = json.loads(cache.read_text())
    for item in data["invariants"]:
        if (item["n0"], item["n1"], item["n2"]) == (0, 1, 4):
            term = item["poly"][0]
            term["c"] = str(Fraction(term["c"]) + Fraction(1, 10 ** 6))
    cache.write_text(json.dumps(data))
    capsys.readouterr()
    assert main(["verify"]) == 1
    assert "<w^1 wb^4>" in capsys.readouterr().out


def test_empty_cache_passes_with_warning(cache, capsys):
    HodgeStore().save(cache)
    assert main(["verify"]) == 0
    assert "warning" in capsys.readouterr().out


def test_missing_cache(cache, capsys):
    assert main(["verify"]) == 1
    assert main(["export", "--format", "csv"]) == 1


def test_hodge_command(cache, capsys):
    assert main(["hodge", "--space", "2,2"]) == 0
    assert "l1 l0 l0  1/9" in capsys.readouterr().out
    assert main(["hodge", "--space", "6,0", "--lambda", "1,1,1"]) == 0
    assert capsys.readouterr().out.strip() == "1/27"
    assert main(["hodge", "--space", "6,0", "--lambda", "2,1,0"]) == 0
    assert capsys.readouterr().out.strip() == "0"
    assert main(["hodge", "--space", "0,6"]) == 0
    assert "l3 l0 l0  1/27" in capsys.readouterr().out
    assert main(["hodge", "--space", "2,0"]) == 2


def test_pde_check(capsys):
    assert main(["pde-check", "--order", "9"]) == 0
    assert "all residuals vanish" in capsys.readouterr().out


def test_thread_counts_give_identical_caches(tmp_path):
    paths = []
    for threads in (1, 4):
        path = tmp_path / f"c{threads}.json"
        assert main(["compute", "--max-insertions", "15", "--threads", str(threads), "--cache", str(path)]) == 0
        paths.append(path)
    assert paths[0].read_bytes() == paths[1].read_bytes()


@pytest.mark.parametrize("argv", [[], ["compute"], ["compute", "--max-insertions", "2"], ["hodge", "--space", "1"], ["export", "--format", "xml"], ["export", "--format", "csv", "--t", "1,2"]])
def test_usage_errors(argv, cache):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2
