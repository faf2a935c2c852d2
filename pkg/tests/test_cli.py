import json

import pytest
import requests

from conftest import fixture_path
from gridwalk import cli, constructions, reference_data
from gridwalk.cli import main, parse_range
from gridwalk.grid_core import row_major


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# =============================
# BOUNDS / CONSTRUCT / EVAL
# =============================

def test_bounds(capsys):
    assert run(capsys, "bounds", "4", "4")[:2] == (0, "r=61 upper=62 interval\n")
    assert run(capsys, "bounds", "3", "4")[:2] == (0, "exact M=39\n")


def test_bounds_invalid_dims(capsys):
    code, out, err = run(capsys, "bounds", "0", "4")
    assert code == 2
    assert out == ""
    assert "positive" in err


def test_usage_error(capsys):
    assert run(capsys, "bounds", "4")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_construct_to_stdout(capsys):
    code, out, err = run(capsys, "construct", "2", "3")
    assert code == 0
    assert out == "2 4 6\n5 1 3\n"
    assert "length=12 target=12" in err


def test_construct_to_file(capsys, tmp_path):
    path = tmp_path / "grid.txt"
    code, out, _ = run(capsys, "construct", "3", "3", "--out", str(path))
    assert code == 0
    assert out == "length=23 target=23\n"
    assert path.read_text() == "3 5 7\n1 9 4\n8 6 2\n"


def test_construct_mismatch_exits_3(capsys, monkeypatch):
    monkeypatch.setattr(cli, "construct_optimal", row_major)
    code, _, err = run(capsys, "construct", "3", "3")
    assert code == 3
    assert "expected 23" in err
    assert "construct_odd_odd" in err


def test_eval(capsys):
    assert run(capsys, "eval", fixture_path("labeling_3x3.txt"))[:2] == (0, "23\n")


@pytest.mark.parametrize("text, expected", [("1 2\n3 4\n", "4\n"), ("1 3\n4 2\n", "5\n")])
def test_eval_small_grids(capsys, tmp_path, text, expected):
    path = tmp_path / "grid.txt"
    path.write_text(text)
    assert run(capsys, "eval", str(path))[:2] == (0, expected)


def test_eval_duplicate_labels(capsys, tmp_path):
    path = tmp_path / "grid.txt"
    path.write_text("1 1\n3 4\n")
    code, out, err = run(capsys, "eval", str(path))
    assert code == 2
    assert out == ""
    assert "duplicate 1" in err


def test_construct_single_cell(capsys):
    code, out, err = run(capsys, "construct", "1", "1")
    assert (code, out) == (0, "1\n")
    assert "length=0 target=0" in err


def test_eval_axes(capsys, tmp_path):
    path = tmp_path / "grid.txt"
    path.write_text("2 4 6\n5 1 3\n")
    assert run(capsys, "eval", str(path), "--axes")[:2] == (0, "12 rows=5 cols=7\n")


def test_eval_bad_input(capsys, tmp_path):
    path = tmp_path / "grid.txt"
    path.write_text("1 2\n3\n")
    code, _, err = run(capsys, "eval", str(path))
    assert code == 2
    assert "line 2" in err
    assert run(capsys, "eval", str(tmp_path / "missing.txt"))[0] == 2


def test_eval_rejects_integers_beyond_64_bits(capsys, tmp_path):
    path = tmp_path / "grid.txt"
    path.write_text("1 99999999999999999999999\n3 4\n")
    code, _, err = run(capsys, "eval", str(path))
    assert code == 2
    assert "line 1" in err


def test_eval_rejects_non_utf8_files(capsys, tmp_path):
    path = tmp_path / "grid.txt"
    path.write_bytes(b"1 2\n3 \xff4\n")
    code, out, err = run(capsys, "eval", str(path))
    assert code == 2
    assert out == ""
    assert "UTF-8" in err


# =============================
# SOLVE
# =============================

def test_solve_writes_cache(capsys, tmp_path):
    cache = tmp_path / "cache.json"
    code, out, _ = run(capsys, "solve", "2", "2", "--cache", str(cache))
    assert code == 0
    assert "M=5, equals r" in out
    assert "McNeil conjecture 5: match" in out
    records = json.loads(cache.read_text())["records"]
    assert [(r["m"], r["n"], r["optimum"]) for r in records] == [(2, 2, 5)]


def test_solve_canonicalizes_cache_key(capsys, tmp_path):
    cache = tmp_path / "cache.json"
    assert run(capsys, "solve", "4", "3", "--cache", str(cache))[0] == 0
    records = json.loads(cache.read_text())["records"]
    assert [(r["m"], r["n"], r["optimum"]) for r in records] == [(3, 4, 39)]


def test_solve_over_cap_exits_4(capsys, tmp_path):
    code, out, err = run(capsys, "solve", "5", "5", "--cap", "20", "--cache", str(tmp_path / "c.json"))
    assert code == 4
    assert out == ""
    assert "25 cells" in err and "GB" in err


# =============================
# SWEEP
# =============================

def test_parse_range():
    assert parse_range("1..3") == range(1, 4)
    assert parse_range("4") == range(4, 5)
    with pytest.raises(cli.UsageError):
        parse_range("3..1")
    with pytest.raises(cli.UsageError):
        parse_range("0..2")
    with pytest.raises(cli.UsageError):
        parse_range("a..b")


def test_sweep_csv(capsys):
    code, out, _ = run(capsys, "sweep", "1..3", "1..3", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "m,n,lower,upper,exact,solved,construct_len,conjecture"
    assert len(lines) == 10
    assert lines[1] == "1,1,0,0,true,,0,"
    assert "2,2,5,6,false,,5,5" in lines
    assert "3,2,12,13,false,,12," in lines
    keys = [tuple(map(int, line.split(",")[:2])) for line in lines[1:]]
    assert keys == sorted(keys)


def test_sweep_solve(capsys):
    code, out, _ = run(capsys, "sweep", "2", "2..3", "--format", "csv", "--solve", "--workers", "2")
    assert code == 0
    rows = out.splitlines()[1:]
    assert rows[0] == "2,2,5,6,false,5,5,5"
    assert rows[1].split(",")[5] in ("12", "13")


def test_sweep_is_byte_stable(capsys):
    first = run(capsys, "sweep", "1..4", "1..4", "--workers", "1")[1]
    second = run(capsys, "sweep", "1..4", "1..4", "--workers", "4")[1]
    assert first == second
    assert first.splitlines()[0].split() == cli.SWEEP_COLUMNS


def test_sweep_single_cell_range(capsys):
    out = run(capsys, "sweep", "3..3", "3..3", "--format", "csv")[1]
    assert out.splitlines()[1:] == ["3,3,23,24,false,,23,23"]


def test_sweep_bad_range(capsys):
    assert run(capsys, "sweep", "3..1", "1..2")[0] == 2


def test_sweep_identity_violation(capsys, monkeypatch):
    monkeypatch.setattr(constructions, "construct_optimal", row_major)
    assert run(capsys, "sweep", "3", "3")[0] == 3


# =============================
# COMPARE-OEIS
# =============================

def test_compare_oeis(capsys, tmp_path):
    code, out, _ = run(capsys, "compare-oeis", fixture_path("b179094_small.txt"), "--cache", str(tmp_path / "c.json"))
    assert code == 0
    assert "9/9 match, 0 mismatch" in out
    assert "n=1 skipped" in out


def test_compare_oeis_uses_cached_optima(capsys, tmp_path):
    cache = str(tmp_path / "c.json")
    assert run(capsys, "solve", "2", "2", "--cache", cache)[0] == 0
    out = run(capsys, "compare-oeis", fixture_path("b179094_perturbed.txt"), "--cache", cache)[1]
    assert "n=2 value=5 conjecture=5 match solved=5 agrees" in out
    assert "n=4 value=62 conjecture=61 MISMATCH" in out


def test_compare_oeis_missing_file(capsys, tmp_path):
    assert run(capsys, "compare-oeis", str(tmp_path / "none.txt"))[0] == 2


def test_compare_oeis_rejects_non_utf8_files(capsys, tmp_path):
    path = tmp_path / "b.txt"
    path.write_bytes(b"2 5\n3 \xe923\n")
    code, _, err = run(capsys, "compare-oeis", str(path), "--cache", str(tmp_path / "c.json"))
    assert code == 2
    assert "UTF-8" in err


def test_compare_oeis_needs_a_source(capsys, tmp_path):
    code, _, err = run(capsys, "compare-oeis", "--cache", str(tmp_path / "c.json"))
    assert code == 2
    assert "--fetch" in err


def test_compare_oeis_fetch(capsys, tmp_path, monkeypatch):
    calls = []

    class FakeResponse:
        text = "# A179094\n2 5\n3 23\n"

        def raise_for_status(self):
            pass

    def fake_get(url, timeout):
        calls.append(url)
        return FakeResponse()

    monkeypatch.setattr(reference_data.requests, "get", fake_get)
    url = "https://example.invalid/b179094.txt"
    code, out, _ = run(capsys, "compare-oeis", "--fetch", url, "--cache", str(tmp_path / "c.json"))
    assert code == 0
    assert "2/2 match" in out
    assert calls == [url]


def test_compare_oeis_fetch_failure_exits_2(capsys, tmp_path, monkeypatch):
    def unreachable(url, timeout):
        raise requests.ConnectionError("connection refused")

    monkeypatch.setattr(reference_data, "_download", unreachable)
    code, out, err = run(capsys, "compare-oeis", "--fetch", "--cache", str(tmp_path / "c.json"))
    assert code == 2
    assert out == ""
    assert "cannot download" in err


def test_solve_rejects_non_utf8_cache(capsys, tmp_path):
    cache = tmp_path / "cache.json"
    cache.write_bytes(b'{"version": 1, "records": [\xff]}')
    code, _, err = run(capsys, "solve", "2", "2", "--cache", str(cache))
    assert code == 2
    assert "UTF-8" in err
