import json

import pytest

from vcert.cli import main, parse_range


def test_parse_range():
    assert parse_range("2..5") == range(2, 6)
    assert parse_range("7") == range(7, 8)


@pytest.mark.parametrize("argv,code", [
    (["identity", "associativity", "--range", "2..5"], 0),
    (["identity", "four-mode", "--m", "3..5", "--p", "2..3"], 0),
    (["identity", "four-mode", "--reading", "printed"], 1),
    (["identity", "bogus"], 2),
    (["coeffs", "--k", "1", "--m", "15"], 2),
    (["coeffs", "--k", "0", "--m", "14"], 0),
    (["certify", "--smax", "30"], 2),
    (["certify", "--smax", "33"], 2),
    (["oracle", "--rule", "swap", "--max-weight", "40"], 2),
    (["oracle", "--rule", "length2", "--max-weight", "10"], 0),
    (["oracle", "--rule", "bogus"], 2),
    (["frobnicate"], 2),
    ([], 2),
])
def test_exit_codes(argv, code, capsys):
    assert main(argv) == code


def test_coeffs_json_roundtrip(capsys):
    assert main(["coeffs", "--k", "2", "--m", "20", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["k"] == 2 and data["m"] == 20
    assert all("/" in x for x in data["xi"] + data["zeta"])


def test_oracle_reports_reading(capsys):
    assert main(["oracle", "--rule", "product", "--max-weight", "10", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["verified_readings"] == ["corrected"]


def test_certify_writes_deterministic_file(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["certify", "--smax", "40", "--out", str(a)]) == 0
    assert main(["certify", "--smax", "40", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert "theorem for n in [30, 38]: holds" in capsys.readouterr().out


def test_bad_thread_setting(monkeypatch, tmp_path):
    monkeypatch.setenv("VCERT_THREADS", "many")
    assert main(["certify", "--smax", "32", "--out", str(tmp_path / "c.json")]) == 2
