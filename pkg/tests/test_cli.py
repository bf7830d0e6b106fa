from __future__ import annotations

import json
from fractions import Fraction

import pytest

import inducibility.cli as cli
from inducibility.cli import run_command


def _run(capsys, argv):
    try:
        code = run_command(argv)
    except SystemExit as exc:
        # argparse reports usage errors through exit, with the same code
        code = exc.code
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _run_json(capsys, argv):
    code, out, err = _run(capsys, argv)
    assert code == 0, err
    return json.loads(out)


def test_profile_default_flavor_is_repetitive(capsys):
    payload = _run_json(capsys, ["profile", "--t", "3", "C5"])
    assert payload["command"] == "profile:repetitive"
    assert payload["basis"] == ["K3", "A3", "P3", "E3"]
    values = {v["type"]: Fraction(int(v["num"]), int(v["den"])) for v in payload["values"]}
    assert values["P3"] == Fraction(12, 25)
    assert values["K3"] == 0 and values["A3"] == Fraction(7, 25)
    assert payload["meta"]["version"]


def test_profile_flavors(capsys):
    induced = _run_json(capsys, ["profile", "--t", "3", "--flavor", "induced", "C5"])
    vals = {v["type"]: Fraction(int(v["num"]), int(v["den"])) for v in induced["values"]}
    assert vals["P3"] == Fraction(1, 2) and vals["K3"] == 0
    labeled = _run_json(capsys, ["profile", "--t", "2", "--flavor", "labeled", "K2"])
    assert len(labeled["values"]) == 2
    spectral = _run_json(capsys, ["profile", "--t", "3", "--flavor", "spectral", "C5"])
    svals = {v["type"]: Fraction(int(v["num"]), int(v["den"])) for v in spectral["values"]}
    assert svals["A3"] == 1


def test_density_known_value(capsys):
    payload = _run_json(
        capsys,
        ["density", "--t", "4", "--quantum", "K4+A4", "tensor(M4, K4, K3, K3)"],
    )
    entry = payload["values"][0]
    assert (entry["num"], entry["den"]) == ("11411", "373248")
    assert entry["approx"] == pytest.approx(11411 / 373248)


def test_nested_profile_known_vector(capsys):
    payload = _run_json(capsys, ["nested-profile", "--t", "4", "tensor(K3, K3)"])
    values = {v["type"]: Fraction(int(v["num"]), int(v["den"])) for v in payload["values"]}
    assert values["K4"] == Fraction(17, 728)
    assert values["P4"] == Fraction(96, 728)
    assert sum(values.values()) == 1


def test_limit_with_factors_and_nested(capsys):
    payload = _run_json(
        capsys,
        ["limit", "--t", "4", "--quantum", "P4", "--factors", "K4",
         "--nested", "tensor(K3, K3)"],
    )
    entry = payload["values"][0]
    assert (entry["num"], entry["den"]) == ("1173", "5824")


def test_limit_requires_some_factor(capsys):
    code, out, err = _run(capsys, ["limit", "--t", "4", "--quantum", "P4"])
    assert code == 2
    assert "factor" in err


def test_estimate_is_seeded(capsys):
    argv = ["estimate", "--t", "3", "--samples", "20000", "--seed", "11", "C5"]
    first = _run_json(capsys, argv)
    second = _run_json(capsys, argv)
    assert first == second
    assert first["meta"]["seed"] == 11
    entry = first["values"][0]
    assert entry["num"] is None and entry["den"] is None
    assert "stderr" in entry


def test_bounds_payload(capsys):
    payload = _run_json(capsys, ["bounds", "--t", "5"])
    values = {v["type"]: (v["num"], v["den"]) for v in payload["values"]}
    assert values["self-nesting-lower"] == ("1", "26")
    assert values["extended-nesting-lower"] == ("24", "259")
    assert values["path-upper"] == ("15", "64")


def test_tables_pass_and_fail_codes(capsys, monkeypatch):
    code, out, err = _run(capsys, ["tables", "--which", "exoo4"])
    assert code == 0
    payload = json.loads(out)
    assert all(row["passed"] for row in payload["rows"])

    real = cli.reproduce_table

    def broken(which):
        reports = real(which)
        fake = []
        for r in reports:
            fake.append(r.__class__(row=r.row, computed=r.computed,
                                    expected=r.expected, passed=False,
                                    seconds=r.seconds))
        return fake

    monkeypatch.setattr(cli, "reproduce_table", broken)
    code, out, err = _run(capsys, ["tables", "--which", "exoo4"])
    assert code == 1


def test_convert_anchors(capsys):
    payload = _run_json(capsys, ["convert", "--graph6", "A_"])
    assert payload["n"] == 2 and payload["edges"] == [[0, 1]]
    encoded = _run_json(capsys, ["convert", "--encode", "K1"])
    assert encoded["graph6"] == "@"
    code, out, err = _run(capsys, ["convert", "--graph6", "A_", "--encode", "K2"])
    assert code == 2


def test_error_paths_exit_two(capsys):
    for argv in (
        ["profile", "--t", "7", "C5"],
        ["profile", "--t", "4", "frob(K3)"],
        ["density", "--t", "4", "--quantum", "K9", "C5"],
        ["tables", "--which", "nosuch"],
        ["profile", "--t", "4", "--budget", "5", "C30"],
    ):
        code, out, err = _run(capsys, argv)
        assert code == 2, argv
        assert "error" in err


def test_cache_round_trip(capsys, tmp_path):
    argv = ["profile", "--t", "3", "--cache", str(tmp_path), "C5"]
    code1, out1, err1 = _run(capsys, argv)
    files = list(tmp_path.glob("*.json"))
    assert code1 == 0 and len(files) == 1
    code2, out2, err2 = _run(capsys, argv)
    assert code2 == 0
    assert out1 == out2
    # format is presentation only: the cached payload feeds the table view
    code3, out3, err3 = _run(capsys, argv + ["--format", "table"])
    assert code3 == 0 and "K3" in out3 and not out3.startswith("{")
    assert len(list(tmp_path.glob("*.json"))) == 1


def test_cache_key_ignores_budget_but_not_math(capsys, tmp_path):
    base = ["profile", "--t", "3", "--cache", str(tmp_path), "C5"]
    _run(capsys, base)
    assert len(list(tmp_path.glob("*.json"))) == 1
    _run(capsys, base + ["--budget", "99999999"])
    assert len(list(tmp_path.glob("*.json"))) == 1
    _run(capsys, ["profile", "--t", "4", "--cache", str(tmp_path), "C5"])
    assert len(list(tmp_path.glob("*.json"))) == 2
    # canonical printing collapses spelling differences
    _run(capsys, ["profile", "--t", "3", "--cache", str(tmp_path), "  C5  "])
    assert len(list(tmp_path.glob("*.json"))) == 2


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        run_command(["--version"])
    assert exc.value.code == 0
    out = capsys.readouterr().out
    assert out.strip()
