"""CLI surface: flags, serialization, determinism, exit codes."""

import json

import numpy as np
import pytest

from tricorr.cli import EXIT_OK, EXIT_USAGE, fmt, main, parse_gamma


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_fmt_is_twelve_significant_digits():
    assert fmt(1 / 3) == "0.333333333333"
    assert fmt(None) == ""
    assert fmt(2.0) == "2"


def test_parse_gamma():
    assert parse_gamma("2+3i") == 2 + 3j
    assert parse_gamma("2") == 2 + 0j
    assert parse_gamma("-1.5-0.5i") == -1.5 - 0.5j
    with pytest.raises(Exception):
        parse_gamma("abc")


def test_cm_vacuum(capsys):
    code, out, _ = run(capsys, "cm", "--lambda", "0")
    assert code == EXIT_OK
    rows = out.strip().split("\n")
    assert rows[0] == "x_a,p_a,x_b,p_b,x_c,p_c"
    body = [r.split(",") for r in rows[1:]]
    assert [[float(x) for x in r] for r in body] == np.ndarray.tolist(np.eye(6) / 2)


def test_cm_gamma_does_not_change_output(capsys):
    _, base, _ = run(capsys, "cm", "--lambda", "0.5")
    _, disp, _ = run(capsys, "cm", "--lambda", "0.5", "--gamma", "2+3i")
    assert base == disp


def test_cm_full_loss_is_vacuum(capsys):
    _, lossy, _ = run(capsys, "cm", "--lambda", "0.5", "--scenario", "5", "--T", "0")
    _, vac, _ = run(capsys, "cm", "--lambda", "0")
    assert lossy == vac


def test_cm_json_round_trip(capsys):
    code, out, _ = run(capsys, "cm", "--lambda", "0.5", "--format", "json")
    assert code == EXIT_OK
    body = json.loads(out)
    assert body["schema_version"] == 1 and body["kind"] == "cm"
    M = np.array([[float(x) for x in row] for row in body["matrix"]])
    from tricorr import ideal_output_cm

    assert np.abs(M - ideal_output_cm(0.5)).max() <= 1e-12


def test_cm_via_transform_agrees(capsys):
    _, a, _ = run(capsys, "cm", "--lambda", "0.4", "--via", "transform")
    _, b, _ = run(capsys, "cm", "--lambda", "0.4", "--via", "closed-form")
    Ma = np.array([[float(x) for x in r.split(",")] for r in a.strip().split("\n")[1:]])
    Mb = np.array([[float(x) for x in r.split(",")] for r in b.strip().split("\n")[1:]])
    assert np.abs(Ma - Mb).max() <= 1e-10


def test_measures_below_threshold(capsys):
    code, out, _ = run(capsys, "measures", "--lambda", "0.5", "--scenario", "1", "--T", "0.4")
    assert code == EXIT_OK
    cells = {r.split(",")[0]: r.split(",")[1] for r in out.strip().split("\n")[1:]}
    assert cells["S:c->ab@s1"] == "0"
    assert cells["S:ab->c@s1"] == "0"
    assert cells["region"] == "II"


def test_measures_ideal_collective_only(capsys):
    _, out, _ = run(capsys, "measures", "--lambda", "0.5", "--ideal")
    cells = {r.split(",")[0]: r.split(",")[1] for r in out.strip().split("\n")[1:]}
    assert cells["S:a->b"] == "0"
    assert float(cells["S:c->ab"]) > 0
    assert cells["S:c->ab"] == cells["S:ab->c"]


def test_measures_zero_squeezing_all_zero(capsys):
    _, out, _ = run(capsys, "measures", "--lambda", "0", "--ideal")
    for line in out.strip().split("\n")[1:]:
        name, value = line.split(",")[:2]
        if name != "region":
            assert value == "0"
        else:
            assert value == "separable"


def test_measure_subset_flag(capsys):
    _, out, _ = run(capsys, "measures", "--lambda", "0.5", "--ideal", "--measures", "E:pair,S:k->ij")
    names = [r.split(",")[0] for r in out.strip().split("\n")[1:]]
    assert "E:a|b" in names and "S:c->ab" in names
    assert not any(n.startswith("E:c|ab") for n in names)


def test_sweep_writes_file_and_is_deterministic(tmp_path, capsys):
    f1, f2 = tmp_path / "a.csv", tmp_path / "b.csv"
    args = [
        "sweep", "--variable", "T", "--start", "0", "--stop", "1", "--step", "0.1",
        "--lambda", "0.5", "--scenario", "5", "--measures", "S:k->ij,E:1v2",
    ]
    assert main(args + ["--out", str(f1)]) == EXIT_OK
    assert main(args + ["--out", str(f2)]) == EXIT_OK
    assert f1.read_bytes() == f2.read_bytes()
    header = f1.read_text().split("\n")[0]
    assert header.startswith("T,reflectivity,")
    assert header.endswith("mismatches,region")


def test_thresholds_json(capsys):
    code, out, _ = run(capsys, "thresholds", "--lambdas", "0.5", "--scenarios", "1,5", "--format", "json")
    assert code == EXIT_OK
    rows = json.loads(out)["rows"]
    by_key = {(r["scenario"], r["direction"]): r for r in rows}
    assert float(by_key[(1, "ij->k")]["T_star"]) == pytest.approx(0.5, abs=1e-6)
    assert float(by_key[(5, "k->ij")]["T_star"]) == pytest.approx(0.6, abs=1e-6)


def test_usage_errors_exit_one(capsys):
    assert run(capsys, "cm")[0] == EXIT_USAGE  # missing --lambda/--r
    assert run(capsys, "cm", "--lambda", "0.5", "--r", "1")[0] == EXIT_USAGE
    assert run(capsys, "cm", "--lambda", "1.5")[0] == EXIT_USAGE  # domain
    assert run(capsys, "nope")[0] == EXIT_USAGE
    assert run(capsys, "measures", "--lambda", "0.5", "--measures", "Q:a|b")[0] == EXIT_USAGE
