from __future__ import annotations

import csv
import io
import json
from importlib import resources

import pytest

import polyiamond_bound as pb
from polyiamond_bound import cli

VERIFY_CHECK_NAMES = {
    "oracle_equivalence", "representation_agreement",
    "proposition_inequalities", "type_g_prime_symmetry",
    "observation_t_le_2g", "chain_t_le_2ghat", "dominance",
    "series_identities", "cubic_residuals", "extended_precision_lambda",
    "hat_ratio_growth", "fekete_below_upper_bound", "supermultiplicativity",
}


@pytest.fixture(scope="module")
def seed_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("seeds") / "counts.csv"
    assert cli.main(["count", "--n-max", "12", "--format", "csv",
                     "--out", str(path)]) == 0
    return path


@pytest.fixture(scope="module")
def loose_geometry(tmp_path_factory):
    # weaken the type-h forbidden set to the single W offset; the config
    # still validates but overcounts H from n = 3 on
    raw = json.loads(resources.files("polyiamond_bound")
                     .joinpath("data/default_geometry.json").read_text())
    for spec in raw:
        if spec["id"] == "h":
            spec["forbidden"] = [[-1, 0]]
    path = tmp_path_factory.mktemp("geometry") / "loose.json"
    path.write_text(json.dumps(raw))
    return path


def test_count_table(capsys):
    assert cli.main(["count", "--n-max", "3"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines() == ["n  T", "1  2", "2  3", "3  6"]


def test_count_csv(capsys):
    assert cli.main(["count", "--n-max", "3", "--format", "csv"]) == 0
    out = capsys.readouterr().out
    rows = list(csv.reader(io.StringIO(out)))
    assert rows == [["n", "T"], ["1", "2"], ["2", "3"], ["3", "6"]]


def test_count_json_both_representations(capsys):
    assert cli.main(["count", "--n-max", "3", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out) == [
        {"n": 1, "T": 2}, {"n": 2, "T": 3}, {"n": 3, "T": 6}]
    assert cli.main(["count", "--n-max", "3", "--representation", "hex",
                     "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out) == [
        {"n": 1, "T": 1}, {"n": 2, "T": 3}, {"n": 3, "T": 6}]


def test_marked_json(capsys):
    assert cli.main(["marked", "--n-max", "5", "--format", "json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert rows[0] == {"n": 0, "G": 1, "H": 1, "K": 1}
    assert rows[5] == {"n": 5, "G": 27, "H": 18, "K": 10}


def test_recurrence_hat_csv(capsys):
    assert cli.main(["recurrence", "--n-max", "5", "--format", "csv"]) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows[0] == ["n", "G_hat", "H_hat", "K_hat"]
    assert [r[1] for r in rows[1:]] == ["1", "1", "2", "5", "13", "36"]


def test_recurrence_seed_flow(seed_csv, t_tri12, capsys):
    assert cli.main(["recurrence", "--seed", str(seed_csv), "--cutoff", "10",
                     "--n-max", "12", "--format", "json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    hybrid = pb.u_sequence(t_tri12, 10, 12)
    assert rows[0] == {"n": 1, "U": 2, "ratio": ""}
    assert [r["U"] for r in rows] == list(hybrid.values[1:])
    assert cli.main(["recurrence", "--seed", str(seed_csv), "--cutoff", "10",
                     "--n-max", "12"]) == 0
    out = capsys.readouterr().out
    assert "depends on the cutoff n0=10" in out
    assert "not a certified bound" in out


def test_bound_json(seed_csv, capsys):
    assert cli.main(["bound", "--seed", str(seed_csv)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert float(report["lambda_upper"]) < 3.6108
    assert report["method"] == "nth_root" and report["n_used"] == 12
    assert cli.main(["bound", "--n-max", "10"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["n_used"] == 10
    assert float(report["residuals"]["cubic"]) < 1e-12


def test_bound_extended_table(capsys):
    assert cli.main(["bound", "--precision", "extended", "--format", "table",
                     "--n-max", "4"]) == 0
    out = capsys.readouterr().out
    assert "3.610718613276039" in out
    assert "residual_saddle_series" in out


def test_verify_table_ok(capsys):
    assert cli.main(["verify", "--n-max", "6"]) == 0
    out = capsys.readouterr().out
    assert "all 13 checks passed" in out
    for name in VERIFY_CHECK_NAMES:
        assert "ok    %s (" % name in out


def test_verify_json_ok(capsys):
    assert cli.main(["verify", "--n-max", "6", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["ok"] is True
    assert {c["name"] for c in payload["checks"]} == VERIFY_CHECK_NAMES
    assert all(c["ok"] for c in payload["checks"])


def test_verify_names_loose_geometry(loose_geometry, capsys):
    rc = cli.main(["verify", "--n-max", "6", "--geometry", str(loose_geometry)])
    out = capsys.readouterr().out
    assert rc == 1
    assert "FAIL  proposition_inequalities (" in out
    assert "verification FAILED:" in out


def test_argparse_error_exits_2():
    with pytest.raises(SystemExit) as exc:
        cli.main(["count", "--representation", "square"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main([])
    assert exc.value.code == 2


def test_size_cap_exits_3(capsys):
    assert cli.main(["count", "--n-max", "25"]) == 3
    assert "error:" in capsys.readouterr().err


def test_bad_seed_csv_exits_2(tmp_path, capsys):
    gap = tmp_path / "gap.csv"
    gap.write_text("n,T\n1,2\n2,3\n4,14\n")
    assert cli.main(["recurrence", "--seed", str(gap), "--n-max", "8"]) == 2
    assert "contiguously" in capsys.readouterr().err
    empty = tmp_path / "empty.csv"
    empty.write_text("n,T\n")
    assert cli.main(["recurrence", "--seed", str(empty), "--n-max", "8"]) == 2
    assert "no counts" in capsys.readouterr().err


def test_bad_geometry_exits_2(tmp_path, capsys):
    short = tmp_path / "short.json"
    short.write_text("[]")
    assert cli.main(["marked", "--n-max", "3", "--geometry", str(short)]) == 2
    notjson = tmp_path / "notjson.json"
    notjson.write_text("{oops")
    assert cli.main(["marked", "--n-max", "3", "--geometry", str(notjson)]) == 2
    assert cli.main(["marked", "--n-max", "3", "--geometry",
                     str(tmp_path / "missing.json")]) == 2
    capsys.readouterr()


def test_out_file_and_worker_determinism(tmp_path, capsys):
    one = tmp_path / "one.csv"
    two = tmp_path / "two.csv"
    assert cli.main(["count", "--n-max", "9", "--format", "csv",
                     "--out", str(one), "--workers", "1"]) == 0
    assert cli.main(["count", "--n-max", "9", "--format", "csv",
                     "--out", str(two), "--workers", "2"]) == 0
    assert one.read_bytes() == two.read_bytes()
    assert cli.main(["count", "--n-max", "9", "--format", "csv"]) == 0
    assert capsys.readouterr().out.encode() == one.read_bytes()
