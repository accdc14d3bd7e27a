import json

import pytest

from norming_lab.cli import main


@pytest.fixture
def space_file(tmp_path):
    p = tmp_path / "space.json"
    p.write_text(json.dumps({"kind": "polynomial", "vars": 1, "degree": 2}))
    return str(p)


@pytest.fixture
def points_csv(tmp_path):
    p = tmp_path / "pts.csv"
    p.write_text("# nodes\n-1\n0\n1\n")
    return str(p)


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_norming_subcommand(capsys, space_file, points_csv):
    code, out = run(capsys, ["norming", "--space", space_file,
                             "--points", points_csv, "--grid", "0.001"])
    assert code == 0
    report = json.loads(out)
    assert report["version"]
    assert report["config"]["grid_spacing"] == 0.001
    assert report["result"]["value"] == pytest.approx(1.25, abs=1e-5)


def test_not_norming_exit_code(capsys, space_file, tmp_path):
    p = tmp_path / "two.csv"
    p.write_text("-1\n1\n")
    code, out = run(capsys, ["norming", "--space", space_file,
                             "--points", str(p), "--grid", "0.01"])
    assert code == 2
    assert json.loads(out)["result"]["norming"] is False


def test_points_from_json(capsys, space_file, tmp_path):
    p = tmp_path / "pts.json"
    p.write_text(json.dumps({"points": [[-1.0], [0.0], [1.0]]}))
    code, out = run(capsys, ["lebesgue", "--space", space_file,
                             "--points", str(p), "--grid", "0.001"])
    assert code == 0
    assert json.loads(out)["result"]["lebesgue_constant"] == pytest.approx(1.25, abs=1e-5)


def test_span_subcommand(capsys, points_csv):
    code, out = run(capsys, ["span", "--points", points_csv, "--degree", "2"])
    assert code == 0
    assert json.loads(out)["result"]["span"] == pytest.approx(1.0)


def test_bound_subcommand(capsys):
    code, out = run(capsys, ["bound", "--name", "remez", "--d", "3", "--mu", "1.0"])
    assert code == 0
    assert json.loads(out)["result"]["value"] == pytest.approx(99.0)


def test_fekete_subcommand(capsys, tmp_path):
    sp = tmp_path / "s.json"
    sp.write_text(json.dumps({"kind": "polynomial", "vars": 1, "degree": 1}))
    pts = tmp_path / "p.csv"
    pts.write_text("-1\n0\n1\n")
    code, out = run(capsys, ["fekete", "--space", str(sp), "--points", str(pts)])
    assert code == 0
    res = json.loads(out)["result"]
    assert res["indices"] == [0, 2]
    assert res["abs_det"] == pytest.approx(2.0)


def test_audit_subcommand(capsys, space_file, points_csv):
    code, out = run(capsys, ["audit", "--space", space_file, "--points",
                             points_csv, "--bounds", "cor22", "--budget", "20001"])
    assert code == 0
    assert json.loads(out)["result"]["violations"] == 1


def test_lipschitz_subcommand(capsys, tmp_path):
    sp = tmp_path / "s.json"
    sp.write_text(json.dumps({"kind": "polynomial", "vars": 1, "degree": 1}))
    z1 = tmp_path / "z1.csv"
    z1.write_text("-1\n1\n")
    z2 = tmp_path / "z2.csv"
    z2.write_text("-0.9\n0.9\n")
    code, out = run(capsys, ["lipschitz", "--space", str(sp), "--z1", str(z1),
                             "--z2", str(z2), "--budget", "20001"])
    assert code == 0
    res = json.loads(out)["result"]
    assert res["satisfied"] is True
    assert res["lhs"] == pytest.approx(0.1, abs=1e-9)


def test_estimate_c_subcommand(capsys):
    code, out = run(capsys, ["estimate-c", "--trials", "5", "--seed", "1"])
    assert code == 0
    assert json.loads(out)["result"]["value"] >= 0.0


def test_tn_requires_c(capsys):
    code = main(["tn", "--m", "2", "--max-re-rate", "1.0",
                 "--len-i", "1.0", "--meas-z", "0.5"])
    assert code == 1


def test_missing_file_is_error(capsys, points_csv):
    code = main(["norming", "--space", "/nonexistent.json", "--points", points_csv])
    assert code == 1


def test_out_flag_writes_file(capsys, space_file, points_csv, tmp_path):
    dest = tmp_path / "report.json"
    code, out = run(capsys, ["norming", "--space", space_file, "--points",
                             points_csv, "--grid", "0.01", "--out", str(dest)])
    assert code == 0
    assert out == ""
    assert json.loads(dest.read_text())["result"]["norming"] is True


def test_threads_env_echoed(capsys, space_file, points_csv, monkeypatch):
    monkeypatch.setenv("NORMING_LAB_THREADS", "4")
    code, out = run(capsys, ["norming", "--space", space_file,
                             "--points", points_csv, "--grid", "0.01"])
    assert code == 0
    assert json.loads(out)["config"]["threads"] == 4
