"""Command line: reports, exit codes, determinism and figure output."""
import csv
import io
import json
import subprocess
import sys

import pytest

from lamspace import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_frame_example(capsys, fixtures_dir):
    code, out, _ = run(capsys, "frame", str(fixtures_dir / "one_leaf.json"), "--point", "1,0,0.3")
    assert code == 0
    rep = json.loads(out)
    assert rep["command"] == "frame" and rep["seed"] == 0
    res = rep["results"]
    assert res["T"] == pytest.approx(1.0, abs=1e-12)
    assert res["N"] == pytest.approx([1, 0, 0], abs=1e-12)
    assert res["r"] == pytest.approx([0, 0, 0.3], abs=1e-12)


def test_volume_example(capsys):
    code, out, _ = run(capsys, "volume", "--kappa", "0", "--b", "1", "--chi", "-2", "--lamlength", "3")
    assert code == 0
    res = json.loads(out)["results"]
    assert res["A"] == pytest.approx(15.566370614359172)
    assert res["V"] == pytest.approx(5.6887902047863905)


def test_csv_output(capsys, fixtures_dir):
    code, out, _ = run(capsys, "sample-surface", str(fixtures_dir / "five_leaves.json"),
                       "--time", "1.5", "--samples", "20", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 20


@pytest.mark.parametrize("argv", [
    ("qd", "--kind", "antidesitter", "--point", "0,0,1"),
    ("qd", "--lattice", "1,0", "0,1"),
    ("qd", "--kerr", "1,0.5", "--point", "0.79,0.1,0.2"),
])
def test_other_verbs(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert json.loads(out)["command"] == argv[0]


@pytest.mark.parametrize("name", ["empty.json", "one_leaf.json", "five_leaves.json", "half_plane.json", "axis.json"])
def test_valid_corpus(capsys, fixtures_dir, name):
    code, out, _ = run(capsys, "validate", str(fixtures_dir / name))
    assert code == 0
    assert json.loads(out)["results"]["valid"] is True


def test_spectra_axis(capsys, fixtures_dir):
    code, out, _ = run(capsys, "spectra", str(fixtures_dir / "axis.json"),
                       "--gamma", "2.718281828459045,0,0,0.36787944117144233")
    assert code == 0
    (row,) = json.loads(out)["results"]["elements"]
    assert row["ell"] == pytest.approx(2.0)
    assert row["antiDeSitter"]["em"] == pytest.approx(0.0, abs=1e-12)


def test_invalid_corpus(capsys, fixtures_dir):
    files = sorted((fixtures_dir / "invalid").glob("*.json"))
    assert len(files) >= 9
    for f in files:
        code, out, err = run(capsys, "validate", str(f))
        assert code == 2, f.name
        assert out == "" and err.strip()


def test_usage_errors(capsys, fixtures_dir, tmp_path):
    assert run(capsys, "frame", str(fixtures_dir / "one_leaf.json"))[0] == 2
    assert run(capsys, "frame", str(fixtures_dir / "one_leaf.json"), "--point", "1,x,0")[0] == 2
    assert run(capsys, "frame", str(fixtures_dir / "one_leaf.json"), "--point", "0,0,0.25")[0] == 2
    assert run(capsys, "validate", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "volume", "--kappa", "-1", "--b", "3", "--chi", "-2", "--lamlength", "0")[0] == 2
    assert run(capsys, "nonsense")[0] == 2


def test_verify_exit_codes(capsys, fixtures_dir):
    code, out, _ = run(capsys, "verify", "--suite", "cocycle", "--samples", "50")
    assert code == 0 and json.loads(out)["results"]
    # the completion suite carries the Klein-chart gap check, which fails
    code, out, _ = run(capsys, "verify", str(fixtures_dir / "one_leaf.json"), "--suite", "completion", "--samples", "20")
    assert code == 1


def _verify_bytes(fixtures_dir, seed):
    cmd = [sys.executable, "-m", "lamspace.cli", "verify", str(fixtures_dir / "five_leaves.json"),
           "--suite", "pullback", "--kind", "desitter", "--samples", "30", "--seed", str(seed)]
    return subprocess.run(cmd, capture_output=True, check=True).stdout


def test_verify_deterministic(fixtures_dir):
    a = _verify_bytes(fixtures_dir, 11)
    b = _verify_bytes(fixtures_dir, 11)
    assert a == b and a
    assert _verify_bytes(fixtures_dir, 12) != a


def test_out_directory(capsys, fixtures_dir, tmp_path):
    out = tmp_path / "rep"
    code, text, _ = run(capsys, "develop", str(fixtures_dir / "five_leaves.json"), "--target", "hyperbolic",
                        "--samples", "15", "--out", str(out))
    assert code == 0
    assert json.loads((out / "report.json").read_text()) == json.loads(text)
    assert (out / "report.csv").exists()
    pngs = sorted(out.glob("*.png"))
    assert pngs
    for p in pngs:
        assert p.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    code, _, _ = run(capsys, "tree", str(fixtures_dir / "five_leaves.json"), "--out", str(tmp_path / "t"))
    assert code == 0 and list((tmp_path / "t").glob("*.png"))


def test_console_script_help():
    r = subprocess.run([sys.executable, "-m", "lamspace.cli", "--help"], capture_output=True, text=True)
    assert r.returncode == 0 and "verify" in r.stdout
