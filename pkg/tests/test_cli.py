import json
import subprocess
import sys

import pytest

from sixvertex.cli import run


def test_enumerate_count(capsys):
    assert run(["enumerate", "--size", "4", "--count-only", "--symmetric"]) == 0
    assert capsys.readouterr().out.strip() == "10"


def test_partition_det_plain(capsys):
    argv = ["partition", "--phase", "d", "--gamma", "1.0471975511965976", "--t", "0", "--n", "1",
            "--route", "det"]
    assert run(argv) == 0
    assert capsys.readouterr().out.strip() == "1.5"


def test_routes_agree(capsys):
    outs = {}
    for route in ("enum", "det", "norms"):
        assert run(["partition", "--phase", "af", "--gamma", "1.2", "--t", "0.3", "--n", "1-3",
                    "--route", route, "--format", "csv"]) == 0
        rows = capsys.readouterr().out.strip().splitlines()[1:]
        outs[route] = [float(r.split(",")[-1]) for r in rows]
    assert outs["enum"] == pytest.approx(outs["det"], rel=1e-14)
    assert outs["norms"] == pytest.approx(outs["det"], rel=1e-14)


def test_json_and_output_file(tmp_path):
    out = tmp_path / "n.json"
    assert run(["norms", "--phase", "f", "--gamma", "0.5", "--t", "1", "--family", "dw", "--kmax", "3",
                "--format", "json", "--output", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["family"] == "DW" and len(data["rows"]) == 4


def test_theta_and_asym(capsys):
    assert run(["theta", "--gamma", "1.2", "--z", "0"]) == 0
    lines = dict(l.split() for l in capsys.readouterr().out.splitlines())
    assert float(lines["theta1"]) == 0
    assert run(["asym", "--phase", "d", "--gamma", "pi/3", "--t", "0", "--n", "5"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert float(rep["predicted"]["F"]) == pytest.approx(9 / 8)


@pytest.mark.parametrize("argv", [
    ["partition", "--phase", "d", "--gamma", "1.0", "--t", "2", "--n", "1"],
    ["partition", "--phase", "x", "--gamma", "1.0", "--t", "0", "--n", "1"],
    ["enumerate", "--size", "20"],
    ["enumerate", "--bogus"],
    ["verify", "--only", "no_such_check"],
])
def test_usage_errors(argv, capsys):
    assert run(argv) == 2
    assert capsys.readouterr().err


def test_domain_message_names_invariant(capsys):
    run(["partition", "--phase", "f", "--gamma", "1.0", "--t", "0.5", "--n", "1"])
    assert "gamma < t" in capsys.readouterr().err


def test_env_precision(monkeypatch, capsys):
    monkeypatch.setenv("SIXVERTEX_PRECISION_BITS", "80")
    assert run(["partition", "--phase", "d", "--gamma", "pi/3", "--t", "0", "--n", "1",
                "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["params"]["precision_bits"] == 80
    monkeypatch.setenv("SIXVERTEX_PRECISION_BITS", "lots")
    assert run(["enumerate", "--size", "2"]) == 2


def test_verify_fast_subprocess():
    proc = subprocess.run([sys.executable, "-m", "sixvertex.cli", "verify", "--suite", "fast",
                           "--jobs", "1", "--only", "laplace", "--format", "json"],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert all(r["passed"] for r in json.loads(proc.stdout))
