import json

from spectrum_exporter.cli import main
from tests.conftest import ARITHMETIC_WORD, scripted_spec


def write_spec(tmp_path, **overrides):
    path = tmp_path / "manifold.json"
    path.write_text(json.dumps(scripted_spec(**overrides)))
    return path


def test_cli_export_roundtrip(tmp_path, capsys, gapcert_cli):
    spec_path = write_spec(tmp_path)
    out = tmp_path / "exports"
    code = main([
        "--word", ARITHMETIC_WORD, "--genus", "2", "--cutoff", "3.0",
        "--out", str(out), "--backend", "scripted", "--backend-config", str(spec_path),
    ])
    assert code == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].endswith(".lspec")
    assert lines[1].endswith(".manifest.json")
    assert (out / f"{ARITHMETIC_WORD}_R3.lspec").exists()


def test_cli_failure_exit_code(tmp_path, capsys, gapcert_cli):
    spec_path = write_spec(tmp_path, hyperbolic=False)
    code = main([
        "--word", ARITHMETIC_WORD, "--genus", "2", "--cutoff", "3.0",
        "--out", str(tmp_path / "x"), "--backend", "scripted",
        "--backend-config", str(spec_path),
    ])
    assert code == 1
    assert "hyperbolicity" in capsys.readouterr().err


def test_cli_scripted_needs_config(tmp_path, capsys):
    code = main([
        "--word", "ab", "--genus", "2", "--cutoff", "2.0",
        "--out", str(tmp_path), "--backend", "scripted", "--no-screen",
    ])
    assert code == 1
