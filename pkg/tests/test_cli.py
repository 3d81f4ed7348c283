import json
from importlib import resources

import pytest

from gapcert.cli import main


@pytest.fixture(scope="module")
def demo_path(tmp_path_factory):
    text = (resources.files("gapcert") / "data" / "bcbeccadcd_demo.lspec").read_text()
    p = tmp_path_factory.mktemp("data") / "demo.lspec"
    p.write_text(text)
    return str(p)


def test_word_check_pass_exit_zero(capsys):
    code = main(["word-check", "--word", "bcbeccadcd", "--genus", "2"])
    out = capsys.readouterr().out
    assert code == 0
    assert "[13]" in out
    assert "pass" in out


def test_word_check_screen_fail_exit_one(capsys):
    code = main(["word-check", "--word", "abcDe", "--genus", "2"])
    assert code == 1
    assert "FAIL" in capsys.readouterr().out


def test_word_check_empty_word_fails_cleanly(capsys):
    code = main(["word-check", "--word", "", "--genus", "2"])
    out = capsys.readouterr().out
    assert code == 1
    assert "unit-circle free      False" in out


def test_word_check_parse_error_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["word-check", "--word", "fgh", "--genus", "2"])
    assert exc.value.code == 2


def test_word_check_json_output(capsys):
    code = main(["word-check", "--word", "bcbeccadcd", "--genus", "2", "--json"])
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    assert data["torsion_factors"] == [13]


def test_word_search_deterministic(capsys):
    args = ["word-search", "--genus", "2", "--length", "8", "--count", "3", "--seed", "9"]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    second = capsys.readouterr().out
    assert first == second
    assert len(first.strip().splitlines()) == 3


def test_word_search_zero_count(capsys):
    assert main(["word-search", "--genus", "2", "--length", "8", "--count", "0"]) == 0
    assert capsys.readouterr().out.strip() == ""


def test_validate_demo(demo_path, capsys):
    assert main(["validate", "--spectrum", demo_path]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["ok"] is True


def test_certify_gap_zero_delta(demo_path, capsys):
    code = main([
        "certify", "--spectrum", demo_path, "--mode", "gap", "--delta", "0.0",
    ])
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    assert data["status"] == "certified"


def test_certify_exists_degenerate_band_usage_error(demo_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main([
            "certify", "--spectrum", demo_path, "--mode", "exists",
            "--band", "0.5,0.5", "--theta", "0.3",
        ])
    assert exc.value.code == 2


def test_certify_band_flag_parsing_error(demo_path):
    code = main([
        "certify", "--spectrum", demo_path, "--mode", "exists",
        "--band", "zzz", "--theta", "0.3",
    ])
    assert code == 2


def test_certify_missing_spectrum_file(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["certify", "--spectrum", "/no/such/file", "--mode", "delta"])
    assert exc.value.code == 2


def test_sweep_writes_csv(demo_path, tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    code = main([
        "sweep", "--spectrum", demo_path, "--theta", "0.3",
        "--tmax", "0.2", "--tstep", "0.05", "--theta-step", "0.03125",
        "--out", str(out),
    ])
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "t,theta,J"
    assert len(lines) == 6


def test_selftest_passes(capsys):
    assert main(["selftest"]) == 0
    out = capsys.readouterr().out
    assert "[PASS]" in out
    assert "FAIL" not in out
