import json

import pytest

from spectrum_exporter.backend import BackendError, ScriptedBackend
from spectrum_exporter.jobs import ExportError, ExportJob, build_and_verify, export_spectrum
from tests.conftest import ARITHMETIC_WORD, scripted_spec


def make_job(tmp_path, **kw):
    defaults = dict(word=ARITHMETIC_WORD, genus=2, cutoff_R=3.0, out_dir=tmp_path)
    defaults.update(kw)
    return ExportJob(**defaults)


def test_job_rejects_small_cutoff(tmp_path):
    with pytest.raises(ExportError):
        make_job(tmp_path, cutoff_R=0.5)


def test_build_and_verify_collects_metadata(tmp_path, spec, gapcert_cli):
    job = make_job(tmp_path)
    info = build_and_verify(job, ScriptedBackend(spec))
    assert info.volume == 4.4153
    assert info.torsion == [5]
    assert info.census == "s861(3,1)"
    assert info.screen_report["passes"] is True
    assert info.monodromy.count("*") == len(ARITHMETIC_WORD) - 1


def test_screen_failure_blocks_export(tmp_path, spec, gapcert_cli):
    job = make_job(tmp_path, word="abcDe")   # not reverse palindromic
    with pytest.raises(ExportError, match="fails the primary screen"):
        build_and_verify(job, ScriptedBackend(spec))


def test_hyperbolicity_failure_blocks_export(tmp_path, gapcert_cli):
    job = make_job(tmp_path)
    backend = ScriptedBackend(scripted_spec(hyperbolic=False))
    with pytest.raises(BackendError, match="hyperbolicity not verified"):
        export_spectrum(job, backend)
    assert list(tmp_path.iterdir()) == []


def test_torsion_mismatch_is_hard_error(tmp_path, gapcert_cli):
    job = make_job(tmp_path)
    backend = ScriptedBackend(scripted_spec(homology=[7, 0]))
    with pytest.raises(ExportError, match="torsion mismatch"):
        build_and_verify(job, backend)


def test_bad_b1_is_hard_error(tmp_path, gapcert_cli):
    job = make_job(tmp_path)
    backend = ScriptedBackend(scripted_spec(homology=[5, 0, 0]))
    with pytest.raises(ExportError, match="b1"):
        build_and_verify(job, backend)


def test_export_writes_valid_dataset(tmp_path, spec, gapcert_cli):
    job = make_job(tmp_path)
    dataset, manifest = export_spectrum(job, ScriptedBackend(spec))

    text = dataset.read_text()
    assert f"name = {ARITHMETIC_WORD}_R3" in text
    assert "torsion_order = 5" in text
    assert "b1 = 1" in text
    assert "even_multiplicity = false" in text
    records = [
        line.split() for line in text.splitlines() if line and "=" not in line
    ]
    # cutoff filtered the 9.4 geodesic; lengths sorted ascending
    lengths = [float(r[0]) for r in records]
    assert lengths == sorted(lengths) and len(lengths) == 4
    degrees = {r[0][:4]: int(r[2]) for r in records}
    assert degrees["0.58"] == 1     # word "b"
    assert degrees["0.93"] == -1    # word "aB"
    assert degrees["1.31"] == 0     # word "a"
    assert degrees["2.05"] == 2     # word "bb"

    meta = json.loads(manifest.read_text())
    assert meta["winding_functional"] == [0, 1]
    assert meta["tool_versions"] == {"scripted": "1"}
    assert meta["primitive_count"] == 4
    assert meta["census"] == "s861(3,1)"


def test_exported_dataset_passes_primary_validation(tmp_path, spec, gapcert_cli):
    # export_spectrum already runs the validation subprocess; run it once more
    # explicitly so a regression in the writer surfaces here with the output
    import subprocess

    job = make_job(tmp_path)
    dataset, _ = export_spectrum(job, ScriptedBackend(spec))
    proc = subprocess.run(
        [gapcert_cli, "validate", "--spectrum", str(dataset)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert json.loads(proc.stdout)["ok"] is True


def test_export_without_screen(tmp_path, spec):
    job = make_job(tmp_path, screen_cmd=None)
    dataset, manifest = export_spectrum(job, ScriptedBackend(spec))
    assert dataset.exists() and manifest.exists()
    assert json.loads(manifest.read_text())["screen_report"] == {}
