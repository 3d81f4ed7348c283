from gapcert import homology
from gapcert.selftest import run_selftest


def test_selftest_passes_clean_build():
    report = run_selftest()
    assert report.passed
    names = [c.name for c in report.checks]
    assert sum("torsion" in n for n in names) == 5


def test_tightened_poisson_tolerance_reports_failure_not_crash():
    report = run_selftest(poisson_tol=1e-15)
    assert not report.passed
    failing = [c for c in report.checks if not c.ok]
    assert any("circle" in c.name or "Bloch" in c.name for c in failing)
    # the exact ground truths stay green; only tolerance checks trip
    assert all(c.ok for c in report.checks if "torsion" in c.name)


def test_perturbed_twist_convention_breaks_torsion_checks(monkeypatch):
    monkeypatch.setattr(homology, "TWIST_SIGN", 2)
    report = run_selftest()
    assert not report.passed
    assert any("torsion" in c.name and not c.ok for c in report.checks)
