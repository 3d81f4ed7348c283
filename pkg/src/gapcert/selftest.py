"""Built-in verification suite: exact ground truths plus analytic identities.

Runs without any external data: the five torsion ground-truth words, the
reverse-palindromic classification, the circle trace identity on a parameter
grid, the Bloch cover decomposition, and Fourier-pair consistency of the test
functions against a Simpson-rule quadrature oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import homology, words
from .testfunctions import TestFunction
from .traceformula import circle_spectrum, circle_trace_check, spectral_side

TORSION_GROUND_TRUTH = [
    ("bcbeccadcd", 2, [13]),
    ("CeBCdcbCDaC", 2, [5]),
    ("dcbaBBcDDedcb", 2, [15]),
    ("DaCaEabcdeAeCeB", 2, [5]),
    ("EEBCFDfGCEAbDBEFCC", 3, [2, 10]),
]

PALINDROME_GROUND_TRUTH = [
    ("aBcDe", 2, True),
    ("abcDe", 2, False),
    ("aBcAe", 2, False),
]


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class SelftestReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append(Check(name=name, ok=bool(ok), detail=detail))


def _simpson(values: np.ndarray, dx: float) -> float:
    n = values.size
    if n % 2 == 0:
        raise ValueError("Simpson rule needs an odd sample count")
    w = np.ones(n)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return float(values @ w) * dx / 3.0


def run_selftest(
    poisson_tol: float = 1e-9,
    fourier_tol: float = 1e-8,
) -> SelftestReport:
    report = SelftestReport()

    # exact torsion ground truth
    for text, genus, expected in TORSION_GROUND_TRUTH:
        rep = homology.screen(words.parse_word(text, genus))
        got = rep.homology.torsion_factors
        report.add(
            f"torsion {text}",
            got == expected and rep.passes,
            f"expected {expected}, got {got}, screen pass={rep.passes}",
        )

    # reverse-palindromic classification
    for text, genus, expected in PALINDROME_GROUND_TRUTH:
        got = words.is_reverse_palindromic(words.parse_word(text, genus))
        report.add(f"reverse-palindromic {text}", got == expected, f"got {got}")

    # circle trace identity over a small grid
    worst = 0.0
    for length in (0.8, 1.0, 2.5):
        for theta in (0.0, 0.3, 0.77):
            for coeffs in ((1.0,), (1.0, -0.4, 0.25)):
                tf = TestFunction(1.3, coeffs)
                s, g = circle_trace_check(length, theta, tf)
                worst = max(worst, abs(s - g))
    report.add(
        "circle trace identity",
        worst < poisson_tol,
        f"max |spectral - geometric| = {worst:.3e} (tol {poisson_tol:g})",
    )

    # Bloch decomposition: n-fold cover = sum over the n twists
    worst = 0.0
    tf = TestFunction(1.1, (1.0, 0.3))
    for n in (2, 3):
        length = 1.0
        count = 4000
        cover = spectral_side(circle_spectrum(n * length, 0.0, n * count + n), tf)
        total = sum(
            spectral_side(circle_spectrum(length, j / n, count), tf) for j in range(n)
        )
        worst = max(worst, abs(cover - total))
    report.add(
        "Bloch cover decomposition",
        worst < poisson_tol,
        f"max deviation = {worst:.3e} (tol {poisson_tol:g})",
    )

    # Fourier pair: quadrature of int H(x) cos(tx) dx against fhat(t)^2
    tf = TestFunction(1.3, (1.0, -0.4, 0.25))
    xs = np.linspace(-tf.support, tf.support, 8193)
    hx = tf.value(xs)
    worst = 0.0
    for t in (0.0, 0.7, 2.0, 5.0):
        quad = _simpson(hx * np.cos(t * xs), xs[1] - xs[0])
        worst = max(worst, abs(quad - tf.spectral_weight(t)))
    report.add(
        "Fourier pair (quadrature)",
        worst < fourier_tol,
        f"max |quad - fhat^2| = {worst:.3e} (tol {fourier_tol:g})",
    )

    # transform nonnegativity on a coarse grid
    ts = np.arange(0.0, 30.0, 1e-2)
    min_val = float(np.min(tf.spectral_weight(ts)))
    report.add(
        "transform nonnegativity",
        min_val >= -1e-12,
        f"min Hhat on grid = {min_val:.3e}",
    )

    return report
