"""Backends wrapping the external triangulation/geometry tools.

Two implementations: the real one drives Twister + SnapPy (imported lazily so
the package works where SnapPy is absent), and a scripted one replays a JSON
description of a manifold for tests, demos and offline pipeline runs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass


class BackendError(RuntimeError):
    """External tool failed or refused; the job must not emit a dataset."""


@dataclass(frozen=True)
class GeodesicRow:
    """One primitive geodesic as reported by the tool."""

    length: float
    holonomy: float
    multiplicity: int
    word: str


# chain curve index (1..2g+1) -> Twister curve name on the standard surface:
# a_0, b_0, then alternating c_{k-1}, b_k, ending with a_{g-1}
def twister_chain_name(index: int, genus: int) -> str:
    n = 2 * genus + 1
    if not 1 <= index <= n:
        raise ValueError(f"chain index {index} out of range for genus {genus}")
    if index == 1:
        return "a_0"
    if index == n:
        return f"a_{genus - 1}"
    if index % 2 == 0:
        return f"b_{index // 2 - 1}"
    return f"c_{(index - 1) // 2 - 1}"


def twister_monodromy(word: str, genus: int) -> str:
    """Monodromy string for Twister: '*'-joined twists, '!' marks inverses."""
    parts = []
    for ch in word:
        idx = ord(ch.lower()) - ord("a") + 1
        name = twister_chain_name(idx, genus)
        parts.append(name if ch.islower() else "!" + name)
    return "*".join(parts)


class SnapPyBackend:
    """Drives snappy.twister for the bundle and SnapPy for geometry."""

    def __init__(self) -> None:
        try:
            import snappy  # noqa: F401
        except ImportError as e:
            raise BackendError(
                "SnapPy is not installed; install the 'snappy' extra to use this backend"
            ) from e
        self._snappy = __import__("snappy")
        self.manifold = None
        self._group = None

    def build_bundle(self, genus: int, word: str) -> None:
        import snappy.twister as twister

        surface = twister.Surface(f"S_{genus}")
        self.monodromy = twister_monodromy(word, genus)
        self.manifold = surface.bundle(monodromy=self.monodromy)

    def verify_hyperbolic(self, attempts: int) -> tuple[bool, str]:
        m = self.manifold
        for attempt in range(max(1, attempts)):
            try:
                ok = m.verify_hyperbolicity()[0]
                if ok:
                    return True, "verified (interval arithmetic)"
            except (AttributeError, RuntimeError):
                if m.solution_type() == "all tetrahedra positively oriented":
                    return True, "positively oriented solution (not rigorous)"
            m.randomize()
        return False, f"not verified after {attempts} retriangulations"

    def volume(self) -> float:
        return float(self.manifold.volume())

    def homology_summary(self) -> tuple[int, list[int]]:
        divisors = [int(d) for d in self.manifold.homology().elementary_divisors()]
        b1 = sum(1 for d in divisors if d == 0)
        torsion = sorted(d for d in divisors if d > 1)
        return b1, torsion

    def is_amphicheiral(self):
        try:
            return bool(self.manifold.symmetry_group().is_amphicheiral())
        except (RuntimeError, ValueError):
            return None

    def census_name(self):
        try:
            hits = self.manifold.identify()
            return str(hits[0]) if hits else None
        except (RuntimeError, ValueError):
            return None

    def fundamental_group(self) -> tuple[int, list[str]]:
        self._group = self.manifold.fundamental_group(
            simplify_presentation=True
        )
        return self._group.num_generators(), list(self._group.relators())

    def length_spectrum(self, cutoff: float) -> list[GeodesicRow]:
        rows = []
        for entry in self.manifold.length_spectrum(cutoff, include_words=True):
            z = complex(entry.length)
            rows.append(
                GeodesicRow(
                    length=z.real,
                    holonomy=z.imag,
                    multiplicity=int(entry.multiplicity),
                    word=str(entry.word),
                )
            )
        return rows

    def tool_versions(self) -> dict:
        return {"snappy": getattr(self._snappy, "__version__", "unknown")}


class ScriptedBackend:
    """Replays a JSON manifold description (tests, demos, offline runs).

    Expected keys: volume, homology (list of elementary divisors, 0 = Z
    factor), amphicheiral, census, num_generators, relators, geodesics
    (list of [length, holonomy, multiplicity, word]), and optionally
    hyperbolic (default true).
    """

    def __init__(self, spec: dict | str) -> None:
        if isinstance(spec, str):
            with open(spec, "r", encoding="utf-8") as fh:
                spec = json.load(fh)
        self.spec = spec
        self.monodromy = None

    def build_bundle(self, genus: int, word: str) -> None:
        self.monodromy = twister_monodromy(word, genus)

    def verify_hyperbolic(self, attempts: int) -> tuple[bool, str]:
        if self.spec.get("hyperbolic", True):
            return True, "scripted: hyperbolic"
        return False, "scripted: hyperbolicity not verified"

    def volume(self) -> float:
        return float(self.spec["volume"])

    def homology_summary(self) -> tuple[int, list[int]]:
        divisors = [int(d) for d in self.spec["homology"]]
        return sum(1 for d in divisors if d == 0), sorted(d for d in divisors if d > 1)

    def is_amphicheiral(self):
        return self.spec.get("amphicheiral")

    def census_name(self):
        return self.spec.get("census")

    def fundamental_group(self) -> tuple[int, list[str]]:
        return int(self.spec["num_generators"]), list(self.spec["relators"])

    def length_spectrum(self, cutoff: float) -> list[GeodesicRow]:
        rows = []
        for length, hol, mult, word in self.spec["geodesics"]:
            if length <= cutoff:
                rows.append(GeodesicRow(float(length), float(hol), int(mult), str(word)))
        return rows

    def tool_versions(self) -> dict:
        return {"scripted": "1"}


def make_backend(kind: str, config: str | None = None):
    if kind == "snappy":
        return SnapPyBackend()
    if kind == "scripted":
        if config is None:
            raise BackendError("the scripted backend needs a JSON description file")
        return ScriptedBackend(config)
    raise BackendError(f"unknown backend {kind!r}")


def wrap_angle(theta: float) -> float:
    out = math.remainder(theta, 2.0 * math.pi)
    if out <= -math.pi:
        out += 2.0 * math.pi
    return out
