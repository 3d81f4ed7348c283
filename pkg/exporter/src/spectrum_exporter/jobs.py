"""Export pipeline: screened word -> verified manifold -> dataset file.

The primary toolkit is consulted only through its command-line interface
(word screening before the build, dataset validation after the write) and
through the documented dataset file format.
"""

from __future__ import annotations

import json
import subprocess
from dataclasses import dataclass, field
from pathlib import Path

from .backend import BackendError, wrap_angle
from .degrees import degree_of_word, winding_functional


class ExportError(RuntimeError):
    pass


@dataclass
class ExportJob:
    word: str
    genus: int
    cutoff_R: float
    out_dir: Path
    name: str = ""
    retriangulation_attempts: int = 8
    precision_digits: int = 15
    screen_cmd: str | None = "gapcert"   # None disables the external screen/validation
    orientation_convention: str = "unoriented_double"

    def __post_init__(self) -> None:
        if self.cutoff_R < 1:
            raise ExportError(f"cutoff_R must be >= 1, got {self.cutoff_R}")
        self.out_dir = Path(self.out_dir)
        if not self.name:
            self.name = f"{self.word}_R{self.cutoff_R:g}"


@dataclass
class BuildInfo:
    volume: float
    b1: int
    torsion: list[int]
    amphicheiral: bool | None
    census: str | None
    num_generators: int
    relators: list[str]
    hyperbolicity: str
    monodromy: str | None
    tool_versions: dict
    screen_report: dict = field(default_factory=dict)


def _run_cli(args: list[str]) -> subprocess.CompletedProcess:
    try:
        return subprocess.run(args, capture_output=True, text=True, timeout=600)
    except FileNotFoundError as e:
        raise ExportError(
            f"primary toolkit command {args[0]!r} not found on PATH"
        ) from e


def screen_word(job: ExportJob) -> dict:
    """Run the primary screen; the word must pass before any export."""
    proc = _run_cli(
        [job.screen_cmd, "word-check", "--word", job.word, "--genus", str(job.genus), "--json"]
    )
    if proc.returncode == 2:
        raise ExportError(f"screen rejected the word: {proc.stderr.strip()}")
    report = json.loads(proc.stdout)
    if not report.get("passes", False):
        raise ExportError(
            f"word {job.word!r} fails the primary screen: {report}"
        )
    return report


def build_and_verify(job: ExportJob, backend) -> BuildInfo:
    """Triangulate the bundle, verify hyperbolicity, collect invariants.

    Torsion reported by the geometry tool must agree with the primary
    screen's invariant factors; disagreement is a hard error.
    """
    screen_report = screen_word(job) if job.screen_cmd else {}

    backend.build_bundle(job.genus, job.word)
    ok, how = backend.verify_hyperbolic(job.retriangulation_attempts)
    if not ok:
        raise BackendError(f"hyperbolicity not verified for {job.word!r}: {how}")

    b1, torsion = backend.homology_summary()
    if b1 != 1:
        raise ExportError(f"tool reports b1 = {b1}, expected 1")
    if screen_report:
        expected = list(screen_report.get("torsion_factors", []))
        if sorted(expected) != torsion:
            raise ExportError(
                f"torsion mismatch: screen says {expected}, tool says {torsion}"
            )

    num_gens, relators = backend.fundamental_group()
    return BuildInfo(
        volume=backend.volume(),
        b1=b1,
        torsion=torsion,
        amphicheiral=backend.is_amphicheiral(),
        census=backend.census_name(),
        num_generators=num_gens,
        relators=relators,
        hyperbolicity=how,
        monodromy=getattr(backend, "monodromy", None),
        tool_versions=backend.tool_versions(),
        screen_report=screen_report,
    )


def render_dataset(job: ExportJob, info: BuildInfo, primitives) -> str:
    torsion_order = 1
    for d in info.torsion:
        torsion_order *= d
    lines = [
        f"name = {job.name}",
        f"volume = {info.volume!r}",
        f"cutoff_R = {float(job.cutoff_R)!r}",
        f"orientation_convention = {job.orientation_convention}",
        f"even_multiplicity = {'true' if info.amphicheiral else 'false'}",
        "b1 = 1",
        f"torsion_order = {torsion_order}",
        f"provenance = exported via {'+'.join(sorted(info.tool_versions))}; "
        f"hyperbolicity: {info.hyperbolicity}; census: {info.census or 'n/a'}",
        "",
    ]
    for length, hol, degree, mult in primitives:
        lines.append(f"{length!r} {hol!r} {degree} {mult}")
    return "\n".join(lines) + "\n"


def export_spectrum(job: ExportJob, backend, info: BuildInfo | None = None) -> tuple[Path, Path]:
    """Write the dataset and its manifest; returns (dataset path, manifest path)."""
    if info is None:
        info = build_and_verify(job, backend)

    phi = winding_functional(info.num_generators, info.relators)
    primitives = []
    for row in backend.length_spectrum(job.cutoff_R):
        if row.length <= 0:
            raise ExportError(f"tool reported nonpositive length {row.length}")
        primitives.append(
            (
                row.length,
                wrap_angle(row.holonomy),
                degree_of_word(row.word, phi),
                row.multiplicity,
            )
        )
    primitives.sort()

    job.out_dir.mkdir(parents=True, exist_ok=True)
    dataset_path = job.out_dir / f"{job.name}.lspec"
    dataset_path.write_text(render_dataset(job, info, primitives), encoding="utf-8")

    manifest = {
        "word": job.word,
        "genus": job.genus,
        "cutoff_R": job.cutoff_R,
        "name": job.name,
        "monodromy": info.monodromy,
        "tool_versions": info.tool_versions,
        "hyperbolicity": info.hyperbolicity,
        "precision_digits": job.precision_digits,
        "retriangulation_attempts": job.retriangulation_attempts,
        "volume": info.volume,
        "torsion": info.torsion,
        "amphicheiral": info.amphicheiral,
        "census": info.census,
        "winding_functional": phi,
        "primitive_count": len(primitives),
        "screen_report": info.screen_report,
    }
    manifest_path = job.out_dir / f"{job.name}.manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")

    if job.screen_cmd:
        proc = _run_cli([job.screen_cmd, "validate", "--spectrum", str(dataset_path)])
        if proc.returncode != 0:
            raise ExportError(
                f"exported dataset failed primary validation: {proc.stdout} {proc.stderr}"
            )
    return dataset_path, manifest_path
