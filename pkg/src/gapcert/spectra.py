"""Complex-length-spectrum datasets and their trace-formula expansion.

A dataset carries the hyperbolic volume, a length cutoff R, and the primitive
closed geodesics below R, each with length, holonomy angle (imaginary part of
the complex length), winding degree in H_1/torsion = Z, and multiplicity.

The file format is line oriented: a header of ``key = value`` lines followed
by one ``length holonomy degree multiplicity`` record per primitive.  A JSON
object with the same keys is accepted interchangeably.  Floats round-trip at
repr precision (17 significant digits).

``expand_powers`` turns primitives into all closed-geodesic terms of the
trace formula up to the cutoff: the k-th power of a primitive has length
k*l0, holonomy k*theta0 (mod 2 pi), degree k*n0, and carries the weight

    mult * c * l0 / (|1 - e^{Cl}| |1 - e^{-Cl}|)
        = mult * c * l0 / (4 (sinh^2(l/2) + sin^2(theta/2))),

with c = 2 when the dataset lists unoriented geodesics (each representing an
oriented pair; the cosine factors are even, so doubling is lossless unless a
geodesic is conjugate to its inverse).
"""

from __future__ import annotations

import io
import json
import math
import os
from dataclasses import dataclass, field, replace

MERGE_TOL = 1e-9

ORIENTATION_CONVENTIONS = ("oriented", "unoriented_double")


class DatasetError(ValueError):
    """Malformed or invalid spectrum dataset."""


@dataclass(frozen=True)
class PrimitiveGeodesic:
    length: float
    holonomy: float
    degree: int
    multiplicity: int = 1


@dataclass(frozen=True)
class GeodesicTerm:
    """One closed geodesic (a power of a primitive) ready for the trace formula."""

    length: float
    primitive_length: float
    holonomy: float
    degree: int
    weight: float


@dataclass(frozen=True)
class SpectrumDataset:
    manifold_name: str
    volume: float
    cutoff_R: float
    primitives: tuple[PrimitiveGeodesic, ...]
    orientation_convention: str = "unoriented_double"
    even_multiplicity: bool = False
    b1: int = 1
    torsion_order: int = 0
    provenance: str = ""
    systole_floor: float = 0.0

    def __post_init__(self) -> None:
        _validate_header(self)
        for i, p in enumerate(self.primitives):
            _validate_primitive(p, f"primitive {i}", self)


def _validate_header(d: SpectrumDataset) -> None:
    if d.volume <= 0:
        raise DatasetError(f"volume must be positive, got {d.volume}")
    if d.cutoff_R <= 0:
        raise DatasetError(f"cutoff_R must be positive, got {d.cutoff_R}")
    if d.b1 != 1:
        raise DatasetError(f"b1 must be 1 for this construction, got {d.b1}")
    if d.orientation_convention not in ORIENTATION_CONVENTIONS:
        raise DatasetError(
            f"orientation_convention must be one of {ORIENTATION_CONVENTIONS}, "
            f"got {d.orientation_convention!r}"
        )
    if d.systole_floor < 0:
        raise DatasetError("systole_floor must be >= 0")


def _validate_primitive(p: PrimitiveGeodesic, where: str, d: SpectrumDataset) -> None:
    if p.length <= 0:
        raise DatasetError(f"{where}: length must be positive, got {p.length}")
    if p.length <= 2.0 * d.systole_floor:
        raise DatasetError(
            f"{where}: length {p.length} is below twice the systole floor {d.systole_floor}"
        )
    if p.length > d.cutoff_R * (1 + 1e-12):
        raise DatasetError(
            f"{where}: length {p.length} exceeds the cutoff {d.cutoff_R}"
        )
    if not -math.pi < p.holonomy <= math.pi:
        raise DatasetError(
            f"{where}: holonomy must lie in (-pi, pi], got {p.holonomy}"
        )
    if p.multiplicity < 1:
        raise DatasetError(f"{where}: multiplicity must be >= 1, got {p.multiplicity}")


# -- parsing / rendering ------------------------------------------------------

_HEADER_TYPES = {
    "name": str,
    "volume": float,
    "cutoff_R": float,
    "orientation_convention": str,
    "even_multiplicity": bool,
    "b1": int,
    "torsion_order": int,
    "provenance": str,
    "systole_floor": float,
}


def _parse_bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("true", "1", "yes"):
        return True
    if t in ("false", "0", "no"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def parse_dataset(text: str) -> SpectrumDataset:
    """Parse the line-oriented format, or the JSON mirror if text is an object."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as e:
            raise DatasetError(f"invalid JSON dataset: {e}") from e
        return dataset_from_json(obj)

    header: dict = {}
    primitives: list[PrimitiveGeodesic] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" in line:
            key, _, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if key not in _HEADER_TYPES:
                raise DatasetError(f"line {lineno}: unknown header key {key!r}")
            caster = _HEADER_TYPES[key]
            try:
                header[key] = _parse_bool(value) if caster is bool else caster(value)
            except ValueError as e:
                raise DatasetError(f"line {lineno}: bad value for {key}: {e}") from e
        else:
            fields = line.split()
            if len(fields) != 4:
                raise DatasetError(
                    f"line {lineno}: expected 'length holonomy degree multiplicity', "
                    f"got {len(fields)} fields"
                )
            try:
                primitives.append(
                    PrimitiveGeodesic(
                        length=float(fields[0]),
                        holonomy=float(fields[1]),
                        degree=int(fields[2]),
                        multiplicity=int(fields[3]),
                    )
                )
            except ValueError as e:
                raise DatasetError(f"line {lineno}: bad record: {e}") from e

    for required in ("name", "volume", "cutoff_R"):
        if required not in header:
            raise DatasetError(f"missing required header key {required!r}")
    try:
        return SpectrumDataset(
            manifold_name=header["name"],
            volume=header["volume"],
            cutoff_R=header["cutoff_R"],
            orientation_convention=header.get("orientation_convention", "unoriented_double"),
            even_multiplicity=header.get("even_multiplicity", False),
            b1=header.get("b1", 1),
            torsion_order=header.get("torsion_order", 0),
            provenance=header.get("provenance", ""),
            systole_floor=header.get("systole_floor", 0.0),
            primitives=tuple(primitives),
        )
    except DatasetError:
        raise
    except TypeError as e:
        raise DatasetError(str(e)) from e


def load_dataset(source) -> SpectrumDataset:
    """Load from a path, byte/text stream, or bytes."""
    if isinstance(source, bytes):
        return parse_dataset(source.decode("utf-8"))
    if isinstance(source, (str, os.PathLike)):
        with open(source, "r", encoding="utf-8") as fh:
            return parse_dataset(fh.read())
    if isinstance(source, io.IOBase) or hasattr(source, "read"):
        data = source.read()
        if isinstance(data, bytes):
            data = data.decode("utf-8")
        return parse_dataset(data)
    raise TypeError(f"cannot load a dataset from {type(source)!r}")


def render_dataset(d: SpectrumDataset) -> str:
    lines = [
        f"name = {d.manifold_name}",
        f"volume = {d.volume!r}",
        f"cutoff_R = {d.cutoff_R!r}",
        f"orientation_convention = {d.orientation_convention}",
        f"even_multiplicity = {str(d.even_multiplicity).lower()}",
        f"b1 = {d.b1}",
        f"torsion_order = {d.torsion_order}",
    ]
    if d.provenance:
        lines.append(f"provenance = {d.provenance}")
    if d.systole_floor:
        lines.append(f"systole_floor = {d.systole_floor!r}")
    lines.append("")
    for p in d.primitives:
        lines.append(f"{p.length!r} {p.holonomy!r} {p.degree} {p.multiplicity}")
    return "\n".join(lines) + "\n"


def save_dataset(d: SpectrumDataset, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_dataset(d))


def dataset_to_json(d: SpectrumDataset) -> dict:
    return {
        "name": d.manifold_name,
        "volume": d.volume,
        "cutoff_R": d.cutoff_R,
        "orientation_convention": d.orientation_convention,
        "even_multiplicity": d.even_multiplicity,
        "b1": d.b1,
        "torsion_order": d.torsion_order,
        "provenance": d.provenance,
        "systole_floor": d.systole_floor,
        "primitives": [
            {
                "length": p.length,
                "holonomy": p.holonomy,
                "degree": p.degree,
                "multiplicity": p.multiplicity,
            }
            for p in d.primitives
        ],
    }


def dataset_from_json(obj: dict) -> SpectrumDataset:
    try:
        primitives = tuple(
            PrimitiveGeodesic(
                length=float(p["length"]),
                holonomy=float(p["holonomy"]),
                degree=int(p["degree"]),
                multiplicity=int(p.get("multiplicity", 1)),
            )
            for p in obj.get("primitives", [])
        )
        return SpectrumDataset(
            manifold_name=str(obj["name"]),
            volume=float(obj["volume"]),
            cutoff_R=float(obj["cutoff_R"]),
            orientation_convention=str(obj.get("orientation_convention", "unoriented_double")),
            even_multiplicity=bool(obj.get("even_multiplicity", False)),
            b1=int(obj.get("b1", 1)),
            torsion_order=int(obj.get("torsion_order", 0)),
            provenance=str(obj.get("provenance", "")),
            systole_floor=float(obj.get("systole_floor", 0.0)),
            primitives=primitives,
        )
    except KeyError as e:
        raise DatasetError(f"missing required JSON key {e.args[0]!r}") from e


# -- expansion ----------------------------------------------------------------


def modulus_product(length: float, holonomy: float) -> float:
    """|1 - e^{l + i theta}| * |1 - e^{-(l + i theta)}|, in overflow-safe form."""
    return 4.0 * (math.sinh(0.5 * length) ** 2 + math.sin(0.5 * holonomy) ** 2)


def wrap_angle(theta: float) -> float:
    """Reduce an angle to (-pi, pi]."""
    out = math.remainder(theta, 2.0 * math.pi)
    if out <= -math.pi:
        out += 2.0 * math.pi
    return out


def expand_powers(d: SpectrumDataset) -> list[GeodesicTerm]:
    """All trace-formula terms (powers of primitives) with length <= cutoff_R."""
    c = 2.0 if d.orientation_convention == "unoriented_double" else 1.0
    terms: list[GeodesicTerm] = []
    for p in d.primitives:
        k = 1
        while k * p.length <= d.cutoff_R * (1 + 1e-12):
            length = k * p.length
            hol = wrap_angle(k * p.holonomy)
            weight = p.multiplicity * c * p.length / modulus_product(length, hol)
            terms.append(
                GeodesicTerm(
                    length=length,
                    primitive_length=p.length,
                    holonomy=hol,
                    degree=k * p.degree,
                    weight=weight,
                )
            )
            k += 1
    return terms


# -- consistency --------------------------------------------------------------


@dataclass
class ConsistencyReport:
    dataset: SpectrumDataset
    warnings: list[str] = field(default_factory=list)


def validate_consistency(d: SpectrumDataset) -> ConsistencyReport:
    """Normalize ordering and merge duplicates; problems are warnings, not errors."""
    warnings: list[str] = []
    prims = list(d.primitives)

    lengths = [p.length for p in prims]
    if lengths != sorted(lengths):
        warnings.append("primitives were not sorted by length; sorted")
        prims.sort(key=lambda p: (p.length, p.holonomy, p.degree))

    merged: list[PrimitiveGeodesic] = []
    for p in prims:
        if (
            merged
            and abs(merged[-1].length - p.length) <= MERGE_TOL
            and abs(merged[-1].holonomy - p.holonomy) <= MERGE_TOL
            and merged[-1].degree == p.degree
        ):
            prev = merged.pop()
            merged.append(replace(prev, multiplicity=prev.multiplicity + p.multiplicity))
            warnings.append(
                f"merged duplicate primitive at length {p.length!r} "
                f"(multiplicities summed)"
            )
        else:
            merged.append(p)

    if not merged and d.cutoff_R > 0:
        warnings.append("no geodesics below cutoff")
    elif len(merged) >= 4:
        zero_frac = sum(1 for p in merged if p.degree == 0) / len(merged)
        if zero_frac > 0.5:
            warnings.append(
                f"{zero_frac:.0%} of primitives have winding degree 0; "
                "degree data may be missing"
            )

    out = d if not warnings else replace(d, primitives=tuple(merged))
    return ConsistencyReport(dataset=out, warnings=warnings)
