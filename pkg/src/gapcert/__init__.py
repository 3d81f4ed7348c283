"""gapcert: screened twist words and certified spectral-gap intervals."""

__version__ = "0.1.0"

from .certify import (
    CertResult,
    CircleModel,
    ManifoldModel,
    SweepConfig,
    certify_existence,
    certify_gap,
    delta_interval,
    j_sweep,
    j_value,
    optimize_coeffs,
)
from .homology import HomologyReport, ScreenReport, screen, word_action
from .spectra import (
    GeodesicTerm,
    PrimitiveGeodesic,
    SpectrumDataset,
    expand_powers,
    load_dataset,
    parse_dataset,
    validate_consistency,
)
from .testfunctions import BandTestFunction, ModulatedTestFunction, TestFunction
from .traceformula import (
    GroupRingSeries,
    circle_spectrum,
    circle_trace_check,
    eval_series,
    geometric_series,
    spectral_side,
)
from .words import TwistWord, is_reverse_palindromic, parse_word, random_reverse_palindromic, render_word

__all__ = [
    "BandTestFunction",
    "CertResult",
    "CircleModel",
    "GeodesicTerm",
    "GroupRingSeries",
    "HomologyReport",
    "ManifoldModel",
    "ModulatedTestFunction",
    "PrimitiveGeodesic",
    "ScreenReport",
    "SpectrumDataset",
    "SweepConfig",
    "TestFunction",
    "TwistWord",
    "certify_existence",
    "certify_gap",
    "circle_spectrum",
    "circle_trace_check",
    "delta_interval",
    "eval_series",
    "expand_powers",
    "geometric_series",
    "is_reverse_palindromic",
    "j_sweep",
    "j_value",
    "load_dataset",
    "optimize_coeffs",
    "parse_dataset",
    "parse_word",
    "random_reverse_palindromic",
    "render_word",
    "screen",
    "spectral_side",
    "validate_consistency",
    "word_action",
]
