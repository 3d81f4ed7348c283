__version__ = "0.1.0"

from .backend import BackendError, GeodesicRow, ScriptedBackend, SnapPyBackend, make_backend
from .jobs import BuildInfo, ExportError, ExportJob, build_and_verify, export_spectrum

__all__ = [
    "BackendError",
    "BuildInfo",
    "ExportError",
    "ExportJob",
    "GeodesicRow",
    "ScriptedBackend",
    "SnapPyBackend",
    "build_and_verify",
    "export_spectrum",
    "make_backend",
]
