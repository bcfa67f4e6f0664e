"""Exact Siegel-Veech constants, Masur-Veech volumes and Lyapunov sums for
strata of quadratic differentials."""

from .exactnum import PiValue
from .strata import AbelianStratum, BoundaryStratum, HypComponentSpec, HypKind, QuadStratum
from .volumes import VolumeDb, shipped_db
from .config import Configuration, SurfaceSurgery, Labeling
from .svcore import SVResult, sv_constants, sv_stratum_total

__version__ = "0.1.0"

__all__ = [
    "PiValue",
    "AbelianStratum",
    "BoundaryStratum",
    "HypComponentSpec",
    "HypKind",
    "QuadStratum",
    "VolumeDb",
    "shipped_db",
    "Configuration",
    "SurfaceSurgery",
    "Labeling",
    "SVResult",
    "sv_constants",
    "sv_stratum_total",
]
