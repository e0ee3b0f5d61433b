"""Numerical radius computation, extreme-point classification, witnesses."""

from .classify import THEOREM_REGISTRY, Verdict, classify, pair_extreme
from .closedforms import (
    EllipseGeometry,
    TriangularForm2x2,
    WtFamily,
    radius_block,
    radius_collinear,
    radius_johnson,
    radius_wt_family,
    triangularize_wt,
)
from .errors import NuextError
from .radius import (
    RadiusReport,
    SweepConfig,
    is_normaloid,
    radius_sample,
    radius_sweep,
    radius_value,
    range_boundary,
)
from .witness import (
    VerificationReport,
    Witness,
    kadison_split,
    selfadjoint_split,
    shear_split,
    verify_witness,
)

__version__ = "0.1.0"

__all__ = [
    "THEOREM_REGISTRY",
    "Verdict",
    "classify",
    "pair_extreme",
    "EllipseGeometry",
    "TriangularForm2x2",
    "WtFamily",
    "radius_block",
    "radius_collinear",
    "radius_johnson",
    "radius_wt_family",
    "triangularize_wt",
    "NuextError",
    "RadiusReport",
    "SweepConfig",
    "is_normaloid",
    "radius_sample",
    "radius_sweep",
    "radius_value",
    "range_boundary",
    "VerificationReport",
    "Witness",
    "kadison_split",
    "selfadjoint_split",
    "shear_split",
    "verify_witness",
    "__version__",
]
