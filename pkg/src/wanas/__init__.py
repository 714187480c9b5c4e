"""Exact tensor calculus and algebraic soliton classification on the
three-dimensional Lorentzian Lie groups."""

from .algebra import LieAlgebraSpec, LORENTZ
from .catalog import load_catalog
from .geometry import compute_tensors
from .poly import Poly, parse_poly
from .soliton import SolitonKind, soliton_decide, wan_for_kind
from .verify import verify_paper

__version__ = "0.1.0"

__all__ = [
    "LORENTZ",
    "LieAlgebraSpec",
    "Poly",
    "SolitonKind",
    "compute_tensors",
    "load_catalog",
    "parse_poly",
    "soliton_decide",
    "verify_paper",
    "wan_for_kind",
    "__version__",
]
