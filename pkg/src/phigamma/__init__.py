"""Exact arithmetic for mod-p (φ,Γ)-modules over Laurent-series fields."""

from .errors import PhiGammaError
from .field import GF, FieldElem, field_of_degree
from .linalg import SMat
from .series import LaurentSeries, PadicUnit, SeriesRing, ZpExponent
from .twisted import NewtonPolygon, TwistedPoly, newton_slopes, split_at_breakpoint
from .weil import SmoothCharacter, WeilParams, canonicalize

__version__ = "0.1.0"

__all__ = [
    "GF",
    "FieldElem",
    "LaurentSeries",
    "NewtonPolygon",
    "PadicUnit",
    "PhiGammaError",
    "SMat",
    "SeriesRing",
    "SmoothCharacter",
    "TwistedPoly",
    "WeilParams",
    "ZpExponent",
    "canonicalize",
    "field_of_degree",
    "newton_slopes",
    "split_at_breakpoint",
]
