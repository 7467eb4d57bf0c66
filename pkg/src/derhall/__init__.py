"""Exact derived Hall numbers for bounded derived categories of type A quivers
over prime fields."""

from .dcat import DerivedCategory
from .hall import HallElement, assoc_check, hall_number, multiply, support_candidates
from .objects import DObject, ParseError, parse_object, universe
from .quiver import Quiver, linear_quiver, load_quiver

__version__ = "0.1.0"

__all__ = [
    "DObject",
    "DerivedCategory",
    "HallElement",
    "ParseError",
    "Quiver",
    "assoc_check",
    "hall_number",
    "linear_quiver",
    "load_quiver",
    "multiply",
    "parse_object",
    "support_candidates",
    "universe",
]
