"""Exact Chow-ring computations: Rost numbers, Chow traces of Landweber-Novikov
operations, Schubert calculus on G/P and reduced power operations."""

from .catalog import builtin, disjoint_union, subvariety_by_divisors
from .rostnum import ln_trace, phi, phi_series, rdf_check, rost_number, screen_special_correspondence

__all__ = [
    "builtin",
    "disjoint_union",
    "subvariety_by_divisors",
    "ln_trace",
    "phi",
    "phi_series",
    "rdf_check",
    "rost_number",
    "screen_special_correspondence",
]
__version__ = "0.1.0"
