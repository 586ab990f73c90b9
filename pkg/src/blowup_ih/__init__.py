"""Exact blown-up intersection cohomology of weighted simplicial complexes."""

from .algebra import GF, QQ, ZZ, parse_ring
from .blowup import BlowupComplex, blowup_complex, intersection_cohomology
from .complex_core import InputError, Perversity, WeightedComplex, cone, parse_perversity, suspension

__all__ = [
    "GF", "QQ", "ZZ", "parse_ring",
    "BlowupComplex", "blowup_complex", "intersection_cohomology",
    "InputError", "Perversity", "WeightedComplex", "cone", "parse_perversity", "suspension",
]
__version__ = "0.1.0"
