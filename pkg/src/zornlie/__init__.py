"""Exact Zorn-type block realizations of g2, f4, e6, e7 and e8.

All arithmetic is over Q(i, sqrt2, sqrt3); identities are checked with zero
residual rather than to a tolerance.
"""
from .scalar import ExactScalar
from .field import FieldArray
from .composition import SplitOctonion, oct_mul, oct_conj, associator
from .jordan import JordanElement
from .g2 import G2Element, g2_bracket
from .exc import ExcElement, exc_bracket
from .e8 import E8Element, e8_bracket
from .algebras import NAMES, get as get_algebra
from .roots import RootVector, e6_root_list, table1_audit

__version__ = "0.1.0"

__all__ = [
    "ExactScalar", "FieldArray", "SplitOctonion", "oct_mul", "oct_conj", "associator",
    "JordanElement", "G2Element", "g2_bracket", "ExcElement", "exc_bracket",
    "E8Element", "e8_bracket", "NAMES", "get_algebra", "RootVector", "e6_root_list",
    "table1_audit", "__version__",
]
