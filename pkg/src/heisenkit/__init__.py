"""Exact normal forms and structural checks for quantum generalized Heisenberg algebras."""

from .engine import QGHA, LimitExceeded, NormalElement, nmul, normal_form
from .families import FamilySpec, classify, to_qgha, translate_iso
from .freealg import FreeElement, Presentation, parse_element, span_equal
from .scalars import Scalar, TPoly

__all__ = [
    "FamilySpec",
    "FreeElement",
    "LimitExceeded",
    "NormalElement",
    "Presentation",
    "QGHA",
    "Scalar",
    "TPoly",
    "classify",
    "nmul",
    "normal_form",
    "parse_element",
    "span_equal",
    "to_qgha",
    "translate_iso",
]
