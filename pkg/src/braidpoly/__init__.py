"""Exact knot-polynomial computations for closed braids and their satellites.

Submodules:

- ``polynomials``: exact Laurent / two-variable arithmetic, moments,
  Vandermonde reconstruction, serialization
- ``braids``: braid words, pure-braid generators, nested commutators
- ``homfly``: HOMFLY polynomial (Hecke-algebra trace engine and independent
  skein-tree oracle), Morton-Franks-Williams checks
- ``kauffman``: Dubrovnik polynomial of closed-braid diagrams, Kauffman F
  conversion, degree-bound checks
- ``satellite``: braided patterns and the 0-framed cabling operator
- ``burau``: reduced Burau representation and Alexander polynomials
- ``harness``: experiment orchestration and reports
"""

from .braids import BraidWord, parse_braid
from .polynomials import LaurentPoly, TwoVarPoly, MomentVector

__all__ = [
    "BraidWord",
    "parse_braid",
    "LaurentPoly",
    "TwoVarPoly",
    "MomentVector",
]

__version__ = "0.1.0"
