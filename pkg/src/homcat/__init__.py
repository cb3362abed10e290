"""Exact computations with hom-Lie, hom-Poisson and hom-Gerstenhaber structures."""
from .errors import AxiomError, DimensionError, FormatError, HomcatError
from .exact_poly import Polynomial, PolySubstitution
from .multilinear import Multivector, QMatrix, QVec, StructureConstants
from .report import CheckReport, Witness

__version__ = "0.1.0"

__all__ = [
    "AxiomError", "CheckReport", "DimensionError", "FormatError", "HomcatError", "Multivector",
    "Polynomial", "PolySubstitution", "QMatrix", "QVec", "StructureConstants", "Witness",
]
