"""Exact algebra for Brauer tree algebras, the Green order of a stem, and polynomial functors."""

from .algebra import BasisAlgebra, LeftModule, cartan_matrix, check_algebra
from .brauer_tree import BrauerTree, star, stem, to_algebra
from .exactring import AtLeast, ExactMatrix, PadicScalar, FpScalar, Ring
from .green_order import GreenOrderElement, GreenOrderSpec
from .polyfunctor import PolyFunctorSpec, parse_functor
from .recollement import IdempotentSelection
from .report import VerificationReport, emit_json, run_suite

__version__ = "0.1.0"

__all__ = [
    "AtLeast",
    "BasisAlgebra",
    "BrauerTree",
    "ExactMatrix",
    "FpScalar",
    "GreenOrderElement",
    "GreenOrderSpec",
    "IdempotentSelection",
    "LeftModule",
    "PadicScalar",
    "PolyFunctorSpec",
    "Ring",
    "VerificationReport",
    "cartan_matrix",
    "check_algebra",
    "emit_json",
    "parse_functor",
    "run_suite",
    "star",
    "stem",
    "to_algebra",
]
