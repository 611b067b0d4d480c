"""Exact renormalization calculus on the Hopf algebra of rooted trees."""

from .birkhoff import BirkhoffPair, birkhoff_decompose, locality_check
from .characters import LinearMap, beta_scalar, convolve, star_inverse, toy_character
from .coeff_series import L, PI2, TAU, U, LaurentSeries, SymPoly
from .config import Config
from .forests import Forest, Tree, parse_forest, parse_tree
from .hopf import HopfElement, antipode, coproduct
from .matrix_rep import CoidealBasis, TriMatrix, atkinson_factorize, coideal_closure, coproduct_matrix, psi

__version__ = "0.1.0"

__all__ = [
    "BirkhoffPair",
    "birkhoff_decompose",
    "locality_check",
    "LinearMap",
    "beta_scalar",
    "convolve",
    "star_inverse",
    "toy_character",
    "L",
    "PI2",
    "TAU",
    "U",
    "LaurentSeries",
    "SymPoly",
    "Config",
    "Forest",
    "Tree",
    "parse_forest",
    "parse_tree",
    "HopfElement",
    "antipode",
    "coproduct",
    "CoidealBasis",
    "TriMatrix",
    "atkinson_factorize",
    "coideal_closure",
    "coproduct_matrix",
    "psi",
]
