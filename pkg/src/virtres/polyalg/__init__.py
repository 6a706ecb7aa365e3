"""Multigraded polynomial algebra over the rationals."""
from .grading import (GradedPolynomialRing, MultiDegree, PolynomialRing,
                      check_positive_grading)
from .ideal import (Ideal, eliminate, groebner_basis, krull_dimension, lattice_ideal,
                    reduce_polynomial, saturate, saturate_by_variables)
from .module import SubmoduleOfFree, minimal_generators, syzygy_module
from .orders import DEFAULT_ORDER, MonomialOrder
from .polynomial import Polynomial, parse_polynomial

__all__ = [
    "DEFAULT_ORDER", "GradedPolynomialRing", "Ideal", "MonomialOrder", "MultiDegree",
    "Polynomial", "PolynomialRing", "SubmoduleOfFree", "check_positive_grading",
    "eliminate", "groebner_basis", "krull_dimension", "lattice_ideal", "minimal_generators",
    "parse_polynomial", "reduce_polynomial", "saturate", "saturate_by_variables",
    "syzygy_module",
]
