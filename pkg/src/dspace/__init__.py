"""Finite decomposition spaces: truncated simplicial groupoids, their structural
axioms, incidence coalgebras and Möbius inversion with exact rationals."""

from .grpd import FiniteGroupoid, Functor, cardinality, homotopy_pullback, is_pullback_square
from .simplicial import (SemiSimplicialGroupoid, SimplicialGroupoid, SimplicialMap, axiom_check,
                         structure_report)
from .constructors import FiniteCategory, PartialMonoid, fat_nerve, nerve, nerve_partial
from .incidence import coalgebra, moebius, tightness, verify

__all__ = ["FiniteGroupoid", "Functor", "cardinality", "homotopy_pullback", "is_pullback_square",
           "SemiSimplicialGroupoid", "SimplicialGroupoid", "SimplicialMap", "axiom_check",
           "structure_report", "FiniteCategory", "PartialMonoid", "fat_nerve", "nerve",
           "nerve_partial", "coalgebra", "moebius", "tightness", "verify"]
