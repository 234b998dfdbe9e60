"""Exact engine for quasitriangular and pre-Cartier structures on
finite-dimensional Hopf algebras."""

__version__ = "0.1.0"

from .scalars import FieldSpec, get_field, make_root, primitive_roots
from .families import FamilySpec, build
from .hopf import Elem, HopfData, Tensor, delta, counit, antipode, verify_bialgebra, verify_hopf

__all__ = [
    "FieldSpec",
    "get_field",
    "make_root",
    "primitive_roots",
    "FamilySpec",
    "build",
    "Elem",
    "HopfData",
    "Tensor",
    "delta",
    "counit",
    "antipode",
    "verify_bialgebra",
    "verify_hopf",
]
