"""Exact computations with Hermitian surfaces in PG(3, q^2)."""

__version__ = "0.1.0"

from .field import FieldCtx, FieldElement
from .projspace import ProjectiveSpace, ProjPoint, ProjLine, ProjPlane, Projectivity
from .forms import HomogeneousForm, TernaryForm, BinaryForm, random_form
from .hermitian import HermitianMatrix, HermitianSurface, LineClass, canonical_surface

__all__ = [
    "FieldCtx", "FieldElement", "ProjectiveSpace", "ProjPoint", "ProjLine", "ProjPlane",
    "Projectivity", "HomogeneousForm", "TernaryForm", "BinaryForm", "random_form",
    "HermitianMatrix", "HermitianSurface", "LineClass", "canonical_surface",
]
