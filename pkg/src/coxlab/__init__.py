"""coxlab: exact twisted-Coxeter and root-system combinatorics."""

from .rootsys import (
    RootDatum,
    WeylElement,
    DiagramAut,
    ReflectionGroup,
    RootSystemError,
    build_root_system,
    build_product,
    diagram_automorphisms,
)
from .twisted import TwistedSetup, fixed_point_e, subsequence_data, construct_I

__all__ = [
    "RootDatum",
    "WeylElement",
    "DiagramAut",
    "ReflectionGroup",
    "RootSystemError",
    "build_root_system",
    "build_product",
    "diagram_automorphisms",
    "TwistedSetup",
    "fixed_point_e",
    "subsequence_data",
    "construct_I",
]
