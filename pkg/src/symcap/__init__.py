"""Exact symplectic capacities of toric domains."""

from .capacities import (
    c_L,
    c_P,
    capacity,
    cgh,
    cgh_ellipsoid,
    cm_constants,
    csh,
    verify_squeeze,
)
from .domains import (
    ToricDomain,
    ball,
    concave_staircase,
    convex_polytope,
    cylinder,
    ellipsoid,
    ncylinders,
    polydisk,
)
from .rational import INF, Q, fmt

__version__ = "0.1.0"

__all__ = [
    "INF",
    "Q",
    "ToricDomain",
    "ball",
    "c_L",
    "c_P",
    "capacity",
    "cgh",
    "cgh_ellipsoid",
    "cm_constants",
    "concave_staircase",
    "convex_polytope",
    "csh",
    "cylinder",
    "ellipsoid",
    "fmt",
    "ncylinders",
    "polydisk",
    "verify_squeeze",
]
