"""Toric domains described by their moment images.

Every shape handled here is *down-closed* in the positive orthant and is
stored as a finite union of convex pieces ``{x >= 0 : <v, x> <= c}`` with
``v >= 0``.  Convex shapes are a single piece; ``N(a)`` is the union of the
``n`` slabs ``x_i <= a``; a concave staircase is the union of the half-planes
below its boundary segments.  Containment and diagonals are then decided by
exact vertex arithmetic, never by sampling.

Supported ``includes(inner, outer)`` pairs (same dimension):

=====================  ===========================================
outer                  method
=====================  ===========================================
N(a)                   diagonal test ``delta(inner) <= a``
single convex piece    vertices + recession directions of each inner piece
concave staircase      upper-boundary comparison at every breakpoint
=====================  ===========================================

All pairs are decidable; ``Undecidable`` is raised only when vertex
enumeration would exceed ``_polytope.MAX_SUBSETS``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from . import _polytope
from .errors import DimensionError, InvalidDomain, ParseError, UnboundedDiagonal
from .rational import Q, fmt

ONE = Fraction(1)
ZERO = Fraction(0)


class DomainClass(enum.Enum):
    CONVEX = "convex"
    CONCAVE = "concave"
    BOTH = "both"
    UNKNOWN = "unknown"

    @property
    def is_convex(self) -> bool:
        return self in (DomainClass.CONVEX, DomainClass.BOTH)

    @property
    def is_concave(self) -> bool:
        return self in (DomainClass.CONCAVE, DomainClass.BOTH)


@dataclass(frozen=True)
class Ellipsoid:
    a: tuple[Fraction, ...]
    kind = "ellipsoid"


@dataclass(frozen=True)
class Ball:
    a: Fraction
    kind = "ball"


@dataclass(frozen=True)
class Cylinder:
    a: Fraction
    kind = "cylinder"


@dataclass(frozen=True)
class Polydisk:
    a: Fraction
    kind = "polydisk"


@dataclass(frozen=True)
class NCylinders:
    a: Fraction
    kind = "ncylinders"


@dataclass(frozen=True)
class ConvexPolytope:
    halfspaces: tuple[tuple[tuple[Fraction, ...], Fraction], ...]
    kind = "convex_polytope"


@dataclass(frozen=True)
class ConcaveStaircase2D:
    vertices: tuple[tuple[Fraction, Fraction], ...]
    kind = "concave_staircase"


Shape = Union[
    Ellipsoid, Ball, Cylinder, Polydisk, NCylinders, ConvexPolytope, ConcaveStaircase2D
]
KINDS = (
    "ellipsoid",
    "ball",
    "cylinder",
    "polydisk",
    "ncylinders",
    "convex_polytope",
    "concave_staircase",
)


@dataclass(frozen=True)
class ToricDomain:
    n: int
    shape: Shape

    @property
    def kind(self) -> str:
        return self.shape.kind

    def __str__(self) -> str:
        s = self.shape
        if isinstance(s, Ellipsoid):
            return "E(" + ", ".join(fmt(x) for x in s.a) + ")"
        if isinstance(s, (Ball, Cylinder, Polydisk, NCylinders)):
            letter = {"ball": "B", "cylinder": "Z", "polydisk": "P", "ncylinders": "N"}
            return f"{letter[s.kind]}({fmt(s.a)}), n={self.n}"
        if isinstance(s, ConvexPolytope):
            return f"ConvexPolytope[{len(s.halfspaces)} halfspaces], n={self.n}"
        return f"ConcaveStaircase[{len(s.vertices)} vertices]"


# -- construction -----------------------------------------------------------


def _positive(x, what: str) -> Fraction:
    q = Q(x)
    if q <= 0:
        raise InvalidDomain(f"{what} must be positive, got {fmt(q)}")
    return q


def _dim(n) -> int:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InvalidDomain(f"dimension n must be a positive integer, got {n!r}")
    return n


def ellipsoid(*a) -> ToricDomain:
    if len(a) == 1 and isinstance(a[0], (list, tuple)):
        a = tuple(a[0])
    if not a:
        raise InvalidDomain("an ellipsoid needs at least one parameter")
    params = tuple(sorted(_positive(x, "ellipsoid parameter") for x in a))
    return ToricDomain(len(params), Ellipsoid(params))


def ball(a, n: int) -> ToricDomain:
    return ToricDomain(_dim(n), Ball(_positive(a, "a")))


def cylinder(a, n: int) -> ToricDomain:
    return ToricDomain(_dim(n), Cylinder(_positive(a, "a")))


def polydisk(a, n: int) -> ToricDomain:
    return ToricDomain(_dim(n), Polydisk(_positive(a, "a")))


def ncylinders(a, n: int) -> ToricDomain:
    return ToricDomain(_dim(n), NCylinders(_positive(a, "a")))


def convex_polytope(halfspaces: Sequence, n: int | None = None) -> ToricDomain:
    if not halfspaces:
        raise InvalidDomain("a convex polytope needs at least one halfspace")
    hs = []
    for v, c in halfspaces:
        v = tuple(Q(x) for x in v)
        if any(x < 0 for x in v) or all(x == 0 for x in v):
            raise InvalidDomain("halfspace normals must be nonnegative and nonzero")
        hs.append((v, _positive(c, "halfspace bound")))
    dims = {len(v) for v, _ in hs}
    if len(dims) != 1 or (n is not None and dims != {n}):
        raise DimensionError("halfspace normals have inconsistent length")
    return ToricDomain(dims.pop(), ConvexPolytope(tuple(hs)))


def concave_staircase(vertices: Sequence) -> ToricDomain:
    pts = tuple((Q(x), Q(y)) for x, y in vertices)
    if len(pts) < 2:
        raise InvalidDomain("a staircase needs at least two boundary vertices")
    if pts[0][0] != 0 or pts[0][1] <= 0:
        raise InvalidDomain("staircase must start on the positive y-axis")
    if pts[-1][1] != 0 or pts[-1][0] <= 0:
        raise InvalidDomain("staircase must end on the positive x-axis")
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        if not (x1 > x0 and y1 < y0):
            raise InvalidDomain("staircase x must increase and y must decrease")
    slopes = [(y1 - y0) / (x1 - x0) for (x0, y0), (x1, y1) in zip(pts, pts[1:])]
    if any(s1 < s0 for s0, s1 in zip(slopes, slopes[1:])):
        raise InvalidDomain("staircase complement is not convex (slopes must not decrease)")
    return ToricDomain(2, ConcaveStaircase2D(pts))


def make_builtin(kind: str, params: dict) -> ToricDomain:
    """Build a shape from a kind name and a parameter mapping."""
    kind = kind.lower()
    if kind == "ellipsoid":
        a = params["a"]
        return ellipsoid(*(a if isinstance(a, (list, tuple)) else [a] * params.get("n", 1)))
    if kind in ("ball", "cylinder", "polydisk", "ncylinders"):
        return {"ball": ball, "cylinder": cylinder, "polydisk": polydisk, "ncylinders": ncylinders}[
            kind
        ](params["a"], params["n"])
    if kind == "convex_polytope":
        return convex_polytope(params["halfspaces"], params.get("n"))
    if kind == "concave_staircase":
        return concave_staircase(params["vertices"])
    raise InvalidDomain(f"unknown domain kind {kind!r}")


# -- conversions ------------------------------------------------------------


def as_ellipsoid(dom: ToricDomain) -> ToricDomain:
    """Ball(a) -> E(a,...,a); ellipsoids pass through."""
    s = dom.shape
    if isinstance(s, Ellipsoid):
        return dom
    if isinstance(s, Ball) or (dom.n == 1 and isinstance(s, (Cylinder, Polydisk, NCylinders))):
        return ellipsoid(*([s.a] * dom.n))
    raise InvalidDomain(f"{dom} is not an ellipsoid")


def as_polytope(dom: ToricDomain) -> ToricDomain:
    """Single-piece shapes as an explicit ConvexPolytope."""
    ps = pieces(dom)
    if len(ps) != 1:
        raise InvalidDomain(f"{dom} is not a single convex piece")
    return ToricDomain(dom.n, ConvexPolytope(tuple(ps[0])))


def pieces(dom: ToricDomain) -> list[list[tuple[tuple[Fraction, ...], Fraction]]]:
    n, s = dom.n, dom.shape

    def unit(i):
        return tuple(ONE if j == i else ZERO for j in range(n))

    if isinstance(s, Ellipsoid):
        return [[(tuple(ONE / ai for ai in s.a), ONE)]]
    if isinstance(s, Ball):
        return [[(tuple([ONE] * n), s.a)]]
    if isinstance(s, Cylinder):
        return [[(unit(0), s.a)]]
    if isinstance(s, Polydisk):
        return [[(unit(i), s.a) for i in range(n)]]
    if isinstance(s, NCylinders):
        return [[(unit(i), s.a)] for i in range(n)]
    if isinstance(s, ConvexPolytope):
        return [list(s.halfspaces)]
    out = []
    for (x0, y0), (x1, y1) in zip(s.vertices, s.vertices[1:]):
        # y <= y0 + m (x - x0), m < 0   <=>   -m x + y <= y0 - m x0
        m = (y1 - y0) / (x1 - x0)
        out.append([((-m, ONE), y0 - m * x0)])
    return out


def classify(dom: ToricDomain) -> DomainClass:
    if dom.n == 1:
        return DomainClass.BOTH
    s = dom.shape
    if isinstance(s, (Ellipsoid, Ball, Cylinder)):
        return DomainClass.BOTH
    if isinstance(s, (Polydisk, ConvexPolytope)):
        return DomainClass.CONVEX
    if isinstance(s, (NCylinders, ConcaveStaircase2D)):
        return DomainClass.CONCAVE
    return DomainClass.UNKNOWN


def is_bounded(dom: ToricDomain) -> bool:
    return all(not _polytope.free_coordinates(p, dom.n) for p in pieces(dom))


# -- queries ----------------------------------------------------------------


def contains_point(dom: ToricDomain, x: Sequence) -> bool:
    x = tuple(Q(xi) for xi in x)
    if len(x) != dom.n:
        raise DimensionError(f"point has {len(x)} coordinates, domain has n={dom.n}")
    if any(xi < 0 for xi in x):
        raise InvalidDomain("points must lie in the nonnegative orthant")
    return any(_polytope.satisfies(p, x) for p in pieces(dom))


def diagonal(dom: ToricDomain) -> Fraction:
    """max{a : (a,...,a) in Omega}."""
    best = None
    for p in pieces(dom):
        d = _polytope.diagonal(p)
        if d is None:
            raise UnboundedDiagonal(f"{dom} is unbounded along the diagonal")
        best = d if best is None else max(best, d)
    return best


def staircase_diagonal(dom: ToricDomain) -> Fraction:
    """Diagonal of a staircase by intersecting y = x with the boundary polyline."""
    s = dom.shape
    if not isinstance(s, ConcaveStaircase2D):
        raise InvalidDomain("not a staircase")
    for (x0, y0), (x1, y1) in zip(s.vertices, s.vertices[1:]):
        # y0 >= x0 on the way in, y1 <= x1 on the way out
        if y0 - x0 >= 0 >= y1 - x1:
            t = (y0 - x0) / ((y0 - x0) - (y1 - x1))
            return x0 + t * (x1 - x0)
    raise AssertionError("polyline from y-axis to x-axis must cross the diagonal")


def staircase_height(dom: ToricDomain, x: Fraction) -> Fraction | None:
    """Boundary height f(x), or None outside [0, x_last]."""
    verts = dom.shape.vertices
    if x < 0 or x > verts[-1][0]:
        return None
    for (x0, y0), (x1, y1) in zip(verts, verts[1:]):
        if x0 <= x <= x1:
            return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    raise AssertionError("unreachable")


def _piece_in_staircase(piece, stair: ToricDomain) -> bool:
    if _polytope.free_coordinates(piece, 2):
        return False
    verts = _polytope.vertices(piece, 2)
    xmax = max(v[0] for v in verts)
    if xmax > stair.shape.vertices[-1][0]:
        return False
    breaks = {v[0] for v in verts} | {x for x, _ in stair.shape.vertices if x <= xmax}
    for x in sorted(breaks):
        h = _polytope.max_height_2d(piece, x)
        if h is not None and h > staircase_height(stair, x):
            return False
    return True


def includes(inner: ToricDomain, outer: ToricDomain) -> bool:
    """Exact test ``inner ⊂ outer``; see the module docstring for the method matrix."""
    if inner.n != outer.n:
        raise DimensionError(f"dimensions differ: {inner.n} vs {outer.n}")
    if inner == outer:
        return True
    if isinstance(outer.shape, NCylinders):
        return diagonal(inner) <= outer.shape.a
    inner_pieces = pieces(inner)
    if isinstance(outer.shape, ConcaveStaircase2D):
        return all(_piece_in_staircase(p, outer) for p in inner_pieces)
    (target,) = pieces(outer)
    return all(_polytope.contained_in(p, target, inner.n) for p in inner_pieces)


def scale(dom: ToricDomain, alpha) -> ToricDomain:
    alpha = _positive(alpha, "scale factor")
    s = dom.shape
    if isinstance(s, Ellipsoid):
        return ToricDomain(dom.n, Ellipsoid(tuple(alpha * x for x in s.a)))
    if isinstance(s, (Ball, Cylinder, Polydisk, NCylinders)):
        return ToricDomain(dom.n, type(s)(alpha * s.a))
    if isinstance(s, ConvexPolytope):
        return ToricDomain(dom.n, ConvexPolytope(tuple((v, alpha * c) for v, c in s.halfspaces)))
    return ToricDomain(2, ConcaveStaircase2D(tuple((alpha * x, alpha * y) for x, y in s.vertices)))


# -- JSON -------------------------------------------------------------------


def to_json(dom: ToricDomain) -> dict:
    s = dom.shape
    if isinstance(s, Ellipsoid):
        shape = {"kind": s.kind, "a": [fmt(x) for x in s.a]}
    elif isinstance(s, ConvexPolytope):
        shape = {
            "kind": s.kind,
            "halfspaces": [{"v": [fmt(x) for x in v], "c": fmt(c)} for v, c in s.halfspaces],
        }
    elif isinstance(s, ConcaveStaircase2D):
        shape = {"kind": s.kind, "vertices": [[fmt(x), fmt(y)] for x, y in s.vertices]}
    else:
        shape = {"kind": s.kind, "a": fmt(s.a)}
    return {"n": dom.n, "shape": shape}


def from_json(obj) -> ToricDomain:
    """Parse ``{"n": int, "shape": {"kind": ..., ...}}``."""
    try:
        n = obj["n"]
        shape = obj["shape"]
        kind = shape["kind"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"domain JSON needs 'n' and 'shape.kind': {exc}") from exc
    if kind not in KINDS:
        raise ParseError(f"unknown domain kind {kind!r}; expected one of {', '.join(KINDS)}")
    try:
        if kind == "ellipsoid":
            a = shape["a"]
            dom = ellipsoid(*(a if isinstance(a, list) else [a] * n))
        elif kind == "convex_polytope":
            dom = convex_polytope([(h["v"], h["c"]) for h in shape["halfspaces"]], n)
        elif kind == "concave_staircase":
            dom = concave_staircase(shape["vertices"])
        else:
            dom = make_builtin(kind, {"a": shape["a"], "n": n})
    except KeyError as exc:
        raise ParseError(f"missing field {exc} for kind {kind!r}") from exc
    if dom.n != n:
        raise DimensionError(f"declared n={n} but shape has dimension {dom.n}")
    return dom
