"""Capacities of toric domains and the squeeze that pins the Lagrangian capacity.

For a convex or concave toric domain X with diagonal d the chain

    d <= c_P(X) <= c_L(X) <= gtilde_k(X)/k <= g_k(X)/k = cgh_k(X)/k <= d(k+n-1)/k

holds for every k, so c_L(X) = d.  Values that need holomorphic curves
(gtilde_k, g_k) are never counted here; they are reported as the exact
intervals the chain forces, with the hypotheses that make them valid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import domains as dm
from . import reeb
from .domains import DomainClass, ToricDomain
from .errors import Inconsistent, UnsupportedDomain
from .rational import Q, ExtRational, fmt

UNCONDITIONAL = "unconditional"
VIRTUAL = "assumes a virtual perturbation scheme for linearized contact homology"
STAR_SHAPED = "star-shaped"


@dataclass(frozen=True)
class CapacityReport:
    kind: str
    lower: ExtRational
    upper: ExtRational
    hypotheses: tuple[str, ...]
    k: int | None = None
    witness_orbit: reeb.ReebOrbit | None = None
    exact: bool = field(init=False)

    def __post_init__(self):
        if self.upper < self.lower:
            raise Inconsistent(f"{self.kind}: empty interval [{self.lower}, {self.upper}]")
        if not self.hypotheses:
            raise ValueError("every capacity report must state its hypotheses")
        object.__setattr__(self, "exact", self.lower == self.upper)

    @property
    def value(self) -> ExtRational:
        if not self.exact:
            raise ValueError(f"{self.kind} is only known up to [{self.lower}, {self.upper}]")
        return self.lower

    def scaled(self, alpha: Fraction) -> "CapacityReport":
        return CapacityReport(
            self.kind, self.lower * alpha, self.upper * alpha, self.hypotheses, self.k, None
        )

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "k": self.k,
            "lower": fmt(self.lower),
            "upper": fmt(self.upper),
            "exact": self.exact,
            "hypotheses": list(self.hypotheses),
        }
        if self.witness_orbit is not None:
            w = self.witness_orbit
            out["witness_orbit"] = {
                "axis": w.axis,
                "multiplicity": w.multiplicity,
                "action": fmt(w.action),
                "cz": w.cz,
            }
        return out


def _require_class(dom: ToricDomain) -> DomainClass:
    cls = dm.classify(dom)
    if cls is DomainClass.UNKNOWN:
        raise UnsupportedDomain(f"{dom} is neither convex nor concave")
    return cls


def _check_k(k: int) -> None:
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")


# -- Gutt-Hutchings ----------------------------------------------------------


def cgh_ncylinders(a, n: int, k: int) -> Fraction:
    _check_k(k)
    return Q(a) * (k + n - 1)


def cgh_ellipsoid(E: ToricDomain, k: int) -> Fraction:
    """k-th smallest element of {m * a_i}, cross-checked against the CZ grading."""
    _check_k(k)
    E = dm.as_ellipsoid(E)
    value = reeb.kth_action(E, k)
    if not reeb.nondegeneracy_report(E, value):
        n = E.n
        by_degree = reeb.min_action_in_degree(E, n - 1 + 2 * k)
        if by_degree is None or by_degree.action != value:
            raise Inconsistent(f"cgh_{k}({E}): spectrum gives {value}, CZ route {by_degree}")
    return value


def cgh_witness(E: ToricDomain, k: int) -> reeb.ReebOrbit:
    return reeb.enumerate_orbits(dm.as_ellipsoid(E), reeb.SpectrumQuery(max_count=k))[-1]


def _is_ellipsoidal(dom: ToricDomain) -> bool:
    try:
        dm.as_ellipsoid(dom)
    except dm.InvalidDomain:
        return False
    return True


def cgh(dom: ToricDomain, k: int) -> CapacityReport:
    """cgh_k as an exact value (ellipsoids, N(a)) or as monotonicity bounds."""
    _check_k(k)
    _require_class(dom)
    n = dom.n
    if _is_ellipsoidal(dom):
        v = cgh_ellipsoid(dom, k)
        return CapacityReport(
            "cgh", v, v, ("Reeb orbit realization on the ellipsoid boundary",), k,
            cgh_witness(dom, k),
        )
    if isinstance(dom.shape, dm.NCylinders):
        v = cgh_ncylinders(dom.shape.a, n, k)
        return CapacityReport("cgh", v, v, ("closed form a(k+n-1)",), k)
    d = dm.diagonal(dom)
    lower = d * math.ceil(Fraction(k, n))
    upper = cgh_ncylinders(d, n, k)
    return CapacityReport(
        "cgh", lower, upper, ("monotonicity: B(delta) in P(delta) in X in N(delta)",), k
    )


def cgh_bounds_toric(dom: ToricDomain, k: int) -> tuple[Fraction, Fraction]:
    r = cgh(dom, k)
    return r.lower, r.upper


def csh(dom: ToricDomain, k: int) -> CapacityReport:
    """S^1-equivariant SH capacity; coincides with cgh on star-shaped domains."""
    r = cgh(dom, k)
    return CapacityReport(
        "csh", r.lower, r.upper, (STAR_SHAPED,) + r.hypotheses, k, r.witness_orbit
    )


# -- cube and Lagrangian capacities -----------------------------------------


def c_P_toric(dom: ToricDomain) -> Fraction:
    _require_class(dom)
    return dm.diagonal(dom)


def c_P(dom: ToricDomain) -> CapacityReport:
    d = c_P_toric(dom)
    return CapacityReport(
        "cP", d, d,
        (
            "c_P >= delta: the cube P(delta) embeds by inclusion",
            "c_P <= delta: cited equality for convex/concave toric domains",
        ),
    )


def c_L(dom: ToricDomain) -> CapacityReport:
    cls = _require_class(dom)
    d = dm.diagonal(dom)
    if isinstance(dom.shape, dm.Ellipsoid):
        closed = 1 / sum(1 / ai for ai in dom.shape.a)
        if closed != d:
            raise Inconsistent(f"ellipsoid diagonal {d} != (sum 1/a_i)^-1 = {closed}")
    hyp = UNCONDITIONAL if (dom.n == 2 and cls.is_convex) or dom.n == 1 else VIRTUAL
    return CapacityReport("cL", d, d, (hyp,))


def g_and_gtilde_bounds(dom: ToricDomain, k: int) -> tuple[CapacityReport, CapacityReport]:
    """(g_k, gtilde_k): g_k = cgh_k, gtilde_k in [k*delta, cgh_k upper]."""
    base = cgh(dom, k)
    d = dm.diagonal(dom)
    g = CapacityReport("g", base.lower, base.upper, (VIRTUAL,) + base.hypotheses, k,
                       base.witness_orbit)
    gt = CapacityReport(
        "gtilde", k * d, base.upper,
        ("lower: c_L <= gtilde_k/k and c_L >= delta", "upper: gtilde_k <= g_k = cgh_k", VIRTUAL),
        k,
    )
    return g, gt


def capacity(dom: ToricDomain, kind: str, k: int | None = None) -> CapacityReport:
    """Dispatch by name: cgh, csh, g, gtilde need k; cP and cL do not."""
    kind = kind.lower()
    if kind in ("cgh", "csh", "g", "gtilde"):
        if k is None:
            raise ValueError(f"capacity {kind} needs k")
        if kind == "cgh":
            return cgh(dom, k)
        if kind == "csh":
            return csh(dom, k)
        g, gt = g_and_gtilde_bounds(dom, k)
        return g if kind == "g" else gt
    if kind in ("cp", "c_p"):
        return c_P(dom)
    if kind in ("cl", "c_l"):
        return c_L(dom)
    raise ValueError(f"unknown capacity kind {kind!r}")


# -- the squeeze ------------------------------------------------------------


@dataclass(frozen=True)
class ChainRow:
    k: int
    delta: Fraction
    cgh_lower: Fraction
    cgh_upper: Fraction
    ncyl_bound: Fraction

    @property
    def ratio_upper(self) -> Fraction:
        return self.cgh_upper / self.k

    @property
    def ratio_lower(self) -> Fraction:
        return self.cgh_lower / self.k

    @property
    def gap(self) -> Fraction:
        return self.ncyl_bound / self.k - self.delta


@dataclass(frozen=True)
class SqueezeReport:
    domain: ToricDomain
    delta: Fraction
    rows: tuple[ChainRow, ...]
    infimum: Fraction
    argmin_k: int
    hypotheses: tuple[str, ...]

    @property
    def attained(self) -> bool:
        return self.infimum == self.delta


def verify_squeeze(dom: ToricDomain, k_max: int) -> SqueezeReport:
    _check_k(k_max)
    _require_class(dom)
    n = dom.n
    d = dm.diagonal(dom)
    cP = c_P_toric(dom)
    cL = c_L(dom)
    if _is_ellipsoidal(dom):
        # one sort serves every k
        E = dm.as_ellipsoid(dom)
        spectrum = [o.action for o in reeb.enumerate_orbits(E, reeb.SpectrumQuery(max_count=k_max))]
        bounds = [(v, v) for v in spectrum]
    else:
        bounds = [cgh_bounds_toric(dom, k) for k in range(1, k_max + 1)]
    rows = []
    for k, (lo, hi) in enumerate(bounds, 1):
        row = ChainRow(k, d, lo, hi, cgh_ncylinders(d, n, k))
        checks = [
            (d <= cP, "delta <= c_P"),
            (cP <= cL.value, "c_P <= c_L"),
            (cL.value <= row.ratio_upper, "c_L <= cgh_k/k"),
            (k * d <= hi, "k*delta <= cgh_k"),
            (lo <= row.ncyl_bound, "cgh_k <= delta(k+n-1)"),
            (lo <= hi, "interval nonempty"),
        ]
        if lo == hi:
            checks.append((d <= row.ratio_lower, "delta <= cgh_k/k"))
        for ok, what in checks:
            if not ok:
                raise Inconsistent(f"squeeze fails at k={k} for {dom}: {what}")
        rows.append(row)
    best = min(rows, key=lambda r: (r.ratio_upper, r.k))
    return SqueezeReport(dom, d, tuple(rows), best.ratio_upper, best.k, cL.hypotheses)


def squeeze_horizon(E: ToricDomain) -> int:
    """Smallest K of the form T * sum(1/a_i) with T/a_i integral for all i.

    At that K exactly K orbits have action <= T, so cgh_K / K = delta.
    """
    E = dm.as_ellipsoid(E)
    a = E.shape.a
    T = Fraction(math.lcm(*(x.numerator for x in a)), math.gcd(*(x.denominator for x in a)))
    K = T * sum(1 / x for x in a)
    assert K.denominator == 1
    return int(K)


# -- proof constants ---------------------------------------------------------


@dataclass(frozen=True)
class CmConstants:
    a: Fraction
    eps: Fraction
    k: int
    s1: Fraction
    s2: Fraction
    s: Fraction
    delta: Fraction
    ell0: Fraction
    lhs: Fraction
    rhs: Fraction

    @property
    def equality(self) -> bool:
        return self.lhs == self.rhs


def cm_constants(a, eps, k: int) -> CmConstants:
    """Exponentials e^K of the neck-stretching constants, kept rational.

    s1 = 2, s2 = 1 + a/(eps k), s = max(s1, s2), delta = 1/s, ell0 = a/delta,
    and the final estimate (s/(s-1)) (a/k) <= a/k + eps is checked exactly.
    """
    a, eps = Q(a), Q(eps)
    if a <= 0 or eps <= 0:
        raise ValueError("a and eps must be positive")
    _check_k(k)
    s1 = Fraction(2)
    s2 = 1 + a / (eps * k)
    s = max(s1, s2)
    delta = 1 / s
    ell0 = a / delta
    lhs = s / (s - 1) * (a / k)
    rhs = a / k + eps
    if lhs > rhs:
        raise Inconsistent(f"(s/(s-1)) a/k = {lhs} exceeds a/k + eps = {rhs}")
    return CmConstants(a, eps, k, s1, s2, s, delta, ell0, lhs, rhs)


__all__ = [
    "CapacityReport",
    "ChainRow",
    "CmConstants",
    "SqueezeReport",
    "c_L",
    "c_P",
    "c_P_toric",
    "capacity",
    "cgh",
    "cgh_bounds_toric",
    "cgh_ellipsoid",
    "cgh_ncylinders",
    "cm_constants",
    "csh",
    "g_and_gtilde_bounds",
    "squeeze_horizon",
    "verify_squeeze",
]
