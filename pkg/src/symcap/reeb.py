"""Reeb orbits on the boundary of an ellipsoid E(a_1, ..., a_n).

The simple orbits are the coordinate circles; the m-fold cover of the j-th
one has action ``m * a_j`` and Conley-Zehnder index
``n - 1 + 2 * sum_i floor(m * a_j / a_i)``.  Axes are 1-based throughout.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction

from .domains import Ellipsoid, ToricDomain
from .errors import EnumerationLimit, InvalidDomain
from .rational import Q

DEFAULT_MAX_ENUM = 10**6


@dataclass(frozen=True, order=True)
class ReebOrbit:
    action: Fraction
    axis: int
    multiplicity: int
    cz: int
    degenerate: bool
    good: bool = True

    @property
    def label(self) -> str:
        return f"gamma_{self.axis}^{self.multiplicity}"


@dataclass(frozen=True)
class SpectrumQuery:
    max_action: Fraction | None = None
    max_count: int | None = None

    def __post_init__(self):
        if (self.max_action is None) == (self.max_count is None):
            raise ValueError("set exactly one of max_action / max_count")
        if self.max_action is not None and self.max_action <= 0:
            raise ValueError("max_action must be positive")
        if self.max_count is not None and self.max_count < 1:
            raise ValueError("max_count must be positive")


def _params(E: ToricDomain) -> tuple[Fraction, ...]:
    if not isinstance(E.shape, Ellipsoid):
        raise InvalidDomain(f"Reeb spectra are implemented for ellipsoids only, got {E}")
    return E.shape.a


def max_enum() -> int:
    raw = os.environ.get("SYMCAP_MAX_ENUM")
    return int(raw) if raw else DEFAULT_MAX_ENUM


def cz_index(a: tuple[Fraction, ...], j: int, m: int) -> int:
    t = m * a[j - 1]
    return len(a) - 1 + 2 * sum(math.floor(t / ai) for ai in a)


def is_bad(cz: int, cz_simple: int) -> bool:
    """A cover is bad when its index parity differs from the simple orbit's."""
    return (cz - cz_simple) % 2 == 1


def orbit(E: ToricDomain, j: int, m: int) -> ReebOrbit:
    a = _params(E)
    if not 1 <= j <= len(a):
        raise ValueError(f"axis j must be in 1..{len(a)}, got {j}")
    if m < 1:
        raise ValueError(f"multiplicity must be >= 1, got {m}")
    t = m * a[j - 1]
    resonant = any((t / ai).denominator == 1 for i, ai in enumerate(a, 1) if i != j)
    cz = cz_index(a, j, m)
    good = not is_bad(cz, cz_index(a, j, 1))
    return ReebOrbit(t, j, m, cz, resonant, good)


def _count_below(a, cap: Fraction) -> int:
    return sum(math.floor(cap / ai) for ai in a)


def enumerate_orbits(E: ToricDomain, q: SpectrumQuery) -> list[ReebOrbit]:
    """Orbits sorted by (action, axis, multiplicity)."""
    a = _params(E)
    if q.max_count is not None:
        cap = q.max_count * a[0]
    else:
        cap = Q(q.max_action)
    total = _count_below(a, cap)
    limit = max_enum()
    if total > limit:
        raise EnumerationLimit(f"{total} orbits below the cap exceed SYMCAP_MAX_ENUM={limit}")
    out = [
        orbit(E, j, m)
        for j, aj in enumerate(a, 1)
        for m in range(1, math.floor(cap / aj) + 1)
    ]
    out.sort(key=lambda o: (o.action, o.axis, o.multiplicity))
    if q.max_count is not None:
        out = out[: q.max_count]
    return out


def orbits_with_cz(E: ToricDomain, d: int, action_cap) -> list[ReebOrbit]:
    return [o for o in enumerate_orbits(E, SpectrumQuery(max_action=Q(action_cap))) if o.cz == d]


def min_action_in_degree(E: ToricDomain, d: int) -> ReebOrbit | None:
    """Smallest-action orbit with cz == d, found axis by axis.

    cz is strictly increasing in the multiplicity on each axis, so a bisection
    per axis suffices; this route never sorts the spectrum.
    """
    a = _params(E)
    best = None
    for j in range(1, len(a) + 1):
        lo, hi = 1, 1
        while cz_index(a, j, hi) < d:
            hi *= 2
        while lo < hi:
            mid = (lo + hi) // 2
            if cz_index(a, j, mid) < d:
                lo = mid + 1
            else:
                hi = mid
        if cz_index(a, j, lo) == d:
            o = orbit(E, j, lo)
            if best is None or (o.action, o.axis) < (best.action, best.axis):
                best = o
    return best


def nondegeneracy_report(E: ToricDomain, action_cap) -> list[tuple[int, int, int]]:
    """Resonances (j, m, i): ``m * a_j / a_i`` is an integer, i != j, action <= cap."""
    a = _params(E)
    out = []
    for o in enumerate_orbits(E, SpectrumQuery(max_action=Q(action_cap))):
        for i, ai in enumerate(a, 1):
            if i != o.axis and (o.action / ai).denominator == 1:
                out.append((o.axis, o.multiplicity, i))
    return out


def kth_action(E: ToricDomain, k: int) -> Fraction:
    """k-th smallest element of the action multiset {m * a_i}."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return enumerate_orbits(E, SpectrumQuery(max_count=k))[-1].action
