"""Integer index arithmetic for punctured holomorphic curves.

Indices are plain integers and every Chern number or CZ index is taken with
respect to one implicit trivialization supplied by the caller.

Virtual dimensions here are for moduli spaces in a cobordism.  For moduli in a
symplectization the caller subtracts 1 for the R-translation quotient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import (
    DegeneratePath,
    InconsistentData,
    InvalidWinding,
    IrrationalEigenvalue,
)
from .rational import Q


@dataclass(frozen=True)
class CurveSetup:
    target_n: int
    genus: int = 0
    cz_positive: tuple[int, ...] = ()
    cz_negative: tuple[int, ...] = ()
    c1_tau: int = 0
    num_even_punctures: int = 0

    def __post_init__(self):
        object.__setattr__(self, "cz_positive", tuple(self.cz_positive))
        object.__setattr__(self, "cz_negative", tuple(self.cz_negative))
        if self.target_n < 1:
            raise ValueError("target_n must be positive")
        if self.genus < 0 or self.num_even_punctures < 0:
            raise ValueError("genus and even puncture count must be nonnegative")
        if not self.cz_positive:
            raise ValueError("an asymptotically cylindrical curve needs a positive puncture")
        if self.num_even_punctures > self.num_punctures:
            raise ValueError("more even punctures than punctures")

    @property
    def num_punctures(self) -> int:
        return len(self.cz_positive) + len(self.cz_negative)

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - self.num_punctures


@dataclass(frozen=True)
class WindingData:
    alpha_minus: int
    alpha_plus: int

    @property
    def parity(self) -> int:
        return self.alpha_plus - self.alpha_minus


@dataclass(frozen=True)
class TransversalityVerdict:
    injective: bool
    surjective: bool
    conclusive: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "conclusive", self.injective or self.surjective)

    def describe(self) -> str:
        if self.injective and self.surjective:
            return "injective and surjective"
        if self.surjective:
            return "surjective"
        if self.injective:
            return "injective"
        return "inconclusive"


def fredholm_index(s: CurveSetup) -> int:
    """Punctured Riemann-Roch: n*chi + 2*c1 + sum cz+ - sum cz-."""
    return (
        s.target_n * s.euler_characteristic
        + 2 * s.c1_tau
        + sum(s.cz_positive)
        - sum(s.cz_negative)
    )


def virtual_dim_tangency(s: CurveSetup, k: int = 0) -> int:
    """Virtual dimension of genus-0 curves, with contact order k at a point when k >= 1."""
    if k < 0:
        raise ValueError("tangency order must be nonnegative")
    p = s.num_punctures
    dim = (s.target_n - 3) * (2 - p) + s.c1_tau + sum(s.cz_positive) - sum(s.cz_negative)
    if k >= 1:
        dim -= 2 * s.target_n + 2 * k - 4
    return dim


def cz_from_winding(w: WindingData) -> int:
    p = w.parity
    if p not in (0, 1):
        raise InvalidWinding(f"parity alpha_+ - alpha_- must be 0 or 1, got {p}")
    cz = 2 * w.alpha_minus + p
    assert cz == 2 * w.alpha_plus - p
    return cz


def adjusted_chern_rank1(ind: int, genus: int, num_even: int) -> Fraction:
    num = ind - 2 - 2 * genus + num_even
    if num % 2:
        raise InconsistentData(
            f"ind - 2 - 2g + #even = {num} is odd; rank-1 data cannot satisfy 2*c1 = {num}"
        )
    return Fraction(num, 2)


def wendl_criterion(ind: int, c1_adj) -> TransversalityVerdict:
    return TransversalityVerdict(
        injective=ind <= 0 and c1_adj < 0,
        surjective=ind >= 0 and c1_adj < ind,
    )


def genus0_odd_criterion(ind: int) -> TransversalityVerdict:
    """Verdict for genus 0 with only odd punctures.

    Such rank-1 data forces an even index, so an odd ``ind`` is rejected.
    """
    if ind % 2:
        raise InconsistentData(f"genus 0 with no even punctures forces an even index, got {ind}")
    return TransversalityVerdict(injective=ind <= 0, surjective=ind >= 0)


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def gutt_cz_ratio(r, signature: int) -> int:
    """CZ index of t -> exp(t J0 S) on [0, T] given r = sqrt(det S) * T / (2 pi).

    Returns 0 for signature 0, else ``(1/2 + floor(r)) * signature``.
    """
    if signature not in (-2, 0, 2):
        raise ValueError("signature of a nondegenerate 2x2 matrix is -2, 0 or 2")
    if signature == 0:
        return 0
    r = Q(r)
    if r.denominator == 1:
        raise DegeneratePath(f"r = {r} is an integer: exp(T J0 S) = I")
    return (1 + 2 * math.floor(r)) * signature // 2


def gutt_cz(eigen1, eigen2, signature: int, T) -> int:
    """Same formula with the eigenvalues given in units of 2*pi.

    Writing S = 2*pi*S', the 2*pi cancels and r = sqrt(eigen1 * eigen2) * T
    where eigen1, eigen2 are the eigenvalues of S'.
    """
    eigen1, eigen2, T = Q(eigen1), Q(eigen2), Q(T)
    if T <= 0:
        raise ValueError("T must be positive")
    if eigen1 == 0 or eigen2 == 0:
        raise ValueError("S must be nondegenerate")
    if signature == 0:
        return 0
    if eigen1 * eigen2 < 0:
        raise ValueError("eigenvalues of opposite sign have signature 0")
    root = _rational_sqrt(eigen1 * eigen2)
    if root is None:
        raise IrrationalEigenvalue(f"sqrt({eigen1 * eigen2}) is irrational")
    return gutt_cz_ratio(root * T, signature)


def normal_cz_ellipsoid(a1, a_next, m: int) -> int:
    """Normal CZ index of the m-fold short orbit inside E(..., a_next).

    S = (2 pi / a_next) * I over a period m * a1, so r = m * a1 / a_next.
    """
    return gutt_cz_ratio(Fraction(m) * Q(a1) / Q(a_next), 2)


def marker_count(multiplicities: Sequence[int], aut_order: int = 1) -> Fraction:
    if aut_order < 1:
        raise ValueError("automorphism group order must be >= 1")
    if any(m < 1 for m in multiplicities):
        raise ValueError("multiplicities must be positive")
    return Fraction(math.prod(multiplicities), aut_order)
