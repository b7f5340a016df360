"""Exact scalars.

``fractions.Fraction`` already is a reduced p/q with positive denominator, so it
serves as the rational type directly. This module adds the ``+inf`` sentinel,
strict parsing (no floats ever) and canonical string formatting.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from typing import Union

from .errors import ParseError

Rational = Fraction


@functools.total_ordering
class _PositiveInfinity:
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("symcap.inf")

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "+inf"

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and other > 0:
            return self
        return NotImplemented

    __rmul__ = __mul__

    def __reduce__(self):
        return (_PositiveInfinity, ())


INF = _PositiveInfinity()
ExtRational = Union[Fraction, _PositiveInfinity]


def is_inf(x) -> bool:
    return x is INF


def Q(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are refused so that no binary rounding can leak in.
    """
    if isinstance(value, bool):
        raise ParseError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(c in text for c in ".eE"):
            raise ParseError(f"not a rational literal: {value!r}")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational literal: {value!r}") from exc
    raise ParseError(f"not a rational (floats are rejected): {value!r}")


def parse_ext(value) -> ExtRational:
    if isinstance(value, str) and value.strip() in ("inf", "+inf"):
        return INF
    return Q(value)


def fmt(x) -> str:
    """``2/3`` for proper fractions, ``2`` for integers, ``+inf`` for infinity."""
    if x is INF:
        return "+inf"
    if isinstance(x, int):
        return str(x)
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
