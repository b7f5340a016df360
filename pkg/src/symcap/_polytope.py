"""Exact vertex enumeration for small down-closed H-polytopes.

A piece is ``{x >= 0 : <v_j, x> <= c_j}`` with every ``v_j >= 0`` and ``c_j > 0``.
Coordinates that no constraint touches are *free* (the piece is a product with
a closed orthant in those directions).
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Sequence

from .errors import Undecidable

Halfspace = tuple[tuple[Fraction, ...], Fraction]

# C(m + n, n) subsets are tried; beyond this we refuse rather than guess.
MAX_SUBSETS = 200_000


def free_coordinates(halfspaces: Sequence[Halfspace], n: int) -> frozenset[int]:
    return frozenset(i for i in range(n) if all(v[i] == 0 for v, _ in halfspaces))


def _solve(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Gauss-Jordan over Q; None when the system is singular."""
    n = len(rows)
    a = [list(r) + [b] for r, b in zip(rows, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return None
        a[col], a[pivot] = a[pivot], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def satisfies(halfspaces: Sequence[Halfspace], x: Sequence[Fraction]) -> bool:
    if any(xi < 0 for xi in x):
        return False
    return all(sum(vi * xi for vi, xi in zip(v, x)) <= c for v, c in halfspaces)


def vertices(halfspaces: Sequence[Halfspace], n: int) -> list[tuple[Fraction, ...]]:
    """Vertices of the piece with free coordinates pinned to zero."""
    free = free_coordinates(halfspaces, n)
    bound = [i for i in range(n) if i not in free]
    d = len(bound)
    if d == 0:
        return [tuple(Fraction(0) for _ in range(n))]
    # rows in the reduced coordinates: halfspaces then the axis planes x_i = 0
    rows: list[tuple[list[Fraction], Fraction]] = [
        ([v[i] for i in bound], c) for v, c in halfspaces
    ]
    for k in range(d):
        rows.append(([Fraction(int(k == j)) for j in range(d)], Fraction(0)))
    if math.comb(len(rows), d) > MAX_SUBSETS:
        raise Undecidable(
            f"vertex enumeration needs {math.comb(len(rows), d)} subsets "
            f"(limit {MAX_SUBSETS})"
        )
    found: set[tuple[Fraction, ...]] = set()
    reduced_hs = [(tuple(r), c) for r, c in rows[: len(halfspaces)]]
    for subset in itertools.combinations(range(len(rows)), d):
        sol = _solve([rows[s][0] for s in subset], [rows[s][1] for s in subset])
        if sol is None or not satisfies(reduced_hs, sol):
            continue
        full = [Fraction(0)] * n
        for i, xi in zip(bound, sol):
            full[i] = xi
        found.add(tuple(full))
    return sorted(found)


def contained_in(
    inner: Sequence[Halfspace], outer: Sequence[Halfspace], n: int
) -> bool:
    """Exact test ``inner ⊂ outer`` for two convex pieces."""
    if not free_coordinates(inner, n) <= free_coordinates(outer, n):
        return False
    return all(satisfies(outer, p) for p in vertices(inner, n))


def diagonal(halfspaces: Sequence[Halfspace]) -> Fraction | None:
    """max{t : (t,...,t) in piece}; None if unbounded along the diagonal."""
    best = None
    for v, c in halfspaces:
        s = sum(v)
        if s > 0:
            t = c / s
            best = t if best is None else min(best, t)
    return best


def max_height_2d(halfspaces: Sequence[Halfspace], x: Fraction) -> Fraction | None:
    """max{y : (x, y) in piece} for a 2D piece; None if the slice is empty.

    Raises ValueError when y is unbounded on the slice.
    """
    if x < 0:
        return None
    best = None
    for (alpha, beta), c in halfspaces:
        if beta == 0:
            if alpha * x > c:
                return None
            continue
        h = (c - alpha * x) / beta
        best = h if best is None else min(best, h)
    if best is None:
        raise ValueError("unbounded slice")
    return best if best >= 0 else None
