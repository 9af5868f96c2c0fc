"""Small exact linear algebra over Fractions (row reduction, kernels)."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Matrix = list  # list[list[Fraction]]


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = [[Fraction(x) for x in row] for row in rows]
    if not a:
        return a, []
    ncols = len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(a)) if a[i][c]), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {v : rows @ v = 0}, each vector scaled to coprime integers."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [integer_scaled([Fraction(int(i == j)) for j in range(ncols)]) for i in range(ncols)]
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][f]
        basis.append(integer_scaled(v))
    return basis


def integer_scaled(v: Sequence[Fraction]) -> list[Fraction]:
    """Positive multiple of v with coprime integer entries."""
    den = 1
    for x in v:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if g == 0:
        return [Fraction(0)] * len(v)
    return [Fraction(x, g) for x in ints]


def solve_affine(a: Sequence[Sequence], b: Sequence) -> tuple[list[Fraction], list[list[Fraction]]] | None:
    """Solution set of a @ y = b as (particular point, direction basis), or None."""
    if not a:
        raise ValueError("empty system")
    ncols = len(a[0])
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    point = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        point[pc] = red[r][ncols]
    return point, nullspace(a, ncols)


def matmul(a, b):
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in zip(*b)] for row in a]


def matvec(a, v):
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def trace(a) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def identity(k: int):
    return [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
