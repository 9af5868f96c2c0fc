"""The two worked examples: the cubic RZ set with its 3x3 pencil, and the
four-generator set with a non-exposed corner at the origin."""

from __future__ import annotations

from fractions import Fraction

from .linmat import LinMatPoly
from .parse import parse_poly
from .poly import MPoly

CUBIC = "t1^3 - t1^2 - t1 - t2^2 + 1"
CUBIC_D1 = "-t1^2 - t2^2 - 2*t1 + 3"
CUBIC_D2 = "6 - 2*t1"
CUBIC_C1 = "-t1^2 + 5*t1 + t2^2 - 4"
CUBIC_C2 = "4 - 3*t1"

CUBIC_PENCIL = LinMatPoly(
    (
        ((2, 0, 1), (0, 1, 0), (1, 0, 1)),
        ((-2, 0, -1), (0, -1, 0), (-1, 0, 0)),
        ((0, 1, 0), (1, 0, 0), (0, 0, 0)),
    )
)

# S(p, 1 - t1), plotted over the same window as the original figure
CUBIC_SET_GENERATORS = (CUBIC, "1 - t1")
CUBIC_SET_INTERIOR = (Fraction(0), Fraction(0))
CUBIC_SET_BBOX = ((-4.0, 7.0), (-2.5, 2.5))

CORNER_SET_GENERATORS = ("t2 - t1^3", "t1 + 1", "t2", "1 - t2")
CORNER_SET_INTERIOR = (Fraction(-1, 2), Fraction(1, 2))
CORNER_SET_BBOX = ((-1.5, 1.5), (-1.5, 1.5))

# the convex piece right of the t2-axis, which has an exact degree-3 relaxation
CUSP_TRIPLE_GENERATORS = ("t2 - t1^3", "t1", "1 - t2")


def poly(text: str, n: int = 2) -> MPoly:
    return parse_poly(text, n)


def polys(texts, n: int = 2) -> list[MPoly]:
    return [parse_poly(t, n) for t in texts]


def tangent_family(a) -> MPoly:
    """l_a = t2 - 3 a^2 t1 + 2 a^3, the tangent to t2 = t1^3 at (a, a^3)."""
    a = Fraction(a)
    return MPoly.linear(2 * a**3, [-3 * a**2, 1])


def cubic_boundary_point(r) -> tuple[Fraction, Fraction]:
    """Rational point (r^2 - 1, r (2 - r^2)) on p = 0; lies on the boundary of S for r^2 <= 2."""
    r = Fraction(r)
    return (r * r - 1, r * (2 - r * r))
