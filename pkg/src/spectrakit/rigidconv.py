"""Real-zero polynomials, Renegar derivatives and hyperbolicity cones."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .poly import (
    MINUS_INFINITY,
    MPoly,
    UPoly,
    all_roots_nonnegative,
    all_roots_real,
    as_vector,
    dehomogenize,
    homogenize,
    restrict_line,
    root_multiplicity,
)

DEFAULT_DIRECTIONS = 64


class SingularPointError(ValueError):
    """The gradient of p^(m-1) vanishes: no tangent certificate exists here."""


class InteriorPointError(ValueError):
    pass


def default_directions(n: int, count: int = DEFAULT_DIRECTIONS) -> list[tuple[Fraction, ...]]:
    """Deterministic primitive integer directions, shortest first, one per +-pair.

    Enumerates integer vectors by max-norm and keeps those with coprime
    entries whose first nonzero entry is positive.
    """
    if n < 1:
        raise ValueError("need at least one variable")
    out: list[tuple[Fraction, ...]] = []
    radius = 1
    while len(out) < count:
        shell = []
        for v in itertools.product(range(-radius, radius + 1), repeat=n):
            if max(abs(c) for c in v) != radius:
                continue
            first = next(c for c in v if c)
            if first < 0 or math.gcd(*v) != 1:
                continue
            shell.append(v)
        shell.sort(key=lambda v: (sum(c * c for c in v), v))
        out.extend(tuple(Fraction(c) for c in v) for v in shell)
        radius += 1
        if n == 1:
            break
    return out[:count]


@dataclass(frozen=True)
class RZReport:
    p: MPoly
    e: tuple[Fraction, ...]
    directions: tuple[tuple[Fraction, ...], ...]
    verdicts: tuple[bool, ...]
    value_at_e: Fraction
    overall: bool
    witness: tuple[Fraction, ...] | None

    def to_json(self) -> dict:
        return {
            "p": str(self.p),
            "e": [str(v) for v in self.e],
            "p_at_e": str(self.value_at_e),
            "directions_checked": len(self.directions),
            "directions_passed": sum(self.verdicts),
            "overall": self.overall,
            "witness": None if self.witness is None else [str(v) for v in self.witness],
            "scope": "sampled directions",
        }


def check_rz(p: MPoly, e: Sequence, directions: Sequence[Sequence] | None = None) -> RZReport:
    """Real-zero test of p at e along the given (or default) directions."""
    e = as_vector(e)
    if len(e) != p.n:
        raise ValueError(f"base point has {len(e)} coordinates, polynomial has {p.n} variables")
    if directions is None:
        directions = default_directions(p.n)
    dirs = tuple(as_vector(v) for v in directions)
    if not dirs:
        raise ValueError("at least one direction is required")
    for v in dirs:
        if len(v) != p.n:
            raise ValueError("direction has wrong length")
        if not any(v):
            raise ValueError("zero direction")
    value = p.eval(e)
    verdicts = []
    for v in dirs:
        q = restrict_line(p, e, v)
        verdicts.append(not q.is_zero() and all_roots_real(q))
    witness = next((v for v, ok in zip(dirs, verdicts) if not ok), None)
    overall = value > 0 and all(verdicts)
    return RZReport(p, e, dirs, tuple(verdicts), value, overall, witness)


def renegar_derivative(p: MPoly, k: int) -> MPoly:
    """p^(k) = sum_{i=k}^{d} i!/(i-k)! p_{d-i}, p_j the degree-j part of p."""
    d = p.degree()
    if d is MINUS_INFINITY:
        raise ValueError("the zero polynomial has no Renegar derivatives")
    if not 0 <= k <= d:
        raise ValueError(f"k = {k} outside 0..{d}")
    out = MPoly.zero(p.n)
    for i in range(k, d + 1):
        part = p.homogeneous_part(d - i)
        if not part.is_zero():
            out = out + part * (math.factorial(i) // math.factorial(i - k))
    return out


def renegar_chain(p: MPoly) -> list[MPoly]:
    d = p.degree()
    return [renegar_derivative(p, k) for k in range(d)]


def homogeneous_renegar(P: MPoly, e: Sequence, k: int) -> MPoly:
    """k-th derivative of s -> P(x + s e) at s = 0, as a polynomial in x."""
    if not P.is_homogeneous() or P.is_zero():
        raise ValueError("P must be a nonzero homogeneous polynomial")
    d = P.degree()
    if not 0 <= k <= d:
        raise ValueError(f"k = {k} outside 0..{d}")
    e = as_vector(e)
    out = P
    for _ in range(k):
        out = out.directional_derivative(e)
    return out


def mult(p: MPoly, x: Sequence) -> int:
    """Multiplicity of 1 as a root of s -> p(s x)."""
    if p.is_zero():
        raise ValueError("mult is undefined for the zero polynomial")
    x = as_vector(x)
    if not any(x):
        if p.constant_term() == 0:
            raise ValueError("p(s*0) vanishes identically")
        return 0
    q = restrict_line(p, [0] * p.n, x)
    return root_multiplicity(q, 1)


def mult_homogeneous(p: MPoly, x: Sequence) -> int:
    """Multiplicity of 0 as a root of s -> P((x, 1) + s (0, ..., 0, 1)), P the homogenization."""
    x = as_vector(x)
    P = homogenize(p, p.degree())
    q = restrict_line(P, list(x) + [1], [0] * p.n + [1])
    if q.is_zero():
        raise ValueError("restriction vanishes identically")
    return root_multiplicity(q, 0)


@dataclass(frozen=True)
class TangentSpace:
    point: tuple[Fraction, ...]
    normal: tuple[Fraction, ...]
    multiplicity: int

    def linear_form(self) -> MPoly:
        """normal . (t - point), vanishing on the tangent hyperplane."""
        const = -sum((g * x for g, x in zip(self.normal, self.point)), Fraction(0))
        return MPoly.linear(const, self.normal)

    def contains(self, y: Sequence) -> bool:
        return self.linear_form().eval(y) == 0


def exposing_tangent(p: MPoly, x: Sequence) -> TangentSpace:
    """Tangent hyperplane of {p^(m-1) = 0} at x, m = mult(p, x)."""
    x = as_vector(x)
    m = mult(p, x)
    if m == 0:
        raise InteriorPointError("mult(x) = 0: x is not on {p = 0}")
    pk = renegar_derivative(p, m - 1)
    g = tuple(gi.eval(x) for gi in pk.gradient())
    if not any(g):
        raise SingularPointError(f"gradient of p^({m - 1}) vanishes at x; no tangent certificate")
    return TangentSpace(x, g, m)


def hyperbolicity_cone_member(P: MPoly, e: Sequence, x: Sequence) -> bool:
    """Closed hyperbolicity cone test: all roots of s -> P(x - s e) are >= 0."""
    e, x = as_vector(e), as_vector(x)
    if not P.is_homogeneous() or P.is_zero():
        raise ValueError("P must be a nonzero homogeneous polynomial")
    if P.eval(e) <= 0:
        raise ValueError("P(e) must be positive")
    q = restrict_line(P, x, [-v for v in e])
    return all_roots_nonnegative(q)


def basic_closed_description(p: MPoly, directions: Sequence[Sequence] | None = None) -> list[MPoly]:
    """[p, p^(1), ..., p^(d-1)] for p real-zero at the origin."""
    report = check_rz(p, [0] * p.n, directions)
    if not report.overall:
        raise ValueError(f"p is not RZ at the origin (failing direction {report.witness})")
    return renegar_chain(p)


def in_basic_closed(gens: Sequence[MPoly], x: Sequence) -> bool:
    return all(g.eval(x) >= 0 for g in gens)


def upoly_of(p: MPoly) -> UPoly:
    """Univariate view of a one-variable MPoly."""
    if p.n != 1:
        raise ValueError("expected a polynomial in one variable")
    if p.is_zero():
        return UPoly.zero()
    coeffs = [Fraction(0)] * (p.degree() + 1)
    for (e,), c in p.terms.items():
        coeffs[e] = c
    return UPoly(coeffs)


__all__ = [
    "RZReport",
    "TangentSpace",
    "SingularPointError",
    "InteriorPointError",
    "basic_closed_description",
    "check_rz",
    "default_directions",
    "dehomogenize",
    "exposing_tangent",
    "homogeneous_renegar",
    "hyperbolicity_cone_member",
    "in_basic_closed",
    "mult",
    "mult_homogeneous",
    "renegar_chain",
    "renegar_derivative",
]
