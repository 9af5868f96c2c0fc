"""Faces and exposedness for planar convex sets {g_1 >= 0, ..., g_m >= 0}.

Face membership is decided exactly: x is in the relative interior of a chord
in direction v iff every generator restricted to the line x + s v is >= 0 on
both sides of s = 0.  Support lines and contact sets are numerical, computed
from boundary points found by bisection along rays from an interior point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .parse import parse_poly
from .poly import MPoly, as_vector, format_poly, restrict_line, side_sign

DEFAULT_RAYS = 4096
DEFAULT_NORMALS = 4096
TOL = 1e-8
CONTACT_TOL = 1e-5


class InteriorPointError(ValueError):
    pass


class OutsidePointError(ValueError):
    pass


def vectorized(p: MPoly):
    """Float evaluator of a 2-variable polynomial on numpy arrays."""
    terms = [(float(c), e) for e, c in p.terms.items()]

    def f(x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        out = np.zeros(np.broadcast(x, y).shape)
        for c, (a, b) in terms:
            out = out + c * x**a * y**b
        return out

    return f


@dataclass(frozen=True)
class SetDescription2D:
    generators: tuple[MPoly, ...]
    interior_point: tuple[Fraction, Fraction]
    bbox: tuple[tuple[float, float], tuple[float, float]]

    def __post_init__(self):
        if not self.generators:
            raise ValueError("at least one generator is required")
        for g in self.generators:
            if g.n != 2:
                raise ValueError("generators must be polynomials in t1, t2")
        ip = as_vector(self.interior_point)
        object.__setattr__(self, "interior_point", ip)
        if len(ip) != 2 or not all(g.eval(ip) > 0 for g in self.generators):
            raise ValueError("interior_point must make every generator strictly positive")

    @classmethod
    def parse(cls, texts: Sequence[str], interior_point, bbox) -> "SetDescription2D":
        return cls(tuple(parse_poly(t, 2) for t in texts), tuple(interior_point), _bbox(bbox))

    @classmethod
    def from_json(cls, data: dict) -> "SetDescription2D":
        for key in ("generators", "interior_point", "bbox"):
            if key not in data:
                raise ValueError(f"missing key {key!r}")
        return cls.parse(data["generators"], [Fraction(str(v)) for v in data["interior_point"]], data["bbox"])

    def contains_exact(self, x) -> bool:
        x = as_vector(x)
        return all(g.eval(x) >= 0 for g in self.generators)

    def values(self, x, y) -> np.ndarray:
        return np.stack([vectorized(g)(x, y) for g in self.generators])

    def contains(self, x, y, tol: float = 0.0) -> np.ndarray:
        return np.all(self.values(x, y) >= -tol, axis=0)

    @property
    def diameter(self) -> float:
        (a, b), (c, d) = self.bbox
        return math.hypot(b - a, d - c)


def _bbox(b):
    (a, b_), (c, d) = b
    return ((float(a), float(b_)), (float(c), float(d)))


# ---------------------------------------------------------------------------
# boundary sampling


@dataclass(frozen=True)
class BoundarySample:
    points: np.ndarray  # (rays, 2)
    angles: np.ndarray
    bounded: np.ndarray  # False where the ray left the search radius inside S


def sample_boundary(S: SetDescription2D, rays: int = DEFAULT_RAYS, iterations: int = 60) -> BoundarySample:
    """Boundary point on each of `rays` equally spaced rays from the interior point."""
    cx, cy = (float(v) for v in S.interior_point)
    angles = 2 * np.pi * np.arange(rays) / rays
    dx, dy = np.cos(angles), np.sin(angles)
    hi = np.full(rays, 2 * S.diameter)
    bounded = ~S.contains(cx + hi * dx, cy + hi * dy)
    lo = np.zeros(rays)
    for _ in range(iterations):
        mid = (lo + hi) / 2
        inside = S.contains(cx + mid * dx, cy + mid * dy)
        lo = np.where(inside, mid, lo)
        hi = np.where(inside, hi, mid)
    pts = np.stack([cx + lo * dx, cy + lo * dy], axis=1)
    return BoundarySample(pts, angles, bounded)


def set_samples(S: SetDescription2D, rays: int = DEFAULT_RAYS, shells: Sequence[float] = (1.0, 0.75, 0.5, 0.25)) -> np.ndarray:
    """Boundary samples plus scaled copies toward the interior point (all in S)."""
    b = sample_boundary(S, rays).points
    c = np.array([float(v) for v in S.interior_point])
    return np.concatenate([c + s * (b - c) for s in shells] + [c[None]], axis=0)


# ---------------------------------------------------------------------------
# support lines


@dataclass(frozen=True)
class SupportCone:
    """Inward unit normals g with g.(y - x) >= -tol on the samples, on an angular grid."""

    point: tuple[float, float]
    angles: tuple[float, ...]
    resolution: int

    @property
    def normals(self) -> list[tuple[float, float]]:
        return [(math.cos(a), math.sin(a)) for a in self.angles]

    @property
    def is_single(self) -> bool:
        return len(self.angles) == 1

    def arc(self) -> tuple[float, float] | None:
        """(start, end) angles of the contiguous arc of grid normals, end >= start."""
        if not self.angles:
            return None
        step = 2 * math.pi / self.resolution
        idx = sorted(round(a / step) % self.resolution for a in self.angles)
        if len(idx) == self.resolution:
            return (0.0, 2 * math.pi)
        # rotate so that the arc does not wrap
        gaps = [(idx[(i + 1) % len(idx)] - idx[i]) % self.resolution for i in range(len(idx))]
        cut = max(range(len(idx)), key=lambda i: gaps[i])
        start = idx[(cut + 1) % len(idx)]
        end = idx[cut]
        if end < start:
            end += self.resolution
        return (start * step, end * step)

    def bisector(self) -> tuple[float, float] | None:
        arc = self.arc()
        if arc is None:
            return None
        mid = (arc[0] + arc[1]) / 2
        return (math.cos(mid), math.sin(mid))

    def contains_direction(self, g: Sequence[float], slack: int = 1) -> bool:
        """Is the direction of g within `slack` grid steps of the cone?"""
        arc = self.arc()
        if arc is None:
            return False
        a = math.atan2(g[1], g[0]) % (2 * math.pi)
        step = 2 * math.pi / self.resolution
        for shift in (0.0, 2 * math.pi):
            if arc[0] - slack * step <= a + shift <= arc[1] + slack * step:
                return True
        return False

    def to_json(self) -> dict:
        arc = self.arc()
        return {
            "point": list(self.point),
            "count": len(self.angles),
            "arc_degrees": None if arc is None else [math.degrees(arc[0]), math.degrees(arc[1])],
            "bisector": self.bisector(),
            "resolution": self.resolution,
        }


def _boundary_margin(S: SetDescription2D, x) -> float:
    """Signed distance estimate min_i g_i(x) / max(1, |grad g_i(x)|)."""
    out = math.inf
    for g in S.generators:
        v = g.eval_float(x)
        grad = math.hypot(*(gi.eval_float(x) for gi in g.gradient()))
        out = min(out, v / max(1.0, grad))
    return out


def support_lines_through(
    S: SetDescription2D,
    x,
    resolution: int = DEFAULT_NORMALS,
    tol: float = TOL,
    samples: np.ndarray | None = None,
    boundary_tol: float = 1e-6,
) -> SupportCone:
    xf = tuple(float(v) for v in x)
    margin = _boundary_margin(S, xf)
    if margin > boundary_tol:
        raise InteriorPointError(f"{xf} is interior (margin {margin:.3g})")
    if margin < -boundary_tol:
        raise OutsidePointError(f"{xf} lies outside the set (margin {margin:.3g})")
    if samples is None:
        samples = set_samples(S)
    scale = tol * max(1.0, S.diameter)
    diff = samples - np.array(xf)
    angles = 2 * np.pi * np.arange(resolution) / resolution
    G = np.stack([np.cos(angles), np.sin(angles)], axis=1)
    worst = (diff @ G.T).min(axis=0)
    keep = angles[worst >= -scale]
    return SupportCone(xf, tuple(float(a) for a in keep), resolution)


# ---------------------------------------------------------------------------
# faces


@dataclass(frozen=True)
class Face:
    kind: str  # "point" | "segment" | "full"
    base: tuple[Fraction, Fraction]
    endpoints: tuple[tuple[Fraction | float, ...], ...] = ()
    direction: tuple[Fraction, Fraction] | None = None

    @property
    def relative_interior_point(self) -> tuple[float, float]:
        if self.kind == "segment":
            (a, b), (c, d) = self.endpoints
            return ((float(a) + float(c)) / 2, (float(b) + float(d)) / 2)
        return tuple(float(v) for v in self.base)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "base": [str(v) for v in self.base],
            "endpoints": [[_fmt(v) for v in p] for p in self.endpoints],
        }


def _fmt(v):
    return str(v) if isinstance(v, Fraction) else float(v)


def _germ_ok(S: SetDescription2D, x, v) -> bool:
    """Every generator is >= 0 on a two-sided neighbourhood of s = 0 along x + s v."""
    for g in S.generators:
        q = restrict_line(g, x, v)
        if q.is_zero():
            continue
        c0 = q(0)
        if c0 > 0:
            continue
        if c0 < 0:
            return False
        if side_sign(q, 0, True) < 0 or side_sign(q, 0, False) < 0:
            return False
    return True


def _dyadic_directions(count: int) -> list[tuple[Fraction, Fraction]]:
    """Rational directions approximating count angles in [0, pi)."""
    out = []
    for k in range(count):
        a = math.pi * k / count
        out.append((Fraction(math.cos(a)).limit_denominator(1 << 20), Fraction(math.sin(a)).limit_denominator(1 << 20)))
    return out


def _extent(S: SetDescription2D, x, v, radius: Fraction) -> Fraction | float:
    """sup{s >= 0 : x + s v in S}, exact if a nearby rational endpoint checks out."""
    polys = [restrict_line(g, x, v) for g in S.generators]

    def inside(s):
        return all(q.is_zero() or q(s) >= 0 for q in polys)

    lo, hi = Fraction(0), radius
    if inside(hi):
        return hi
    for _ in range(64):
        mid = (lo + hi) / 2
        if inside(mid):
            lo = mid
        else:
            hi = mid
        lo, hi = Fraction(float(lo)), Fraction(float(hi))
    for den in (1, 2, 3, 4, 6, 8, 10, 12, 16, 100, 1000, 10**6):
        s = Fraction(float(lo)).limit_denominator(den)
        if inside(s) and any(not q.is_zero() and q(s) == 0 for q in polys):
            if not inside(s + Fraction(1, 10**9)):
                return s
    return float(lo)


def face_of_point_2d(S: SetDescription2D, x, sweep: int = 1024) -> Face:
    """Smallest face containing the rational point x (point, segment or full set)."""
    x = as_vector(x)
    if len(x) != 2:
        raise ValueError("expected a planar point")
    if not S.contains_exact(x):
        raise OutsidePointError(f"{tuple(map(str, x))} is not in the set")
    if all(g.eval(x) > 0 for g in S.generators):
        return Face("full", x)
    candidates = []
    for g in S.generators:
        if g.eval(x) == 0:
            grad = [gi.eval(x) for gi in g.gradient()]
            if any(grad):
                candidates.append((-grad[1], grad[0]))
    candidates += _dyadic_directions(sweep)
    good = [v for v in candidates if _germ_ok(S, x, v)]
    if not good:
        return Face("point", x)
    v = good[0]
    if any(v[0] * w[1] - v[1] * w[0] != 0 for w in good[1:]):
        return Face("full", x)
    norm = math.hypot(float(v[0]), float(v[1]))
    radius = Fraction(2 * S.diameter / norm).limit_denominator(1000) + 1
    s_plus = _extent(S, x, v, radius)
    s_minus = _extent(S, x, (-v[0], -v[1]), radius)

    def at(s, sign):
        if isinstance(s, Fraction):
            return (x[0] + sign * s * v[0], x[1] + sign * s * v[1])
        return (float(x[0]) + sign * s * float(v[0]), float(x[1]) + sign * s * float(v[1]))

    return Face("segment", x, (at(s_minus, -1), at(s_plus, 1)), v)


# ---------------------------------------------------------------------------
# exposedness


@dataclass(frozen=True)
class ContactSet:
    kind: str  # "point" | "segment"
    endpoints: tuple[tuple[float, float], tuple[float, float]]
    count: int
    hausdorff_to_face: float

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "endpoints": [list(p) for p in self.endpoints],
            "samples": self.count,
            "hausdorff_to_face": self.hausdorff_to_face,
        }


@dataclass(frozen=True)
class FaceReport:
    face: Face
    exposed: bool
    exposing_line: MPoly | None
    support_cone: SupportCone | None
    contact: ContactSet | None
    resolution: str
    notes: tuple[str, ...] = field(default_factory=tuple)

    def line_text(self) -> str | None:
        return None if self.exposing_line is None else line_equation(self.exposing_line)

    def to_json(self) -> dict:
        return {
            "face": self.face.to_json(),
            "exposed": self.exposed,
            "exposing_line": self.line_text(),
            "support_cone": None if self.support_cone is None else self.support_cone.to_json(),
            "contact": None if self.contact is None else self.contact.to_json(),
            "verdict_scope": self.resolution,
            "notes": list(self.notes),
        }


def line_equation(line: MPoly) -> str:
    """'{a*t1 + b*t2 = c}', primitive integers, first nonzero coefficient positive."""
    line = _primitive(line)
    lin = MPoly(line.n, {m: c for m, c in line.terms.items() if sum(m) == 1})
    lead = next((c for _, c in sorted(lin.terms.items(), reverse=True)), None)
    if lead is None:
        raise ValueError("not a line")
    sign = 1 if lead > 0 else -1
    lin = lin * sign
    rhs = -sign * line.constant_term()
    return f"{{{format_poly(lin)} = {format_poly(MPoly.constant(line.n, rhs))}}}"


def _segment_distance(pts: np.ndarray, a, b) -> np.ndarray:
    a, b = np.asarray(a, float), np.asarray(b, float)
    ab = b - a
    denom = float(ab @ ab)
    if denom == 0:
        return np.linalg.norm(pts - a, axis=1)
    t = np.clip((pts - a) @ ab / denom, 0, 1)
    return np.linalg.norm(pts - (a + t[:, None] * ab), axis=1)


def _face_segment(face: Face):
    if face.kind == "segment":
        return tuple(tuple(float(v) for v in p) for p in face.endpoints)
    p = tuple(float(v) for v in face.base)
    return (p, p)


def contact_set(samples: np.ndarray, line: MPoly, face: Face, contact_tol: float) -> ContactSet | None:
    f = vectorized(line)
    grad = np.array([float(line.coeff((1, 0))), float(line.coeff((0, 1)))])
    vals = f(samples[:, 0], samples[:, 1]) / np.linalg.norm(grad)
    pts = samples[np.abs(vals) <= contact_tol]
    a, b = _face_segment(face)
    if len(pts) == 0:
        return None
    direction = np.array([-grad[1], grad[0]]) / np.linalg.norm(grad)
    proj = pts @ direction
    lo, hi = pts[np.argmin(proj)], pts[np.argmax(proj)]
    # two-sided Hausdorff distance between sampled contact points and the face
    d1 = float(_segment_distance(pts, a, b).max())
    seg_pts = np.linspace(np.asarray(a), np.asarray(b), 64)
    d2 = float(np.min(np.linalg.norm(seg_pts[:, None, :] - pts[None, :, :], axis=2), axis=1).max())
    extent = float(np.linalg.norm(hi - lo))
    kind = "segment" if extent > 10 * contact_tol else "point"
    return ContactSet(kind, (tuple(map(float, lo)), tuple(map(float, hi))), len(pts), max(d1, d2))


def _rational_line(normal, point) -> MPoly:
    """Primitive integer linear form g.(t - point) with g a rational snap of normal."""
    g = [c if isinstance(c, Fraction) else Fraction(c).limit_denominator(1000) for c in normal]
    p = as_vector(point)
    line = MPoly.linear(-(g[0] * p[0] + g[1] * p[1]), g)
    return _primitive(line)


def _primitive(line: MPoly) -> MPoly:
    coeffs = list(line.terms.values())
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    return line * Fraction(den, g) if g else line


def is_exposed_2d(
    S: SetDescription2D,
    face: Face,
    rays: int = DEFAULT_RAYS,
    normals: int = DEFAULT_NORMALS,
    tol: float = TOL,
    contact_tol: float = CONTACT_TOL,
    hausdorff_tol: float | None = None,
    max_candidates: int = 64,
) -> FaceReport:
    """Search support lines through the face for one whose contact set is the face."""
    label = f"numerical at resolution {rays} rays / {normals} normals"
    if face.kind == "full":
        return FaceReport(face, True, None, None, None, label, ("the whole set is trivially an exposed face",))
    if hausdorff_tol is None:
        hausdorff_tol = 0.01 * S.diameter
    samples = set_samples(S, rays)
    x = face.relative_interior_point
    cone = support_lines_through(S, x, normals, tol, samples)
    notes = []
    if face.kind == "segment":
        v = face.direction
        candidates = [(-v[1], v[0])]
        base = face.base
    else:
        base = face.base
        candidates = []
        bis = cone.bisector()
        if bis is not None:
            candidates.append(bis)
        rest = cone.normals
        stride = max(1, len(rest) // max_candidates)
        candidates += rest[::stride]
        if not cone.is_single and cone.angles:
            notes.append(f"support cone at the point spans {len(cone.angles)} grid normals")
    first_contact = None
    first_line = None
    for g in candidates:
        line = _rational_line(g, base)
        f = vectorized(line)
        grad_norm = math.hypot(float(line.coeff((1, 0))), float(line.coeff((0, 1))))
        if f(samples[:, 0], samples[:, 1]).min() / grad_norm < -tol * max(1.0, S.diameter):
            # orientation: make the form nonnegative on S
            line = -line
            f = vectorized(line)
            if f(samples[:, 0], samples[:, 1]).min() / grad_norm < -tol * max(1.0, S.diameter):
                continue
        contact = contact_set(samples, line, face, contact_tol)
        if contact is None:
            continue
        if first_contact is None:
            first_contact, first_line = contact, line
        if contact.hausdorff_to_face <= hausdorff_tol:
            return FaceReport(face, True, line, cone, contact, label, tuple(notes))
    if first_line is not None:
        notes.append(f"support line {line_equation(first_line)} touches more than the face")
    return FaceReport(face, False, None, cone, first_contact, label, tuple(notes))


def faces2d_report(S: SetDescription2D, x, **kwargs) -> dict:
    face = face_of_point_2d(S, x)
    report = is_exposed_2d(S, face, **kwargs)
    return report.to_json()
