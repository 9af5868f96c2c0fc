"""Linear matrix polynomials A(t) = A0 + t1 A1 + ... + tn An.

Everything here is exact: characteristic polynomials are computed
symbolically over the rational polynomial ring, positive semidefiniteness is
decided from the signs of characteristic-polynomial coefficients, and faces
are read off exact kernels.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import exact
from .poly import MPoly, as_rational, as_vector

RatMatrix = tuple  # tuple[tuple[Fraction, ...], ...]


class NotSymmetricError(ValueError):
    pass


class NotInSpectrahedronError(ValueError):
    pass


class DegenerateFaceError(ValueError):
    """The face is all of S, or the trace functional vanishes identically."""


def _as_matrix(rows) -> RatMatrix:
    m = tuple(tuple(as_rational(x) for x in row) for row in rows)
    k = len(m)
    if any(len(row) != k for row in m):
        raise ValueError("matrix is not square")
    return m


def check_symmetric(m: RatMatrix):
    k = len(m)
    for i in range(k):
        for j in range(i + 1, k):
            if m[i][j] != m[j][i]:
                raise NotSymmetricError(f"entry ({i},{j}) = {m[i][j]} but ({j},{i}) = {m[j][i]}")


@dataclass(frozen=True)
class LinMatPoly:
    """Symmetric pencil; ``mats[0]`` is A0 and ``mats[i]`` multiplies t_i."""

    mats: tuple[RatMatrix, ...]

    def __post_init__(self):
        mats = tuple(_as_matrix(m) for m in self.mats)
        if not mats:
            raise ValueError("a pencil needs at least A0")
        k = len(mats[0])
        if k < 1 or any(len(m) != k for m in mats):
            raise ValueError("all coefficient matrices must be k x k with k >= 1")
        for m in mats:
            check_symmetric(m)
        object.__setattr__(self, "mats", mats)

    @property
    def k(self) -> int:
        return len(self.mats[0])

    @property
    def n(self) -> int:
        return len(self.mats) - 1

    def entry_poly(self, i: int, j: int) -> MPoly:
        return MPoly.linear(self.mats[0][i][j], [m[i][j] for m in self.mats[1:]])

    def to_json(self) -> dict:
        def enc(x: Fraction):
            return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

        return {"k": self.k, "n": self.n, "A": [[[enc(x) for x in row] for row in m] for m in self.mats]}

    @classmethod
    def from_json(cls, data: dict) -> "LinMatPoly":
        for key in ("k", "n", "A"):
            if key not in data:
                raise ValueError(f"pencil JSON is missing {key!r}")
        mats = data["A"]
        if len(mats) != data["n"] + 1:
            raise ValueError(f"expected n+1 = {data['n'] + 1} matrices, got {len(mats)}")
        pencil = cls(tuple(mats))
        if pencil.k != data["k"]:
            raise ValueError(f"declared k = {data['k']} but matrices are {pencil.k} x {pencil.k}")
        return pencil


def load_pencil(path) -> LinMatPoly:
    with open(path, encoding="utf-8") as fh:
        return LinMatPoly.from_json(json.load(fh))


def eval_pencil(A: LinMatPoly, x: Sequence) -> RatMatrix:
    x = as_vector(x)
    if len(x) != A.n:
        raise ValueError(f"point has {len(x)} coordinates, pencil has {A.n} variables")
    k = A.k
    out = [list(row) for row in A.mats[0]]
    for xi, m in zip(x, A.mats[1:]):
        if xi:
            for i in range(k):
                for j in range(k):
                    if m[i][j]:
                        out[i][j] += xi * m[i][j]
    return tuple(tuple(row) for row in out)


# ---------------------------------------------------------------------------
# characteristic polynomials


@dataclass(frozen=True)
class CharPolyCoeffs:
    """det(A(t) - s I) = c[0] + c[1] s + ... + c[k-1] s^(k-1) + (-1)^k s^k."""

    c: tuple[MPoly, ...]

    @property
    def k(self) -> int:
        return len(self.c)

    def full(self) -> list[MPoly]:
        """All k+1 coefficients including the constant leading one."""
        n = self.c[0].n
        return list(self.c) + [MPoly.constant(n, (-1) ** self.k)]


def _faddeev_leverrier(mat, zero, one):
    """Coefficients a_0..a_k of det(sI - M), generic over a commutative ring."""
    k = len(mat)
    a = [None] * (k + 1)
    a[k] = one
    prev = None
    for j in range(1, k + 1):
        if prev is None:
            cur = [[a[k] if r == c else zero for c in range(k)] for r in range(k)]
        else:
            am = _mat_mul(mat, prev, zero)
            cur = [[am[r][c] + (a[k - j + 1] if r == c else zero) for c in range(k)] for r in range(k)]
        am = _mat_mul(mat, cur, zero)
        tr = zero
        for r in range(k):
            tr = tr + am[r][r]
        a[k - j] = tr * Fraction(-1, j)
        prev = cur
    return a


def _mat_mul(a, b, zero):
    k = len(a)
    out = []
    for r in range(k):
        row = []
        for c in range(k):
            acc = zero
            for t in range(k):
                acc = acc + a[r][t] * b[t][c]
            row.append(acc)
        out.append(row)
    return out


def _det_cofactor(mat, zero, one):
    """Laplace expansion along rows with memoized minors (exact, any ring)."""
    k = len(mat)
    memo: dict[tuple[int, ...], object] = {}

    def minor(row: int, cols: tuple[int, ...]):
        if row == k:
            return one
        if cols in memo:
            return memo[cols]
        acc = zero
        for idx, c in enumerate(cols):
            entry = mat[row][c]
            if entry == zero:
                continue
            sub = minor(row + 1, cols[:idx] + cols[idx + 1 :])
            term = entry * sub
            acc = acc + term if idx % 2 == 0 else acc - term
        memo[cols] = acc
        return acc

    return minor(0, tuple(range(k)))


def char_poly_coeffs(A: LinMatPoly, method: str = "auto") -> CharPolyCoeffs:
    """Symbolic coefficients of det(A(t) - s I).

    Faddeev-LeVerrier for k <= 6, cofactor expansion beyond (or on request).
    """
    k, n = A.k, A.n
    if method == "auto":
        method = "faddeev" if k <= 6 else "cofactor"
    if method == "faddeev":
        mat = [[A.entry_poly(i, j) for j in range(k)] for i in range(k)]
        a = _faddeev_leverrier(mat, MPoly.zero(n), MPoly.constant(n, 1))
        sign = (-1) ** k
        return CharPolyCoeffs(tuple(ai * sign for ai in a[:k]))
    if method == "cofactor":
        # work in n+1 variables, s last, then split by powers of s
        s = MPoly.var(n + 1, n)
        mat = [
            [A.entry_poly(i, j).extend(1) - (s if i == j else 0) for j in range(k)] for i in range(k)
        ]
        det = _det_cofactor(mat, MPoly.zero(n + 1), MPoly.constant(n + 1, 1))
        parts = [dict() for _ in range(k + 1)]
        for m, c in det.terms.items():
            parts[m[-1]][m[:-1]] = c
        return CharPolyCoeffs(tuple(MPoly(n, parts[i]) for i in range(k)))
    raise ValueError(f"unknown method {method!r}")


def det_poly(A: LinMatPoly) -> MPoly:
    return char_poly_coeffs(A).c[0]


def _int_charpoly(m: list[list[int]]) -> list[int]:
    """a_0..a_k of det(sI - M) for an integer matrix, in integer arithmetic."""
    k = len(m)
    a = [0] * (k + 1)
    a[k] = 1
    cur = None
    for j in range(1, k + 1):
        if cur is None:
            cur = [[int(r == c) for c in range(k)] for r in range(k)]
        else:
            am = [[sum(m[r][t] * cur[t][c] for t in range(k)) for c in range(k)] for r in range(k)]
            cur = [[am[r][c] + (a[k - j + 1] if r == c else 0) for c in range(k)] for r in range(k)]
        tr = sum(sum(m[r][t] * cur[t][r] for t in range(k)) for r in range(k))
        q, rem = divmod(-tr, j)
        assert rem == 0, "Faddeev-LeVerrier division must be exact for integer matrices"
        a[k - j] = q
    return a


def numeric_char_coeffs(M: Sequence[Sequence]) -> list[Fraction]:
    """c_0..c_{k-1} of det(M - s I) for a rational matrix."""
    M = _as_matrix(M)
    k = len(M)
    den = 1
    for row in M:
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [[int(x * den) for x in row] for row in M]
    a = _int_charpoly(ints)
    # det(sI - M) has roots den * eig(M)/den; undo the scaling per power
    sign = (-1) ** k
    return [Fraction(sign * a[i], den ** (k - i)) for i in range(k)]


def is_psd_exact(M: Sequence[Sequence]) -> bool:
    """(-1)^i c_i >= 0 for every coefficient of det(M - s I)."""
    M = _as_matrix(M)
    check_symmetric(M)
    c = numeric_char_coeffs(M)
    return all((c[i] >= 0) if i % 2 == 0 else (c[i] <= 0) for i in range(len(c)))


def spectrahedron_member(A: LinMatPoly, x: Sequence) -> bool:
    return is_psd_exact(eval_pencil(A, x))


def charpoly_member(coeffs: CharPolyCoeffs, x: Sequence, upto: int | None = None) -> bool:
    """x in S(c_0, -c_1, c_2, ...) using the first ``upto`` coefficients."""
    upto = coeffs.k if upto is None else upto
    for i in range(upto):
        v = coeffs.c[i].eval(x)
        if (v < 0) if i % 2 == 0 else (v > 0):
            return False
    return True


# ---------------------------------------------------------------------------
# faces


@dataclass(frozen=True)
class FaceDescriptor:
    """Face F_U of a spectrahedron, with U = ker A(basepoint).

    ``kernel`` empty means the face is all of S ("full").  The affine hull
    is ``hull_point + span(hull_directions)``.
    """

    basepoint: tuple[Fraction, ...]
    kernel: tuple[tuple[Fraction, ...], ...]
    hull_point: tuple[Fraction, ...]
    hull_directions: tuple[tuple[Fraction, ...], ...]
    exposing_matrix: RatMatrix = field(repr=False)

    @property
    def full(self) -> bool:
        return not self.kernel

    @property
    def dimension(self) -> int:
        return len(self.hull_directions)

    def in_hull(self, y: Sequence) -> bool:
        """Exact test whether y lies in the affine hull."""
        y = as_vector(y)
        diff = [yi - pi for yi, pi in zip(y, self.hull_point)]
        if not self.hull_directions:
            return not any(diff)
        cols = [list(col) for col in zip(*self.hull_directions)]
        return exact.solve_affine(cols, diff) is not None

    def to_json(self) -> dict:
        enc = str
        return {
            "basepoint": [enc(v) for v in self.basepoint],
            "kernel": [[enc(v) for v in u] for u in self.kernel],
            "hull_point": [enc(v) for v in self.hull_point],
            "hull_directions": [[enc(v) for v in d] for d in self.hull_directions],
            "dimension": self.dimension,
            "full": self.full,
        }


def face_of_point(A: LinMatPoly, x: Sequence) -> FaceDescriptor:
    """Smallest face of S(A) containing x, from the exact kernel of A(x)."""
    x = as_vector(x)
    Ax = eval_pencil(A, x)
    if not is_psd_exact(Ax):
        raise NotInSpectrahedronError(f"A(x) is not positive semidefinite at x = {list(map(str, x))}")
    k, n = A.k, A.n
    U = exact.nullspace(Ax, k)
    Z = [[sum((u[i] * u[j] for u in U), Fraction(0)) for j in range(k)] for i in range(k)]
    if not U:
        ident = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
        return FaceDescriptor(x, (), x, tuple(ident), tuple(tuple(r) for r in Z))
    rows, rhs = [], []
    for u in U:
        cols = [exact.matvec(Ai, u) for Ai in A.mats]
        for r in range(k):
            rows.append([cols[i + 1][r] for i in range(n)])
            rhs.append(-cols[0][r])
    if n == 0:
        hull = (list(x), [])
    else:
        hull = exact.solve_affine(rows, rhs)
    assert hull is not None, "x itself solves the kernel system"
    point, dirs = hull
    return FaceDescriptor(
        x,
        tuple(tuple(u) for u in U),
        tuple(point),
        tuple(tuple(d) for d in dirs),
        tuple(tuple(r) for r in Z),
    )


def exposing_functional(face: FaceDescriptor, A: LinMatPoly) -> MPoly:
    """The linear polynomial y -> trace(Z A(y)), nonnegative on S, zero exactly on the face."""
    if face.full:
        raise DegenerateFaceError("the face is S itself; no exposing functional is needed")
    Z = face.exposing_matrix
    coeffs = [sum((Z[i][j] * M[i][j] for i in range(A.k) for j in range(A.k)), Fraction(0)) for M in A.mats]
    ell = MPoly.linear(coeffs[0], coeffs[1:])
    if ell.is_zero():
        raise DegenerateFaceError("trace(Z A(y)) vanishes identically; S lies in a degenerate position")
    return ell
