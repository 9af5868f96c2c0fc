"""Exact polynomial arithmetic over the rationals.

Multivariate polynomials are sparse maps from exponent tuples to
:class:`fractions.Fraction`; univariate polynomials are dense coefficient
tuples (index = power).  Nothing in this module ever rounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Mapping, Sequence

Rational = Fraction
Monomial = tuple  # tuple[int, ...]


@total_ordering
class _MinusInfinity:
    """Degree of the zero polynomial.

    Compares below every integer but refuses arithmetic, so it can never
    leak into a degree computation unnoticed.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "-inf"

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("spectrakit.-inf")

    def _nope(self, *args):
        raise TypeError("arithmetic on the degree of the zero polynomial")

    __add__ = __radd__ = __sub__ = __rsub__ = __mul__ = __rmul__ = _nope
    __int__ = __index__ = _nope


MINUS_INFINITY = _MinusInfinity()


def as_rational(value) -> Fraction:
    """Convert ints, Fractions, decimal/"a/b" strings and floats exactly."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, (int, float)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    try:
        return Fraction(value)
    except TypeError:
        raise TypeError(f"cannot interpret {value!r} as a rational number") from None


def as_vector(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(as_rational(v) for v in values)


def monomials_up_to(n: int, d: int) -> list[Monomial]:
    """All exponent vectors in n variables of total degree <= d, graded lex."""
    out: list[Monomial] = []
    for k in range(d + 1):
        out.extend(_monomials_of_degree(n, k))
    return out


def _monomials_of_degree(n: int, k: int) -> list[Monomial]:
    if n == 0:
        return [()] if k == 0 else []
    if n == 1:
        return [(k,)]
    out = []
    for first in range(k, -1, -1):
        for rest in _monomials_of_degree(n - 1, k - first):
            out.append((first,) + rest)
    return out


def grlex_key(mono: Monomial):
    """Sort key: total degree first, then lex with t1 most significant."""
    return (sum(mono), tuple(mono))


class MPoly:
    """Immutable sparse multivariate polynomial with rational coefficients."""

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Monomial, object] | None = None):
        if n < 0:
            raise ValueError("variable count must be nonnegative")
        clean: dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != n:
                raise ValueError(f"monomial {mono} does not have {n} exponents")
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in {mono}")
            c = as_rational(coeff)
            if c:
                clean[mono] = clean.get(mono, Fraction(0)) + c
                if not clean[mono]:
                    del clean[mono]
        self.n = n
        self.terms = clean
        self._hash = None

    # construction helpers
    @classmethod
    def constant(cls, n: int, c) -> "MPoly":
        return cls(n, {(0,) * n: c})

    @classmethod
    def zero(cls, n: int) -> "MPoly":
        return cls(n)

    @classmethod
    def var(cls, n: int, i: int) -> "MPoly":
        """The i-th coordinate function (0-based index)."""
        if not 0 <= i < n:
            raise IndexError(f"variable index {i} out of range for n={n}")
        mono = tuple(1 if j == i else 0 for j in range(n))
        return cls(n, {mono: 1})

    @classmethod
    def linear(cls, const, coeffs: Sequence) -> "MPoly":
        n = len(coeffs)
        terms = {(0,) * n: const}
        for i, c in enumerate(coeffs):
            terms[tuple(1 if j == i else 0 for j in range(n))] = c
        return cls(n, terms)

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "MPoly":
        from .parse import parse_poly

        return parse_poly(text, n)

    # basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self):
        if not self.terms:
            return MINUS_INFINITY
        return max(sum(m) for m in self.terms)

    def coeff(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coeff((0,) * self.n)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in descending graded-lex order (canonical listing)."""
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def is_homogeneous(self) -> bool:
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def homogeneous_part(self, k: int) -> "MPoly":
        return MPoly(self.n, {m: c for m, c in self.terms.items() if sum(m) == k})

    # arithmetic
    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.n != self.n:
                raise ValueError(f"variable count mismatch: {self.n} vs {other.n}")
            return other
        return MPoly.constant(self.n, as_rational(other))

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return MPoly(self.n, terms)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            c = as_rational(other)
            return MPoly(self.n, {m: c * v for m, v in self.terms.items()})
        other = self._coerce(other)
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                terms[m] = terms.get(m, 0) + c1 * c2
        return MPoly(self.n, terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = as_rational(other)
        return self * (1 / c)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = MPoly.constant(self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.n == other.n and self.terms == other.terms
        try:
            return self == MPoly.constant(self.n, as_rational(other))
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"MPoly({self.n}, {format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)

    # calculus and substitution
    def diff(self, i: int) -> "MPoly":
        terms = {}
        for m, c in self.terms.items():
            if m[i]:
                dm = m[:i] + (m[i] - 1,) + m[i + 1 :]
                terms[dm] = c * m[i]
        return MPoly(self.n, terms)

    def gradient(self) -> list["MPoly"]:
        return [self.diff(i) for i in range(self.n)]

    def directional_derivative(self, direction: Sequence) -> "MPoly":
        direction = as_vector(direction)
        if len(direction) != self.n:
            raise ValueError("direction has wrong length")
        out = MPoly.zero(self.n)
        for i, v in enumerate(direction):
            if v:
                out = out + self.diff(i) * v
        return out

    def eval(self, x: Sequence) -> Fraction:
        return eval_poly(self, x)

    def eval_float(self, x: Sequence[float]) -> float:
        if len(x) != self.n:
            raise ValueError(f"point has {len(x)} coordinates, polynomial has {self.n} variables")
        total = 0.0
        for m, c in self.terms.items():
            term = float(c)
            for xi, e in zip(x, m):
                if e:
                    term *= xi**e
            total += term
        return total

    def extend(self, extra: int) -> "MPoly":
        """Same polynomial viewed in n + extra variables (new ones last)."""
        pad = (0,) * extra
        return MPoly(self.n + extra, {m + pad: c for m, c in self.terms.items()})


def eval_poly(p: MPoly, x: Sequence) -> Fraction:
    """Exact value p(x)."""
    if len(x) != p.n:
        raise ValueError(f"point has {len(x)} coordinates, polynomial has {p.n} variables")
    x = as_vector(x)
    powers: list[dict[int, Fraction]] = [{0: Fraction(1), 1: xi} for xi in x]
    total = Fraction(0)
    for m, c in p.terms.items():
        term = c
        for i, e in enumerate(m):
            if e:
                cache = powers[i]
                if e not in cache:
                    cache[e] = x[i] ** e
                term *= cache[e]
        total += term
    return total


def homogenize(p: MPoly, d: int | None = None) -> MPoly:
    """P(t, u) = u^d p(t/u); the homogenizing variable u is appended last."""
    deg = p.degree()
    if d is None:
        d = 0 if deg is MINUS_INFINITY else deg
    if deg is not MINUS_INFINITY and d < deg:
        raise ValueError(f"homogenizing degree {d} is below deg p = {deg}")
    return MPoly(p.n + 1, {m + (d - sum(m),): c for m, c in p.terms.items()})


def dehomogenize(P: MPoly) -> MPoly:
    """Set the last variable to 1."""
    terms: dict[Monomial, Fraction] = {}
    for m, c in P.terms.items():
        terms[m[:-1]] = terms.get(m[:-1], 0) + c
    return MPoly(P.n - 1, terms)


def restrict_line(p: MPoly, x: Sequence, v: Sequence) -> "UPoly":
    """The univariate polynomial q(s) = p(x + s v)."""
    x, v = as_vector(x), as_vector(v)
    if len(x) != p.n or len(v) != p.n:
        raise ValueError("point/direction length does not match the polynomial")
    if not any(v):
        raise ValueError("zero direction")
    lines = [UPoly((xi, vi)) for xi, vi in zip(x, v)]
    powers: list[dict[int, UPoly]] = [{0: UPoly.one(), 1: line} for line in lines]
    out = UPoly.zero()
    for m, c in p.terms.items():
        term = UPoly.constant(c)
        for i, e in enumerate(m):
            if e:
                cache = powers[i]
                if e not in cache:
                    cache[e] = lines[i] ** e
                term = term * cache[e]
        out = out + term
    return out


# ---------------------------------------------------------------------------
# formatting


def default_names(n: int) -> list[str]:
    return [f"t{i + 1}" for i in range(n)]


def format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: MPoly, names: Sequence[str] | None = None) -> str:
    names = list(names) if names is not None else default_names(p.n)
    if len(names) != p.n:
        raise ValueError("wrong number of variable names")
    if p.is_zero():
        return "0"
    parts = []
    for idx, (m, c) in enumerate(p.sorted_terms()):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        factors = [names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(m) if e]
        if not factors:
            body = format_rational(a)
        elif a == 1:
            body = "*".join(factors)
        else:
            body = format_rational(a) + "*" + "*".join(factors)
        if idx == 0:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


# ---------------------------------------------------------------------------
# univariate


class UPoly:
    """Dense univariate polynomial in s, coefficient index = power."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def zero(cls):
        return cls(())

    @classmethod
    def one(cls):
        return cls((1,))

    @classmethod
    def constant(cls, c):
        return cls((c,))

    @classmethod
    def from_roots(cls, roots: Iterable) -> "UPoly":
        out = cls.one()
        for r in roots:
            out = out * cls((-as_rational(r), 1))
        return out

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self):
        return MINUS_INFINITY if not self.coeffs else len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UPoly({format_upoly(self)!r})"

    def __str__(self):
        return format_upoly(self)

    def __add__(self, other):
        other = other if isinstance(other, UPoly) else UPoly.constant(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UPoly(tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)))

    __radd__ = __add__

    def __neg__(self):
        return UPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = other if isinstance(other, UPoly) else UPoly.constant(other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            c = as_rational(other)
            return UPoly(tuple(c * x for x in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return UPoly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = UPoly.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, s) -> Fraction:
        s = as_rational(s)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * s + c
        return acc

    def derivative(self) -> "UPoly":
        return UPoly(tuple(c * i for i, c in enumerate(self.coeffs) if i))

    def divmod(self, other: "UPoly") -> tuple["UPoly", "UPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UPoly.zero(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.lc
        for k in range(dq, -1, -1):
            c = rem[k + len(other.coeffs) - 1] / lead
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return UPoly(quot), UPoly(rem[: len(other.coeffs) - 1])

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def monic(self) -> "UPoly":
        if self.is_zero():
            return self
        return self * (1 / self.lc)

    def primitive(self) -> "UPoly":
        """Positive rescaling to integer coefficients with gcd 1."""
        if self.is_zero():
            return self
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        return UPoly(tuple(Fraction(v, g) for v in ints))

    def shift(self, a) -> "UPoly":
        """Taylor shift: the polynomial s -> q(a + s)."""
        a = as_rational(a)
        out = UPoly.zero()
        for c in reversed(self.coeffs):
            out = out * UPoly((a, 1)) + UPoly.constant(c)
        return out

    def compose_neg(self) -> "UPoly":
        """s -> q(-s)."""
        return UPoly(tuple(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)))


def format_upoly(q: UPoly, var: str = "s") -> str:
    if q.is_zero():
        return "0"
    return format_poly(MPoly(1, {(i,): c for i, c in enumerate(q.coeffs)}), [var])


def upoly_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, (a % b).primitive()
    return a.monic()


def squarefree_part(q: UPoly) -> UPoly:
    _require_nonzero(q)
    if q.degree() == 0:
        return q.monic()
    return (q // upoly_gcd(q, q.derivative())).monic()


def _require_nonzero(q: UPoly):
    if q.is_zero():
        raise ValueError("the zero polynomial has no finite root count")


@dataclass(frozen=True)
class SturmChain:
    chain: tuple[UPoly, ...]

    @classmethod
    def of(cls, q: UPoly) -> "SturmChain":
        _require_nonzero(q)
        chain = [q, q.derivative()]
        if chain[1].is_zero():
            return cls((q,))
        while True:
            r = chain[-2] % chain[-1]
            if r.is_zero():
                break
            # positive rescaling keeps every sign pattern intact
            chain.append((-r).primitive())
        return cls(tuple(chain))

    def variations(self, signs: Iterable[int]) -> int:
        nz = [s for s in signs if s]
        return sum(1 for a, b in zip(nz, nz[1:]) if a != b)

    def signs_at_infinity(self, positive: bool) -> list[int]:
        out = []
        for f in self.chain:
            s = _sign(f.lc)
            if not positive and f.degree() % 2 == 1:
                s = -s
            out.append(s)
        return out

    def signs_near(self, a: Fraction, right: bool) -> list[int]:
        return [side_sign(f, a, right) for f in self.chain]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def side_sign(f: UPoly, a, right: bool) -> int:
    """Sign of f on a small open interval just right (or left) of a."""
    if f.is_zero():
        return 0
    shifted = f.shift(a)
    for k, c in enumerate(shifted.coeffs):
        if c:
            s = _sign(c)
            return s if right or k % 2 == 0 else -s
    return 0  # unreachable for nonzero f


@dataclass(frozen=True)
class Interval:
    """Real interval; ``None`` endpoints mean -inf / +inf."""

    lo: Fraction | None = None
    hi: Fraction | None = None
    lo_closed: bool = False
    hi_closed: bool = False

    @classmethod
    def real_line(cls) -> "Interval":
        return cls()

    @classmethod
    def closed(cls, lo, hi) -> "Interval":
        return cls(as_rational(lo), as_rational(hi), True, True)

    @classmethod
    def open(cls, lo=None, hi=None) -> "Interval":
        return cls(
            None if lo is None else as_rational(lo), None if hi is None else as_rational(hi)
        )


def count_real_roots(q: UPoly, interval: Interval | None = None) -> int:
    """Number of distinct real roots of q in the interval (Sturm's theorem)."""
    _require_nonzero(q)
    iv = interval or Interval.real_line()
    if iv.lo is not None and iv.hi is not None:
        if iv.lo > iv.hi:
            return 0
        if iv.lo == iv.hi:
            return int(iv.lo_closed and iv.hi_closed and q(iv.lo) == 0)
    if q.degree() == 0:
        return 0
    sc = SturmChain.of(q)
    v_lo = (
        sc.variations(sc.signs_at_infinity(False))
        if iv.lo is None
        else sc.variations(sc.signs_near(iv.lo, right=True))
    )
    v_hi = (
        sc.variations(sc.signs_at_infinity(True))
        if iv.hi is None
        else sc.variations(sc.signs_near(iv.hi, right=False))
    )
    count = v_lo - v_hi
    if iv.lo is not None and iv.lo_closed and q(iv.lo) == 0:
        count += 1
    if iv.hi is not None and iv.hi_closed and q(iv.hi) == 0:
        count += 1
    return count


def all_roots_real(q: UPoly) -> bool:
    """True iff q has deg(q) real roots counted with multiplicity."""
    qs = squarefree_part(q)
    return count_real_roots(qs) == qs.degree()


def root_multiplicity(q: UPoly, s0) -> int:
    _require_nonzero(q)
    lin = UPoly((-as_rational(s0), 1))
    m = 0
    while True:
        quot, rem = q.divmod(lin)
        if not rem.is_zero():
            return m
        q, m = quot, m + 1


def all_roots_nonnegative(q: UPoly) -> bool:
    return all_roots_real(q) and count_real_roots(q, Interval.open(None, 0)) == 0
