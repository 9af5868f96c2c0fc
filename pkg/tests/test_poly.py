from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from spectrakit.parse import PolyParseError, parse_poly, parse_rational_list
from spectrakit.poly import (
    Interval,
    MPoly,
    UPoly,
    all_roots_nonnegative,
    all_roots_real,
    count_real_roots,
    dehomogenize,
    eval_poly,
    format_poly,
    homogenize,
    restrict_line,
    root_multiplicity,
    side_sign,
)

CUBIC = "t1^3 - t1^2 - t1 - t2^2 + 1"
s = sympy.Symbol("s")


def up(*coeffs):
    return UPoly([F(c) for c in coeffs])


def to_sympy(p: MPoly):
    xs = sympy.symbols(f"t1:{p.n + 1}")
    return sympy.Add(*[sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[x**e for x, e in zip(xs, m)])
                       for m, c in p.terms.items()]), xs


class TestParseFormat:
    def test_canonical_order(self):
        assert format_poly(parse_poly(CUBIC)) == "t1^3 - t1^2 - t2^2 - t1 + 1"

    def test_rational_coefficients(self):
        p = parse_poly("1/2*t1 - 3/4")
        assert p.coeff((1,)) == F(1, 2) and p.constant_term() == F(-3, 4)

    def test_parentheses_and_powers(self):
        assert parse_poly("(t1 - 1)^2") == parse_poly("t1^2 - 2*t1 + 1")

    def test_u_is_last_variable(self):
        P = parse_poly("t1*u + u^2", 1)
        assert P.n == 2 and P.coeff((1, 1)) == 1 and P.coeff((0, 2)) == 1

    @pytest.mark.parametrize("text", ["2t1", "t1 t2", "t1^^2", "t1 +", "(t1", "t0", "x1", "t1^-1"])
    def test_rejects_bad_text(self, text):
        with pytest.raises(PolyParseError) as info:
            parse_poly(text)
        assert info.value.pos >= 0

    def test_declared_dimension_too_small(self):
        with pytest.raises(ValueError):
            parse_poly("t3", 2)

    def test_rational_list(self):
        assert parse_rational_list("0, 1/2,-3") == [0, F(1, 2), -3]
        with pytest.raises(ValueError):
            parse_rational_list("1,,2")

    @settings(max_examples=60, deadline=None)
    @given(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)),
                           st.fractions(max_denominator=20).filter(lambda c: c != 0), max_size=6))
    def test_round_trip(self, terms):
        p = MPoly(2, terms)
        assert parse_poly(format_poly(p), 2) == p


class TestEval:
    def test_examples(self):
        p = parse_poly(CUBIC)
        assert eval_poly(p, (0, 0)) == 1
        assert eval_poly(p, (1, 0)) == 0
        assert eval_poly(MPoly.constant(2, 1), (F(7, 3), -5)) == 1

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            eval_poly(parse_poly(CUBIC), (1,))

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.fractions(max_denominator=10), min_size=2, max_size=2))
    def test_matches_sympy(self, x):
        p = parse_poly(CUBIC)
        expr, xs = to_sympy(p)
        assert eval_poly(p, x) == expr.subs(dict(zip(xs, x)))


class TestArithmetic:
    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.integers(-5, 5), min_size=3, max_size=3), st.lists(st.integers(-5, 5), min_size=3, max_size=3))
    def test_ring_laws_against_sympy(self, a, b):
        p = MPoly.linear(a[0], a[1:]) ** 2 + MPoly.var(2, 0)
        q = MPoly.linear(b[0], b[1:])
        ep, xs = to_sympy(p)
        eq, _ = to_sympy(q)
        got, _ = to_sympy(p * q - q)
        assert sympy.expand(got - (ep * eq - eq)) == 0

    def test_zero_degree_is_minus_infinity(self):
        z = MPoly.zero(2)
        assert z.degree() < 0
        with pytest.raises(TypeError):
            z.degree() + 1


class TestRestrictLine:
    @pytest.mark.parametrize(
        "text, v, expected",
        [(CUBIC, (1, 0), up(1, -1, -1, 1)), ("t2", (0, 1), up(0, 1)), (CUBIC, (0, 1), up(1, 0, -1))],
    )
    def test_examples(self, text, v, expected):
        assert restrict_line(parse_poly(text, 2), (0, 0), v) == expected

    def test_zero_direction(self):
        with pytest.raises(ValueError):
            restrict_line(parse_poly(CUBIC), (0, 0), (0, 0))


class TestHomogenize:
    def test_cubic(self):
        P = homogenize(parse_poly(CUBIC), 3)
        assert P == parse_poly("t1^3 - t1^2*u - t1*u^2 - t2^2*u + u^3", 2)
        assert dehomogenize(P) == parse_poly(CUBIC)

    def test_homogeneous_input_has_no_u(self):
        p = parse_poly("t1^2 - t2^2")
        assert all(m[-1] == 0 for m in homogenize(p, 2).terms)

    def test_constant(self):
        assert homogenize(MPoly.constant(2, 1), 2) == parse_poly("u^2", 2)

    def test_degree_too_small(self):
        with pytest.raises(ValueError):
            homogenize(parse_poly(CUBIC), 2)


class TestRoots:
    def test_count_examples(self):
        assert count_real_roots(up(1, -1, -1, 1)) == 2
        assert count_real_roots(up(1, 0, 1)) == 0
        assert count_real_roots(up(0, 1), Interval.closed(0, 0)) == 1

    def test_interval_endpoints(self):
        q = up(-1, 0, 1)  # roots -1, 1
        assert count_real_roots(q, Interval.open(-1, 1)) == 0
        assert count_real_roots(q, Interval.closed(-1, 1)) == 2
        assert count_real_roots(q, Interval(F(-1), F(1), True, False)) == 1
        assert count_real_roots(q, Interval.open(None, 0)) == 1

    def test_zero_polynomial_rejected(self):
        for fn in (count_real_roots, all_roots_real, all_roots_nonnegative):
            with pytest.raises(ValueError):
                fn(UPoly.zero())

    def test_all_real(self):
        assert all_roots_real(up(1, -1, -1, 1))
        assert not all_roots_real(up(1, 0, 1))
        assert all_roots_real(up(1, 0, -1))

    def test_multiplicity(self):
        assert root_multiplicity(up(1, -1, -1, 1), 1) == 2
        assert root_multiplicity(up(1, -1, -1, 1), 3) == 0
        assert root_multiplicity(up(-1, 3, -3, 1), 1) == 3

    def test_nonnegative(self):
        assert not all_roots_nonnegative(up(1, -1, -1, 1))
        assert all_roots_nonnegative(up(0, 0, 1))
        assert all_roots_nonnegative(up(2, -3, 1))

    def test_side_sign(self):
        q = up(0, 0, -1)  # -s^2
        assert side_sign(q, 0, right=True) == -1
        assert side_sign(q, 0, right=False) == -1
        assert side_sign(up(0, 1), 0, right=False) == -1

    @settings(max_examples=80, deadline=None)
    @given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6), min_size=1, max_size=5),
           st.integers(0, 2))
    def test_sturm_matches_sympy(self, roots, complex_pairs):
        q = UPoly.from_roots(roots)
        for _ in range(complex_pairs):
            q = q * up(1, 0, 1)
        expr = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(q.coeffs)], s)
        distinct = len(set(sympy.real_roots(expr)))
        assert count_real_roots(q) == distinct
        assert all_roots_real(q) == (complex_pairs == 0)
        assert all_roots_nonnegative(q) == (complex_pairs == 0 and min(roots) >= 0)
        r = roots[0]
        assert root_multiplicity(q, r) == roots.count(r)
