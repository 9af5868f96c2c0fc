from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from spectrakit import catalog
from spectrakit.linmat import LinMatPoly, det_poly
from spectrakit.acceptance import cubic_boundary_sample
from spectrakit.parse import parse_poly
from spectrakit.poly import homogenize
from spectrakit.rigidconv import (
    InteriorPointError,
    basic_closed_description,
    check_rz,
    default_directions,
    exposing_tangent,
    homogeneous_renegar,
    hyperbolicity_cone_member,
    mult,
    mult_homogeneous,
    renegar_chain,
    renegar_derivative,
)

P = parse_poly(catalog.CUBIC)
t1, t2, u = sympy.symbols("t1 t2 u")


def sympy_renegar(k):
    """Oracle: k-th u-derivative of the homogenization, evaluated at u = 1."""
    Ph = t1**3 - t1**2 * u - t1 * u**2 - t2**2 * u + u**3
    return sympy.expand(sympy.diff(Ph, u, k).subs(u, 1))


def as_sympy(p):
    return sympy.expand(sympy.sympify(str(p).replace("^", "**")))


class TestRZ:
    def test_cubic_is_rz(self):
        assert check_rz(P, (0, 0), default_directions(2, 64)).overall

    def test_no_real_zeros(self):
        rep = check_rz(parse_poly("t1^2 + t2^2 + 1"), (0, 0))
        assert not rep.overall and rep.witness is not None

    def test_linear(self):
        assert check_rz(parse_poly("1 - t1", 2), (0, 0), [(1, 0)]).overall

    def test_negative_at_base_point(self):
        assert not check_rz(parse_poly("t1 - 1", 1), (0,), [(1,)]).overall

    def test_errors(self):
        with pytest.raises(ValueError):
            check_rz(P, (0,))
        with pytest.raises(ValueError):
            check_rz(P, (0, 0), [(0, 0)])

    def test_default_directions_are_distinct_rational(self):
        dirs = default_directions(2, 256)
        assert len(set(dirs)) == 256
        assert all(isinstance(c, F) for v in dirs for c in v)

    @settings(max_examples=15, deadline=None)
    @given(st.lists(st.integers(-3, 3), min_size=6, max_size=6))
    def test_determinants_of_pencils_are_rz(self, e):
        # det(I + t1 A1 + t2 A2) is real-zero at the origin for symmetric A1, A2
        a1 = [[e[0], e[1]], [e[1], e[2]]]
        a2 = [[e[3], e[4]], [e[4], e[5]]]
        p = det_poly(LinMatPoly(([[1, 0], [0, 1]], a1, a2)))
        if p.degree() >= 1:
            assert check_rz(p, (0, 0), default_directions(2, 32)).overall


class TestRenegar:
    def test_first_derivative(self):
        assert renegar_derivative(P, 1) == parse_poly("-t1^2 - t2^2 - 2*t1 + 3")

    @pytest.mark.parametrize("k", [0, 1, 2, 3])
    def test_against_second_derivative_oracle(self, k):
        assert as_sympy(renegar_derivative(P, k)) == sympy_renegar(k)

    def test_second_derivative_value(self):
        assert renegar_derivative(P, 2) == parse_poly("6 - 2*t1", 2)

    def test_order_zero_is_identity(self):
        assert renegar_derivative(P, 0) == P

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            renegar_derivative(P, 4)
        with pytest.raises(ValueError):
            renegar_derivative(P, -1)

    def test_chain(self):
        assert renegar_chain(P) == [renegar_derivative(P, k) for k in range(3)]

    def test_homogeneous_version_dehomogenizes(self):
        Ph = homogenize(P, 3)
        Q = homogeneous_renegar(Ph, (0, 0, 1), 1)
        assert Q.eval((F(2), F(-1), F(1))) == renegar_derivative(P, 1).eval((2, -1))
        assert homogeneous_renegar(Ph, (0, 0, 1), 0) == Ph

    def test_homogeneous_power(self):
        assert homogeneous_renegar(parse_poly("u^2", 2), (0, 0, 1), 1) == parse_poly("2*u", 2)

    def test_homogeneous_rejects_nonhomogeneous(self):
        with pytest.raises(ValueError):
            homogeneous_renegar(P, (0, 1), 1)


class TestMult:
    def test_examples(self):
        assert mult(P, (1, 0)) == 2
        assert mult(P, (0, 1)) == 1
        assert mult(P, (0, 0)) == 0

    def test_two_definitions_agree(self):
        for x in cubic_boundary_sample(20) + [(F(1), F(0)), (F(0), F(1)), (F(0), F(0))]:
            assert mult(P, x) == mult_homogeneous(P, x)

    def test_boundary_sample(self):
        pts = cubic_boundary_sample(20)
        assert len(pts) == 20 and all(P.eval(x) == 0 and x != (1, 0) for x in pts)
        assert {mult(P, x) for x in pts} == {1}

    def test_zero_polynomial(self):
        with pytest.raises(ValueError):
            mult(P * 0, (1, 0))


class TestTangent:
    def test_node(self):
        t = exposing_tangent(P, (1, 0))
        assert t.normal == (-4, 0) and t.multiplicity == 2
        assert t.contains((1, 5)) and not t.contains((0, 0))

    def test_smooth_point(self):
        assert exposing_tangent(P, (0, 1)).normal == (-1, -2)

    def test_linear(self):
        t = exposing_tangent(parse_poly("1 - t1", 2), (1, 7))
        assert t.contains((1, 0)) and t.contains((1, -3)) and not t.contains((0, 0))

    def test_interior_point(self):
        with pytest.raises(InteriorPointError):
            exposing_tangent(P, (0, 0))

    def test_tangent_supports_the_set(self):
        for x in cubic_boundary_sample(8):
            form = exposing_tangent(P, x).linear_form()
            sign = 1 if form.eval((0, 0)) > 0 else -1
            for i in range(-8, 3):
                for j in range(-4, 5):
                    y = (F(i, 4), F(j, 4))
                    if P.eval(y) >= 0 and 1 - y[0] >= 0:
                        assert sign * form.eval(y) >= 0


class TestHyperbolicityCone:
    Ph = homogenize(P, 3)
    e = (0, 0, 1)

    def test_examples(self):
        assert hyperbolicity_cone_member(self.Ph, self.e, (0, 0, 1))
        assert not hyperbolicity_cone_member(self.Ph, self.e, (2, 0, 1))
        assert hyperbolicity_cone_member(self.Ph, self.e, (-1, 0, 1))

    def test_scaling_invariance(self):
        assert hyperbolicity_cone_member(self.Ph, self.e, (F(-3, 2), 0, F(3, 2)))

    def test_bad_base_point(self):
        with pytest.raises(ValueError):
            hyperbolicity_cone_member(self.Ph, (0, 1, 0), (0, 0, 1))
        with pytest.raises(ValueError):
            hyperbolicity_cone_member(P, (0, 0), (0, 0))


class TestDescription:
    def test_cubic(self):
        assert basic_closed_description(P) == [P, renegar_derivative(P, 1), parse_poly("6 - 2*t1", 2)]

    def test_linear(self):
        p = parse_poly("1 - t1 + t2")
        assert basic_closed_description(p) == [p]

    def test_quadratic(self):
        p = parse_poly("1 - t1^2 - t2^2")
        desc = basic_closed_description(p)
        assert desc == [p, parse_poly("2", 2)]

    def test_not_rz(self):
        with pytest.raises(ValueError):
            basic_closed_description(parse_poly("t1^2 + t2^2 + 1"))

    def test_description_matches_set_on_grid(self):
        # the rigidly convex set of p is S(p, 1 - t1); the chain describes it too
        desc = basic_closed_description(P)
        for i in range(-8, 15):
            for j in range(-5, 6):
                x = (F(i, 2), F(j, 2))
                assert all(g.eval(x) >= 0 for g in desc) == (P.eval(x) >= 0 and 1 - x[0] >= 0)
