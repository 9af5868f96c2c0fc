from fractions import Fraction as F

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from spectrakit import catalog
from spectrakit.linmat import (
    DegenerateFaceError,
    LinMatPoly,
    NotInSpectrahedronError,
    NotSymmetricError,
    char_poly_coeffs,
    charpoly_member,
    det_poly,
    eval_pencil,
    exposing_functional,
    face_of_point,
    is_psd_exact,
    spectrahedron_member,
)
from spectrakit.parse import parse_poly

A = catalog.CUBIC_PENCIL
sym_matrices = st.lists(st.integers(-4, 4), min_size=6, max_size=6).map(
    lambda e: [[e[0], e[1], e[2]], [e[1], e[3], e[4]], [e[2], e[4], e[5]]]
)


def sympy_charpoly_coeffs(A, x):
    """Oracle: coefficients of det(A(x) - s I) via sympy."""
    s = sympy.Symbol("s")
    M = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in row] for row in eval_pencil(A, x)])
    poly = sympy.Poly((M - s * sympy.eye(M.rows)).det(), s)
    return [poly.coeff_monomial(s**i) for i in range(M.rows + 1)]


class TestPencil:
    def test_eval(self):
        assert eval_pencil(A, (0, 0)) == ((2, 0, 1), (0, 1, 0), (1, 0, 1))
        assert eval_pencil(A, (1, 0)) == ((0, 0, 0), (0, 0, 0), (0, 0, 1))

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            eval_pencil(A, (1,))

    def test_rejects_nonsymmetric(self):
        with pytest.raises(NotSymmetricError):
            LinMatPoly((((1, 2), (0, 1)),))

    def test_json_round_trip(self):
        assert LinMatPoly.from_json(A.to_json()) == A

    def test_json_schema_errors(self):
        with pytest.raises(ValueError):
            LinMatPoly.from_json({"k": 2, "n": 1, "A": [[[1, 0], [0, 1]]]})
        with pytest.raises(ValueError):
            LinMatPoly.from_json({"k": 3, "n": 0, "A": [[[1, 0], [0, 1]]]})


class TestCharPoly:
    def test_cubic_pencil(self):
        c = char_poly_coeffs(A).c
        assert c[0] == parse_poly("t1^3 - t1^2 - t1 - t2^2 + 1")
        assert c[1] == parse_poly("-t1^2 + 5*t1 + t2^2 - 4")
        assert c[2] == parse_poly("4 - 3*t1", 2)

    def test_methods_agree(self):
        assert char_poly_coeffs(A, "faddeev") == char_poly_coeffs(A, "cofactor")

    def test_det(self):
        assert det_poly(A) == parse_poly(catalog.CUBIC)
        assert det_poly(LinMatPoly((((1, 0), (0, 1)), ((0, 0), (0, 0))))) == parse_poly("1", 1)
        assert det_poly(LinMatPoly((((1, 0), (0, 1)), ((1, 0), (0, -1))))) == parse_poly("1 - t1^2")

    @settings(max_examples=25, deadline=None)
    @given(sym_matrices, sym_matrices, st.tuples(st.fractions(-3, 3, max_denominator=5), st.fractions(-3, 3, max_denominator=5)))
    def test_matches_sympy(self, a1, a2, x):
        pencil = LinMatPoly(([[2, 1, 0], [1, 2, 0], [0, 0, 1]], a1, a2))
        c = char_poly_coeffs(pencil).full()
        assert [ci.eval(x) for ci in c] == sympy_charpoly_coeffs(pencil, x)


class TestPSD:
    def test_examples(self):
        assert is_psd_exact(((2, 0, 1), (0, 1, 0), (1, 0, 1)))
        assert not is_psd_exact(((1, 0), (0, -1)))
        assert is_psd_exact(((0, 0), (0, 0)))

    def test_rejects_nonsymmetric(self):
        with pytest.raises(NotSymmetricError):
            is_psd_exact(((1, 1), (0, 1)))

    @settings(max_examples=60, deadline=None)
    @given(sym_matrices, st.integers(0, 3), st.integers(0, 2))
    def test_against_eigenvalues(self, m, rank, shift):
        # B B^T has exact zero eigenvalues when rank < 3; the shift makes negative ones
        b = np.array(m, dtype=float)[:, :rank]
        G = np.rint(b @ b.T) - shift * np.eye(3)
        M = [[F(int(v)) for v in row] for row in G]
        lo = np.linalg.eigvalsh(G)[0]
        if abs(lo) > 1e-9 or (shift == 0 and rank < 3):
            assert is_psd_exact(M) == (lo >= -1e-9)

    def test_membership_examples(self):
        assert spectrahedron_member(A, (0, 0))
        assert not spectrahedron_member(A, (2, 0))
        assert spectrahedron_member(A, (1, 0))

    def test_charpoly_member_upto(self):
        c = char_poly_coeffs(A)
        assert charpoly_member(c, (0, 0)) and charpoly_member(c, (0, 0), upto=2)
        # (5, 0): c0 >= 0 and -c1 >= 0, but c2 < 0
        assert charpoly_member(c, (5, 0), upto=2) and not charpoly_member(c, (5, 0))
        assert not spectrahedron_member(A, (5, 0))


class TestFaces:
    def test_extreme_point(self):
        face = face_of_point(A, (1, 0))
        assert len(face.kernel) == 2 and face.dimension == 0
        assert face.in_hull((1, 0)) and not face.in_hull((1, F(1, 10)))

    def test_interior(self):
        face = face_of_point(A, (0, 0))
        assert face.full and face.dimension == 2 and face.in_hull((7, -3))
        with pytest.raises(DegenerateFaceError):
            exposing_functional(face, A)

    def test_smooth_boundary(self):
        face = face_of_point(A, (0, 1))
        assert len(face.kernel) == 1 and face.dimension == 0

    def test_outside(self):
        with pytest.raises(NotInSpectrahedronError):
            face_of_point(A, (2, 0))

    def test_exposing_functional_at_node(self):
        ell = exposing_functional(face_of_point(A, (1, 0)), A)
        assert ell.degree() == 1 and ell.eval((1, 0)) == 0
        zeros = []
        for i in range(-8, 15):
            for j in range(-5, 6):
                x = (F(i, 2), F(j, 2))
                if spectrahedron_member(A, x):
                    assert ell.eval(x) >= 0
                    if ell.eval(x) == 0:
                        zeros.append(x)
        assert zeros == [(1, 0)]

    def test_diagonal_pencil(self):
        D = LinMatPoly((((0, 0), (0, 1)), ((1, 0), (0, -1))))
        assert exposing_functional(face_of_point(D, (0,)), D) == parse_poly("t1")

    def test_segment_face(self):
        # S = [0,1] x [0,1]; the bottom edge is a face of dimension 1
        sq = LinMatPoly(
            (
                ((0, 0, 0, 0), (0, 1, 0, 0), (0, 0, 0, 0), (0, 0, 0, 1)),
                ((1, 0, 0, 0), (0, -1, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0)),
                ((0, 0, 0, 0), (0, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, -1)),
            )
        )
        face = face_of_point(sq, (F(1, 2), 0))
        assert face.dimension == 1 and face.in_hull((5, 0)) and not face.in_hull((0, 1))
        assert exposing_functional(face, sq) == parse_poly("t2", 2)

    def test_degenerate_functional_reported(self):
        # A(x) = diag(0) for every x: S = R and every point has a full kernel
        Z = LinMatPoly((((0,),), ((0,),)))
        with pytest.raises(DegenerateFaceError):
            exposing_functional(face_of_point(Z, (3,)), Z)
