from fractions import Fraction as F

from spectrakit import catalog
from spectrakit.parse import parse_poly
from spectrakit.sampling import in_set, rational_grid, sample_set


def test_samples_are_exact_members():
    gens = catalog.polys(catalog.CORNER_SET_GENERATORS)
    pts = sample_set(gens, catalog.CORNER_SET_BBOX, 50, seed=3)
    assert len(pts) == 50
    assert all(isinstance(v, F) for x in pts for v in x)
    assert all(in_set(gens, x) for x in pts)


def test_sampling_is_seeded():
    gens = [parse_poly("1 - t1^2 - t2^2")]
    box = ((-1, 1), (-1, 1))
    assert sample_set(gens, box, 10, seed=1) == sample_set(gens, box, 10, seed=1)
    assert sample_set(gens, box, 10, seed=1) != sample_set(gens, box, 10, seed=2)


def test_grid():
    grid = rational_grid(((-4, 7), (-2.5, 2.5)), 201)
    assert len(grid) == 201 * 201
    assert grid[0] == (-4, F(-5, 2)) and grid[-1] == (7, F(5, 2))
    assert (F(3, 2), F(0)) in grid  # centre point, step 11/200
