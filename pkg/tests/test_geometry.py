import math
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.spatial import ConvexHull

from toric_height.errors import NotFullDimensional
from toric_height.geometry import convex_hull, normalized_volume, toric_degree
from toric_height.toric import validate_config


def simplex(m, k=1):
    return [tuple(0 for _ in range(m))] + [tuple(k * int(i == j) for j in range(m))
                                           for i in range(m)]


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_unit_and_dilated_simplex(m):
    assert normalized_volume(convex_hull(simplex(m))) == 1
    assert normalized_volume(convex_hull(simplex(m, 3))) == 3 ** m


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_cube(m):
    cube = list(product(range(2), repeat=m))
    assert normalized_volume(convex_hull(cube)) == math.factorial(m)


def test_vertices_and_interior_points():
    P = convex_hull([(0, 0), (2, 0), (0, 2), (1, 1), (1, 0)])
    assert set(P.vertices) == {(0, 0), (2, 0), (0, 2)}
    assert normalized_volume(P) == 4


def test_relative_volume():
    assert normalized_volume(convex_hull([(0, 0), (2, 1)]), relative=True) == 1
    assert normalized_volume(convex_hull([(0, 0), (2, 2)]), relative=True) == 2
    P = convex_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0)])
    assert P.dim == 2 and normalized_volume(P, relative=True) == 1
    with pytest.raises(NotFullDimensional):
        normalized_volume(P)


def test_single_point():
    assert normalized_volume(convex_hull([(3, 4)]), relative=True) == 1


def test_toric_degrees():
    assert toric_degree(validate_config([(0,), (1,), (2,)])) == 2
    assert toric_degree(validate_config([(0,), (1,), (2,), (3,)])) == 3
    assert toric_degree(validate_config([(0, 0), (1, 0), (0, 1), (1, 1)])) == 2
    assert toric_degree(validate_config([(), ()], d=0)) == 1


points3 = st.lists(st.tuples(*[st.integers(-2, 2)] * 3), min_size=4, max_size=8,
                   unique=True)
points2 = st.lists(st.tuples(*[st.integers(-3, 3)] * 2), min_size=3, max_size=8,
                   unique=True)


@settings(max_examples=60, deadline=None)
@given(st.one_of(points2, points3))
def test_volume_matches_scipy(pts):
    m = len(pts[0])
    arr = np.array(pts, dtype=float)
    if np.linalg.matrix_rank(arr[1:] - arr[0]) < m:
        return
    expected = ConvexHull(arr).volume * math.factorial(m)
    assert normalized_volume(convex_hull(pts)) == round(expected)
    assert abs(expected - round(expected)) < 1e-6


@settings(max_examples=40, deadline=None)
@given(points3, st.sampled_from([
    ((1, 1, 0), (0, 1, 0), (0, 0, 1)),
    ((1, 0, 2), (0, 1, 0), (0, 0, 1)),
    ((0, 1, 0), (1, 0, 0), (3, -1, 1)),
]), st.tuples(*[st.integers(-3, 3)] * 3))
def test_volume_is_unimodular_invariant(pts, U, shift):
    arr = np.array(pts)
    if np.linalg.matrix_rank(arr[1:] - arr[0]) < 3:
        return
    moved = [tuple(int(v) for v in np.array(U) @ p + np.array(shift)) for p in pts]
    assert normalized_volume(convex_hull(moved)) == normalized_volume(convex_hull(pts))
