from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from battery import random_instances
from toric_height.arrangement import (build_hyperplanes, current_measure,
                                      enumerate_vertices,
                                      enumerate_vertices_from_pairs, roof_terms,
                                      roof_value)
from toric_height.geometry import toric_degree
from toric_height.loglinear import log_abs
from toric_height.toric import PointConfig, lift_config, validate_config

CONIC = validate_config([(0,), (1,), (2,)])
CONIC_LIFT = lift_config(CONIC)
INSTANCES = random_instances(40, seed=7, max_n=4)


def test_conic_vertex():
    (v,) = enumerate_vertices(CONIC_LIFT, (1, 1, 2))
    assert v.coords == (-log_abs(2), log_abs(1))
    assert v.active == (0, 1, 2)
    assert v.local_degree == 1
    assert v.lattice_index == 1


def test_conic_vertex_with_literal_lift():
    L = lift_config(CONIC, index=1)
    (v,) = enumerate_vertices(L, (1, 1, 2))
    half = log_abs(2) * Fraction(1, 2)
    assert v.coords == (half, -half)
    assert v.local_degree == 2
    assert v.lattice_index == 2


def test_hyperplanes_of_conic():
    hs = build_hyperplanes(CONIC_LIFT, (2, 1, 1))
    assert [(h.i, h.j) for h in hs] == [(0, 1), (0, 2), (1, 2)]
    assert hs[0].normal == (0, -1)
    assert hs[0].offset == -log_abs(2)


def test_square_has_two_vertices():
    # two unimodular triangles once the roof is generic
    A = PointConfig(((0, 0), (1, 0), (0, 1), (1, 1)), 2)
    verts = enumerate_vertices(A, (1, 1, 1, 5))
    assert len(verts) == 2
    assert sum(v.local_degree for v in verts) == 2
    # the tie 1*1 = 1*1 splits the square along the other diagonal
    verts = enumerate_vertices(A, (1, 1, 1, 1))
    assert len(verts) == 1 and verts[0].local_degree == 2


def test_duplicate_points_are_merged():
    A = PointConfig(((0,), (1,), (1,)), 1)
    terms, merged = roof_terms(A, (1, 2, 3))
    assert [t.index for t in terms] == [0, 2]
    assert merged == ((2, 1),)
    m = current_measure(A, (1, 2, 3))
    assert m.merged == ((2, 1),)
    assert m.total == 1


@pytest.mark.parametrize("A,alpha", INSTANCES)
def test_enumeration_matches_pair_oracle(A, alpha):
    L = lift_config(A)
    fast = [(v.coords, v.active) for v in enumerate_vertices(L, alpha)]
    slow = list(enumerate_vertices_from_pairs(L, alpha))
    assert fast == slow


@pytest.mark.parametrize("A,alpha", INSTANCES)
def test_vertices_sit_on_the_roof(A, alpha):
    L = lift_config(A)
    terms, _ = roof_terms(L, alpha)
    for v in enumerate_vertices(L, alpha):
        top = roof_value(terms, v.coords)
        assert top == v.value
        assert len(v.active) >= L.d + 1


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(INSTANCES), st.integers(2, 3))
def test_mass_balance_and_scaling(inst, m):
    A, alpha = inst
    L = lift_config(A)
    base = current_measure(L, alpha)
    assert base.total == toric_degree(L)
    scaled = current_measure(L, [a ** m for a in alpha])
    assert [v.local_degree for v in scaled.atoms] == [v.local_degree for v in base.atoms]
    assert [tuple(c * m for c in v.coords) for v in base.atoms] == \
        [v.coords for v in scaled.atoms]
