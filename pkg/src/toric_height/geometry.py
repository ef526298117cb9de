"""Exact convex hulls and normalized lattice volumes of small point sets.

Everything is done in integer arithmetic.  Facets are found by brute force
over affinely independent subsets, which is fine at desk scale (a handful of
points, dimension at most 8).
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .errors import NotFullDimensional
from .lattice import (lattice_index, rational_rank, saturated_kernel_basis,
                      solve_integer_row)

__all__ = ["LatticePolytope", "convex_hull", "normalized_volume",
           "toric_degree", "MAX_DIMENSION"]

MAX_DIMENSION = 8


@dataclass(frozen=True)
class LatticePolytope:
    ambient: int
    dim: int
    vertices: tuple
    # points of the input, expressed in a basis of the saturated lattice of
    # their affine span (origin at the first vertex)
    local_points: tuple
    # index of the lattice generated by the points inside that saturation
    index: int

    @property
    def full_dimensional(self):
        return self.dim == self.ambient


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _span_basis(diffs, m):
    """Basis of the saturation of the lattice spanned by ``diffs`` in Z^m."""
    indep = []
    for v in diffs:
        if rational_rank(indep + [v]) > len(indep):
            indep.append(v)
    r = len(indep)
    if r == m:
        return tuple(tuple(int(i == j) for j in range(m)) for i in range(m))
    normals = saturated_kernel_basis([tuple(col) for col in zip(*indep)], ncols=r)
    return saturated_kernel_basis([tuple(col) for col in zip(*normals)],
                                  ncols=len(normals))


@lru_cache(maxsize=4096)
def _facets(points):
    """Facets ``(eta, c)`` with ``<eta, x> <= c`` of a full-dimensional set in Z^r."""
    r = len(points[0])
    if r == 1:
        xs = [p[0] for p in points]
        return (((1,), max(xs)), ((-1,), -min(xs)))
    found = set()
    for subset in combinations(points, r):
        diffs = [_sub(q, subset[0]) for q in subset[1:]]
        if rational_rank(diffs) < r - 1:
            continue
        (eta,) = saturated_kernel_basis([tuple(col) for col in zip(*diffs)],
                                        ncols=r - 1)
        c = _dot(eta, subset[0])
        vals = [_dot(eta, q) for q in points]
        if all(v <= c for v in vals):
            found.add((eta, c))
        elif all(v >= c for v in vals):
            found.add((tuple(-e for e in eta), -c))
    return tuple(sorted(found))


def _vertices(points):
    r = len(points[0])
    if r == 0:
        return (points[0],)
    facets = _facets(points)
    verts = []
    for q in points:
        normals = [eta for eta, c in facets if _dot(eta, q) == c]
        if normals and rational_rank(normals) == r:
            verts.append(q)
    return tuple(verts)


def convex_hull(points):
    """Convex hull of a finite set of lattice points in Z^m (m <= 8)."""
    pts = tuple(sorted(set(tuple(int(v) for v in p) for p in points)))
    if not pts:
        raise ValueError("need at least one point")
    m = len(pts[0])
    if m > MAX_DIMENSION:
        raise ValueError(f"dimension {m} exceeds {MAX_DIMENSION}")
    origin = pts[0]
    diffs = [_sub(p, origin) for p in pts[1:]]
    dim = rational_rank(diffs) if diffs else 0
    if dim == 0:
        return LatticePolytope(m, 0, (origin,), ((),), 1)
    basis = _span_basis(diffs, m)
    local = tuple(solve_integer_row(basis, _sub(p, origin)) for p in pts)
    index = lattice_index([q for q in local[1:]], dim)
    local_verts = set(_vertices(local))
    verts = tuple(p for p, q in zip(pts, local) if q in local_verts)
    return LatticePolytope(m, dim, verts, local, index)


@lru_cache(maxsize=8192)
def _nvol(points):
    r = len(points[0])
    if r == 0:
        return 1
    if r == 1:
        xs = [p[0] for p in points]
        return max(xs) - min(xs)
    apex = min(_vertices(points))
    total = 0
    for eta, c in _facets(points):
        height = c - _dot(eta, apex)
        if height == 0:
            continue
        on = [q for q in points if _dot(eta, q) == c]
        base = on[0]
        hyper = saturated_kernel_basis([(e,) for e in eta], ncols=1)
        face = tuple(sorted(set(solve_integer_row(hyper, _sub(q, base))
                                for q in on)))
        total += height * _nvol(face)
    return total


def normalized_volume(P, relative=False):
    """``dim! * volume`` of ``P``, an integer.

    The volume is measured in the lattice of ``Z^m`` (``relative=False``,
    requires a full-dimensional polytope) or in the saturation of the
    lattice of its affine span (``relative=True``).
    """
    if not relative and not P.full_dimensional:
        raise NotFullDimensional(
            f"polytope has dimension {P.dim} in Z^{P.ambient}")
    if P.dim == 0:
        return 1
    # local points may have redundant members; the fan only needs the hull
    return _nvol(tuple(sorted(P.local_points)))


def toric_degree(A):
    """Degree of ``X_{A,1}`` in P^n: the normalized volume of ``conv(A)``."""
    return normalized_volume(convex_hull(A.points))
