"""Tropical vertices of the roof function of a lifted configuration.

For ``A' = (a'_0, ..., a'_n)`` in ``Z^m`` and coefficients ``alpha`` the roof
function is ``psi(s) = max_i (log|alpha_i| + <a'_i, s>)``.  Its corner locus
is a tropical hypersurface; the points where it has a zero-dimensional cell
carry the atoms of the current measure, with mass equal to the normalized
volume of the cell dual to the vertex.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import DegenerateArrangement, MassImbalance
from .geometry import convex_hull, normalized_volume
from .lattice import determinant, lattice_index, rational_inverse, rational_rank
from .loglinear import ApproxLogNumber, LogLinearNumber, log_abs, sign_of

__all__ = [
    "TropicalHyperplane", "TropicalVertex", "CurrentMeasure", "RoofTerm",
    "log_moduli", "roof_terms", "roof_value", "build_hyperplanes",
    "enumerate_vertices", "enumerate_vertices_from_pairs", "current_measure",
]


@dataclass(frozen=True)
class RoofTerm:
    index: int
    point: tuple
    value: object  # log|alpha_index|


@dataclass(frozen=True)
class TropicalHyperplane:
    """``{s : <a'_i - a'_j, s> = L_j - L_i}`` where terms ``i`` and ``j`` tie."""

    i: int
    j: int
    normal: tuple
    offset: object


@dataclass(frozen=True)
class TropicalVertex:
    coords: tuple
    active: tuple
    pairs: tuple
    local_config: tuple
    local_degree: int
    lattice_index: int
    value: object

    def to_json(self):
        return {"coords": [_scalar_json(c) for c in self.coords],
                "active": list(self.active),
                "local_config": [list(p) for p in self.local_config],
                "mass": self.local_degree,
                "lattice_index": self.lattice_index}


@dataclass(frozen=True)
class CurrentMeasure:
    atoms: tuple  # TropicalVertex instances
    total: int
    expected: int
    merged: tuple  # (kept index, dropped index) for duplicate points

    def to_json(self):
        return {"atoms": [v.to_json() for v in self.atoms],
                "total_mass": self.total, "expected_mass": self.expected,
                "merged_duplicates": [list(p) for p in self.merged]}


def _scalar_json(x):
    if hasattr(x, "to_json"):
        return x.to_json()
    return float(x)


def _is_exact(alpha):
    return all(isinstance(a, (int, Fraction)) for a in alpha)


def log_moduli(alpha):
    """``log|alpha_i|`` as exact log-linear numbers when possible."""
    if _is_exact(alpha):
        return tuple(log_abs(a) for a in alpha)
    return tuple(ApproxLogNumber.log_abs(a) for a in alpha)


def _zero_like(x):
    return ApproxLogNumber.zero() if isinstance(x, ApproxLogNumber) else LogLinearNumber.zero()


def _pair(vector, s, zero):
    out = zero
    for a, x in zip(vector, s):
        if a:
            out = out + x * a
    return out


def roof_terms(lifted, alpha):
    """Merged terms of the roof; duplicate points keep the larger coefficient."""
    logs = log_moduli(alpha)
    best = {}
    merged = []
    for i, (p, L) in enumerate(zip(lifted.points, logs)):
        if p in best:
            j = best[p]
            if sign_of(L - logs[j]) > 0:
                merged.append((i, j))
                best[p] = i
            else:
                merged.append((j, i))
        else:
            best[p] = i
    terms = tuple(RoofTerm(i, lifted.points[i], logs[i])
                  for i in sorted(best.values()))
    return terms, tuple(merged)


def roof_value(terms, s):
    zero = _zero_like(terms[0].value)
    best = None
    for t in terms:
        v = t.value + _pair(t.point, s, zero)
        if best is None or sign_of(v - best) > 0:
            best = v
    return best


def build_hyperplanes(lifted, alpha):
    """All pairwise tie loci of the roof terms."""
    terms, _ = roof_terms(lifted, alpha)
    out = []
    for a, b in combinations(terms, 2):
        normal = tuple(x - y for x, y in zip(a.point, b.point))
        out.append(TropicalHyperplane(a.index, b.index, normal, b.value - a.value))
    return tuple(out)


def _solve(normals, rhs):
    inv = rational_inverse(normals)
    zero = _zero_like(rhs[0])
    return tuple(_pair(row, rhs, zero) for row in inv)


def _add_vertex(found, coords):
    for c in found:
        if all(sign_of(x - y) == 0 for x, y in zip(c, coords)):
            return False
    found.append(coords)
    return True


def _make_vertex(terms, s, m):
    zero = _zero_like(terms[0].value)
    vals = [t.value + _pair(t.point, s, zero) for t in terms]
    top = vals[0]
    for v in vals[1:]:
        if sign_of(v - top) > 0:
            top = v
    active = [t for t, v in zip(terms, vals) if sign_of(v - top) == 0]
    pts = [t.point for t in active]
    base = pts[0]
    if rational_rank([tuple(x - y for x, y in zip(p, base)) for p in pts[1:]]) < m:
        return None
    P = convex_hull(pts)
    idx = lattice_index([tuple(x - y for x, y in zip(p, base)) for p in pts[1:]], m)
    return TropicalVertex(
        coords=tuple(s),
        active=tuple(t.index for t in active),
        pairs=tuple((a.index, b.index) for a, b in combinations(active, 2)),
        local_config=tuple(pts),
        local_degree=normalized_volume(P),
        lattice_index=idx,
        value=top,
    )


def _sort_key(v):
    return tuple(float(c) for c in v.coords) + (v.active,)


def enumerate_vertices(lifted, alpha):
    """Vertices of the roof's corner locus, sorted by coordinates.

    Candidates come from affinely independent ``(m+1)``-subsets of the merged
    terms, where all ``m+1`` terms tie; a candidate is kept when no other term
    exceeds the tied value.
    """
    terms, _ = roof_terms(lifted, alpha)
    m = lifted.d
    if len(terms) < m + 1:
        raise DegenerateArrangement("fewer distinct points than m + 1")
    found = []
    vertices = []
    for subset in combinations(terms, m + 1):
        t0 = subset[0]
        normals = [tuple(x - y for x, y in zip(t.point, t0.point))
                   for t in subset[1:]]
        if determinant(normals) == 0:
            continue
        s = _solve(normals, [t0.value - t.value for t in subset[1:]])
        zero = _zero_like(t0.value)
        v0 = t0.value + _pair(t0.point, s, zero)
        if any(sign_of(t.value + _pair(t.point, s, zero) - v0) > 0 for t in terms):
            continue
        if not _add_vertex(found, s):
            continue
        vert = _make_vertex(terms, s, m)
        if vert is None:
            raise DegenerateArrangement(f"active set at {s} is not full-dimensional")
        vertices.append(vert)
    return tuple(sorted(vertices, key=_sort_key))


def enumerate_vertices_from_pairs(lifted, alpha):
    """Reference enumeration straight from the hyperplane arrangement.

    Intersects every ``m``-subset of tie hyperplanes with independent normals
    and keeps the points where the active pairs have full-rank normals.  Much
    slower than ``enumerate_vertices``; meant for cross-checking.
    """
    terms, _ = roof_terms(lifted, alpha)
    hyper = build_hyperplanes(lifted, alpha)
    m = lifted.d
    found = []
    out = []
    for subset in combinations(hyper, m):
        normals = [h.normal for h in subset]
        if determinant(normals) == 0:
            continue
        s = _solve(normals, [h.offset for h in subset])
        if not _add_vertex(found, s):
            continue
        zero = _zero_like(terms[0].value)
        vals = {t.index: t.value + _pair(t.point, s, zero) for t in terms}
        top = roof_value(terms, s)
        on = [h for h in hyper
              if sign_of(vals[h.i] - top) == 0 and sign_of(vals[h.j] - top) == 0]
        if on and rational_rank([h.normal for h in on]) == m:
            active = sorted({h.i for h in on} | {h.j for h in on})
            out.append((s, tuple(active)))
    return tuple(sorted(out, key=lambda x: tuple(float(c) for c in x[0])))


def current_measure(lifted, alpha):
    """Atoms and masses of the current measure; masses must sum to deg X_{A'}."""
    _, merged = roof_terms(lifted, alpha)
    atoms = enumerate_vertices(lifted, alpha)
    total = sum(v.local_degree for v in atoms)
    expected = normalized_volume(convex_hull(lifted.points))
    if total != expected:
        raise MassImbalance(total, expected)
    return CurrentMeasure(atoms, total, expected, merged)
