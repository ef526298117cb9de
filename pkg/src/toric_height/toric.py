"""Point configurations, their monomial parametrizations and binomial ideals.

A configuration ``A = (a_0, ..., a_n)`` of vectors in ``Z^d`` defines the
projective toric variety ``X_{A,alpha}``: the closure of the image of
``t -> [alpha_0 t^{a_0} : ... : alpha_n t^{a_n}]``.  We always normalise to
``a_0 = 0`` and require the remaining points to generate ``Z^d``.
"""

import cmath
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import (CannotLift, InvariantViolation, LatticeNotGenerated,
                     NotOnOrbit, RankDeficient, ZeroTorusCoordinate,
                     ZeroVector)
from .lattice import (extend_to_unimodular_basis, lattice_index,
                      rational_inverse, rational_rank, saturated_kernel_basis,
                      solve_integer_row, vector_gcd)

__all__ = [
    "PointConfig", "Binomial", "SectionData", "validate_config",
    "binomial_generators", "is_irreducible_binomial", "lift_config",
    "section_data", "section_polynomial", "parametrize", "membership",
    "retraction_check", "as_coefficients",
]


@dataclass(frozen=True)
class PointConfig:
    points: tuple
    d: int

    @property
    def n(self):
        return len(self.points) - 1

    @property
    def rows(self):
        """The points ``a_1, ..., a_n`` as the rows of the ``n x d`` matrix."""
        return self.points[1:]

    @property
    def codimension(self):
        return self.n - self.d

    def to_json(self):
        return [list(p) for p in self.points]


@dataclass(frozen=True)
class Binomial:
    """``x^wplus - x^wminus`` in the affine coordinates ``x_j = T_j / T_0``."""

    wplus: tuple
    wminus: tuple

    @classmethod
    def from_vector(cls, w):
        if not any(w):
            raise ZeroVector("binomial exponent must be nonzero")
        return cls(tuple(max(v, 0) for v in w), tuple(max(-v, 0) for v in w))

    @property
    def w(self):
        return tuple(p - m for p, m in zip(self.wplus, self.wminus))

    def homogenized(self):
        """Exponents over ``T_0, ..., T_n`` of the two homogeneous monomials."""
        dp, dm = sum(self.wplus), sum(self.wminus)
        deg = max(dp, dm)
        return (deg - dp,) + self.wplus, (deg - dm,) + self.wminus

    def __str__(self):
        def mono(e):
            parts = [f"T{i}" + (f"^{k}" if k > 1 else "")
                     for i, k in enumerate(e) if k]
            return "*".join(parts) or "1"
        plus, minus = self.homogenized()
        return f"{mono(plus)} - {mono(minus)}"


@dataclass(frozen=True)
class SectionData:
    """Exponent data of the section cutting ``X_A`` out of ``X_{A'}``.

    ``lam`` solves ``e_1 = sum_j lam[j] a'_j``.  The section is, up to the
    alpha prefactor, ``T^first - const * T^second`` with both monomials of
    degree ``k``.
    """

    k: int
    c: tuple
    lam: tuple
    prefactor_exponents: tuple
    clearing_exponents: tuple
    first: tuple
    second: tuple

    def to_json(self):
        return {"k": self.k, "c": list(self.c), "lambda": list(self.lam),
                "prefactor_exponents": list(self.prefactor_exponents),
                "clearing_exponents": list(self.clearing_exponents),
                "monomials": [list(self.first), list(self.second)]}


def validate_config(points, d=None):
    """Normalise ``points`` so ``a_0 = 0`` and check they generate ``Z^d``."""
    pts = [tuple(int(v) for v in p) for p in points]
    if not pts:
        raise ValueError("a configuration needs at least one point")
    if d is None:
        d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise ValueError("all points must lie in the same Z^d")
    base = pts[0]
    pts = tuple(tuple(v - b for v, b in zip(p, base)) for p in pts)
    rows = pts[1:]
    index = lattice_index(rows, d)
    if index == 0:
        raise RankDeficient(
            f"differences span rank {rational_rank(rows) if rows else 0} < {d}")
    if index != 1:
        raise LatticeNotGenerated(index)
    return PointConfig(pts, d)


def is_irreducible_binomial(nu):
    """``x^nu - 1`` is irreducible over the Laurent ring iff ``gcd(nu) == 1``."""
    if not any(nu):
        raise ZeroVector("exponent vector must be nonzero")
    return vector_gcd(nu) == 1


def binomial_generators(A):
    """Binomials cutting out the dense orbit of ``X_{A,1}`` in the torus."""
    W = saturated_kernel_basis(A.rows, ncols=A.d)
    gens = tuple(Binomial.from_vector(w) for w in W)
    for g in gens:
        if not is_irreducible_binomial(g.w):
            raise InvariantViolation(f"kernel vector {g.w} is not primitive")
    return gens


def _lift_with(A, ell):
    pts = ((0,) * (A.d + 1),) + tuple(
        (l,) + a for l, a in zip(ell, A.rows))
    return PointConfig(pts, A.d + 1)


def lift_config(A, index=None):
    """Lift ``A`` to ``A'`` in ``Z^{d+1}`` so that ``X_A = X_{A'} cap {t_1 = 1}``.

    With ``index=j`` the point ``a_j`` gets first coordinate 1 and all others
    0.  By default the smallest ``j`` for which ``A'`` still generates
    ``Z^{d+1}`` is used; that holds exactly when the other points generate
    ``Z^d``, i.e. when the ``j``-th coordinates of a kernel basis are coprime.
    If no single index works, a 0/1 lift vector of smallest weight is tried,
    then a vector read off a unimodular completion of the kernel basis.
    """
    n, d = A.n, A.d
    if n <= d:
        raise CannotLift("codimension 0: the variety is already P^n")
    if index is not None:
        if not 1 <= index <= n:
            raise ValueError(f"index must be in 1..{n}")
        ell = tuple(int(j == index - 1) for j in range(n))
        lifted = _lift_with(A, ell)
        if rational_rank(lifted.rows) < d + 1:
            raise CannotLift(f"lifting a_{index} does not raise the rank")
        return lifted
    W = saturated_kernel_basis(A.rows, ncols=d)

    def generates(ell):
        return vector_gcd(sum(l * w for l, w in zip(ell, wv)) for wv in W) == 1

    for weight in range(1, n + 1):
        for support in combinations(range(n), weight):
            ell = tuple(int(j in support) for j in range(n))
            if generates(ell):
                return _lift_with(A, ell)
    basis = extend_to_unimodular_basis(W, n)
    inv = rational_inverse(basis)
    ell = tuple(int(inv[j][0]) for j in range(n))
    if not generates(ell):
        raise CannotLift("no lift generating Z^{d+1} found")
    return _lift_with(A, ell)


def section_data(A, lifted):
    """Exponent data of the section defining ``X_A`` inside ``X_{A'}``."""
    if lifted.d != A.d + 1 or lifted.n != A.n:
        raise ValueError("second argument must be a lift of the first")
    e1 = (1,) + (0,) * A.d
    lam = solve_integer_row(lifted.rows, e1)
    if not any(lam):
        raise InvariantViolation("zero lambda row")
    total = sum(lam)
    c = (max(0, -total),) + tuple(max(0, -l) for l in lam)
    k = c[0] + sum(max(l, 0) for l in lam)
    first = (c[0],) + tuple(l + cj for l, cj in zip(lam, c[1:]))
    second = (c[0] + total,) + c[1:]
    if sum(first) != k or sum(second) != k:
        raise InvariantViolation("section monomials have different degrees")
    prefactor = (abs(total),) + tuple(abs(l) for l in lam)
    clearing = (max(0, total),) + tuple(max(0, -l) for l in lam)
    return SectionData(k, c, lam, prefactor, clearing, first, second)


def _power_product(values, exps):
    out = Fraction(1) if all(isinstance(v, (int, Fraction)) for v in values) else 1
    for v, e in zip(values, exps):
        if e:
            out *= v ** e
    return out


def section_polynomial(sd, alpha):
    """Coefficients and exponents ``[(coef, exps), (coef, exps)]`` of the section.

    Equals ``C * (T^first - beta_0^{-S} prod beta_j^{lam_j} T^second)`` with
    ``C = beta_0^{max(0,S)} prod beta_j^{max(0,-lam_j)}`` and ``S = sum lam``.
    """
    alpha = as_coefficients(alpha)
    clear = _power_product(alpha, sd.clearing_exponents)
    ratio = _power_product(alpha[1:], sd.lam) / alpha[0] ** sum(sd.lam)
    return [(clear, sd.first), (-clear * ratio, sd.second)]


def as_coefficients(alpha, n=None):
    """Tuple of nonzero coefficients; ints and ``"p/q"`` strings become Fractions."""
    out = []
    for a in alpha:
        if isinstance(a, str):
            a = Fraction(a)
        elif isinstance(a, int):
            a = Fraction(a)
        if a == 0:
            raise ZeroTorusCoordinate("coefficients must be nonzero")
        out.append(a)
    if n is not None and len(out) != n + 1:
        raise ValueError(f"expected {n + 1} coefficients, got {len(out)}")
    return tuple(out)


def _monomial(t, a):
    out = 1
    for ti, ai in zip(t, a):
        if ai:
            out = out * ti ** ai
    return out


def _torus_point(t):
    t = tuple(Fraction(v) if isinstance(v, (int, str)) else v for v in t)
    if any(v == 0 for v in t):
        raise ZeroTorusCoordinate("torus coordinates must be nonzero")
    return t


def parametrize(A, alpha, t):
    """Image ``[alpha_0 t^{a_0} : ... : alpha_n t^{a_n}]`` of a torus point."""
    alpha = as_coefficients(alpha, A.n)
    t = _torus_point(t)
    if len(t) != A.d:
        raise ValueError(f"expected a point of the {A.d}-torus")
    return tuple(al * _monomial(t, a) for al, a in zip(alpha, A.points))


def _close(a, b, rel=1e-9):
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    return cmath.isclose(complex(a), complex(b), rel_tol=rel, abs_tol=0.0)


def membership(A, alpha, x, generators=None):
    """Whether ``x`` (all coordinates nonzero) lies on ``X_{A,alpha}``."""
    alpha = as_coefficients(alpha, A.n)
    x = _torus_point(x)
    gens = binomial_generators(A) if generators is None else generators
    base = x[0] / alpha[0]
    y = [xi / ai / base for xi, ai in zip(x[1:], alpha[1:])]
    return all(_close(_monomial(y, g.wplus), _monomial(y, g.wminus))
               for g in gens)


def retraction_check(A, x):
    """Recover ``t`` from a point ``x`` on the dense orbit of ``X_{A,1}``.

    Uses the monomial retraction ``s_i -> prod_j x_j^{lam_ij}`` where
    ``e_i = sum_j lam_ij a_j``, then verifies ``t^{a_j} = x_j / x_0``.
    """
    x = _torus_point(x)
    if len(x) != A.n + 1:
        raise ValueError("point has the wrong number of coordinates")
    y = [xi / x[0] for xi in x[1:]]
    t = []
    for i in range(A.d):
        e = tuple(int(i == j) for j in range(A.d))
        lam = solve_integer_row(A.rows, e)
        t.append(_monomial(y, lam))
    t = tuple(t)
    for yj, a in zip(y, A.rows):
        if not _close(_monomial(t, a), yj):
            raise NotOnOrbit("point is not on the dense orbit of X_{A,1}")
    return t
