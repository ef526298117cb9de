"""Exact integer and rational linear algebra on small dense matrices.

Matrices are plain row sequences of Python ints (or Fractions for the
rational helpers).  Functions return tuples of tuples so results can be
hashed and cached.
"""

from fractions import Fraction
from functools import reduce
from math import gcd

from .errors import NotInLattice, NotSaturated, RankDeficient

__all__ = [
    "xgcd", "identity", "matmul", "transpose", "hermite_normal_form",
    "is_hermite_normal_form", "saturated_kernel_basis",
    "extend_to_unimodular_basis", "solve_integer_row", "rational_rank",
    "rational_inverse", "determinant", "lattice_index", "vector_gcd",
    "solve_rational_row",
]


def _freeze(M):
    return tuple(tuple(r) for r in M)


def xgcd(a, b):
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def vector_gcd(v):
    return reduce(gcd, v, 0)


def identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(M, ncols=None):
    if not M:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*M)) if M[0] else tuple()


def matmul(A, B):
    Bt = list(zip(*B)) if B and B[0] else []
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        if len(row) != inner:
            raise ValueError("shape mismatch")
        out.append(tuple(sum(x * y for x, y in zip(row, col)) for col in Bt)
                   if cols else ())
    return tuple(out)


def hermite_normal_form(M, ncols=None):
    """Row Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``H == U @ M``.  ``H`` is in
    row echelon form, pivots are positive and every entry above a pivot lies
    in ``[0, pivot)``.  Zero rows sit at the bottom.
    """
    m = len(M)
    n = len(M[0]) if m else (ncols or 0)
    H = [list(map(int, r)) for r in M]
    U = [list(r) for r in identity(m)]
    r = 0
    for c in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            b = H[i][c]
            if b == 0:
                continue
            a = H[r][c]
            g, x, y = xgcd(a, b)
            p, q = -b // g, a // g
            for R in (H, U):
                ri, rr = R[i], R[r]
                R[r] = [x * u + y * v for u, v in zip(rr, ri)]
                R[i] = [p * u + q * v for u, v in zip(rr, ri)]
        piv = H[r][c]
        if piv == 0:
            continue
        if piv < 0:
            H[r] = [-v for v in H[r]]
            U[r] = [-v for v in U[r]]
            piv = -piv
        for i in range(r):
            f = H[i][c] // piv
            if f:
                H[i] = [u - f * v for u, v in zip(H[i], H[r])]
                U[i] = [u - f * v for u, v in zip(U[i], U[r])]
        r += 1
    return _freeze(H), _freeze(U)


def _pivots(H):
    piv = []
    for row in H:
        nz = [j for j, v in enumerate(row) if v]
        if not nz:
            break
        piv.append(nz[0])
    return piv


def is_hermite_normal_form(H):
    piv = _pivots(H)
    rank = len(piv)
    if any(any(row) for row in H[rank:]):
        return False
    for i, c in enumerate(piv):
        if H[i][c] <= 0 or (i and c <= piv[i - 1]):
            return False
        if any(not 0 <= H[k][c] < H[i][c] for k in range(i)):
            return False
    return True


def rational_rank(M):
    rows = [[Fraction(v) for v in r] for r in M]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        p = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[rank], rows[p] = rows[p], rows[rank]
        for i in range(rank + 1, len(rows)):
            f = rows[i][c] / rows[rank][c]
            if f:
                rows[i] = [u - f * v for u, v in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def determinant(M):
    """Exact determinant of a square matrix."""
    n = len(M)
    rows = [[Fraction(v) for v in r] for r in M]
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        det *= rows[c][c]
        for i in range(c + 1, n):
            f = rows[i][c] / rows[c][c]
            if f:
                rows[i] = [u - f * v for u, v in zip(rows[i], rows[c])]
    return det


def rational_inverse(M):
    n = len(M)
    aug = [[Fraction(v) for v in r] + [Fraction(int(i == j)) for j in range(n)]
           for i, r in enumerate(M)]
    for c in range(n):
        p = next((i for i in range(c, n) if aug[i][c]), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        aug[c], aug[p] = aug[p], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [v * inv for v in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [u - f * v for u, v in zip(aug[i], aug[c])]
    return tuple(tuple(r[n:]) for r in aug)


def saturated_kernel_basis(A, ncols=None):
    """Basis of ``{w in Z^n : w^T A = 0}`` for an ``n x d`` matrix of rank d.

    The basis is returned in Hermite normal form, so it is canonical for the
    lattice: first nonzero entry of each vector is positive.
    """
    n = len(A)
    d = len(A[0]) if n else (ncols or 0)
    H, U = hermite_normal_form(A, ncols=d)
    rank = len(_pivots(H))
    if rank < d:
        raise RankDeficient(f"matrix has rank {rank} < {d}")
    K = U[rank:]
    if not K:
        return ()
    Hk, _ = hermite_normal_form(K)
    return tuple(r for r in Hk if any(r))


def extend_to_unimodular_basis(W, n):
    """Complete the rows of ``W`` to a basis of ``Z^n`` (determinant +-1)."""
    W = _freeze(W)
    k = len(W)
    if k == 0:
        return identity(n)
    if any(len(w) != n for w in W):
        raise ValueError("vectors must have length n")
    H, U = hermite_normal_form(transpose(W))
    top = H[:k]
    if any(top[i][j] != int(i == j) for i in range(k) for j in range(k)):
        raise NotSaturated("vectors do not span a saturated sublattice")
    # U @ W^T = [I; 0]  =>  W^T = U^{-1}[:, :k], so the rows of U^{-T} start with W.
    Uinv = rational_inverse(U)
    basis = tuple(tuple(int(Uinv[j][i]) for j in range(n)) for i in range(n))
    assert basis[:k] == W
    return basis


def solve_integer_row(A, target):
    """Integer ``lam`` with ``sum_j lam[j] * A[j] == target``.

    Canonical choice: back-substitution through the Hermite form ``U A = H``
    with every free coordinate set to zero, then ``lam = mu U``.
    """
    target = [int(t) for t in target]
    H, U = hermite_normal_form(A, ncols=len(target))
    piv = _pivots(H)
    mu = [0] * len(A)
    resid = list(target)
    for i, c in enumerate(piv):
        q, rem = divmod(resid[c], H[i][c])
        if rem:
            raise NotInLattice(f"{tuple(target)} is not in the row lattice")
        mu[i] = q
        if q:
            resid = [r - q * h for r, h in zip(resid, H[i])]
    if any(resid):
        raise NotInLattice(f"{tuple(target)} is not in the row lattice")
    return tuple(sum(mu[i] * U[i][j] for i in range(len(A)))
                 for j in range(len(A)))


def solve_rational_row(A, target):
    """Rational ``lam`` with ``sum_j lam[j] * A[j] == target``, free vars 0.

    Returns None when the target is not in the rational row span.
    """
    n = len(A)
    d = len(target)
    # columns of the system are the rows of A: solve A^T lam = target
    rows = [[Fraction(A[j][i]) for j in range(n)] + [Fraction(target[i])]
            for i in range(d)]
    piv = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, d) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(d):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [u - f * v for u, v in zip(rows[i], rows[r])]
        piv.append(c)
        r += 1
    if any(rows[i][n] for i in range(r, d)):
        return None
    lam = [Fraction(0)] * n
    for i, c in enumerate(piv):
        lam[c] = rows[i][n]
    return tuple(lam)


def lattice_index(vectors, d):
    """Index of the sublattice of ``Z^d`` spanned by ``vectors``; 0 if rank < d."""
    if d == 0:
        return 1
    if not vectors:
        return 0
    H, _ = hermite_normal_form(vectors, ncols=d)
    piv = _pivots(H)
    if len(piv) < d:
        return 0
    idx = 1
    for i, c in enumerate(piv):
        idx *= H[i][c]
    return idx
