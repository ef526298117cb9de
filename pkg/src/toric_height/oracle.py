"""Independent numerical checks for the height engine.

* ``mc_polycircle`` integrates the local integrand of a vertex over the
  polycircle ``|t_j| = e^{s_j}`` by Monte Carlo.
* ``mahler_hypersurface_height`` computes the height of a toric hypersurface
  as the Mahler measure of its primitive defining polynomial.
* ``mass_probe`` estimates the total mass of the current measure as the
  volume of the gradient image of a smoothed roof function.

Random streams come from numpy's Philox generator keyed by ``(seed, block)``
with a fixed block size, so estimates do not depend on how blocks are
distributed over worker threads.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np
from scipy.special import logsumexp

from .errors import NotHypersurface
from .loglinear import LogLinearNumber, log_abs
from .toric import as_coefficients, binomial_generators

__all__ = ["MCEstimate", "MahlerHeight", "block_rng", "mc_mean",
           "mc_polycircle", "mahler_hypersurface_height", "mass_probe",
           "run_checks", "BLOCK_SIZE"]

BLOCK_SIZE = 1 << 16


@dataclass(frozen=True)
class MCEstimate:
    mean: float
    stderr: float
    samples: int
    seed: int
    rejected: int = 0

    def tolerance(self, sigmas=3.0, floor=0.0):
        """``sigmas * stderr``, widened by double-precision rounding of the mean.

        Integrands that are nearly constant have stderr close to 0, and then
        rounding in the float evaluation (a few ulps of the mean) dominates.
        """
        rounding = 64 * np.finfo(float).eps * max(1.0, abs(self.mean))
        return float(max(sigmas * self.stderr + rounding, floor))

    def agrees(self, value, sigmas=3.0, floor=0.0):
        return bool(abs(float(value) - self.mean) <= self.tolerance(sigmas, floor))

    def to_json(self):
        return {"mean": self.mean, "stderr": self.stderr,
                "samples": self.samples, "seed": self.seed,
                "rejected": self.rejected}


@dataclass(frozen=True)
class MahlerHeight:
    value: float
    stderr: float
    archimedean: MCEstimate
    finite: LogLinearNumber
    polynomial: tuple

    def to_json(self):
        return {"value": self.value, "stderr": self.stderr,
                "archimedean": self.archimedean.to_json(),
                "finite": self.finite.to_json()}


def block_rng(seed, block):
    key = np.array([seed & (2**64 - 1), block], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _block_moments(integrand, dim, seed, block, count):
    """Count, mean and centred sum of squares of ``count`` finite values."""
    rng = block_rng(seed, block)
    kept, rejected = [], 0
    got = 0
    while got < count:
        theta = rng.uniform(0.0, 2.0 * np.pi, size=(count - got, dim))
        vals = integrand(theta)
        ok = np.isfinite(vals)
        rejected += int((~ok).sum())
        kept.append(vals[ok])
        got += int(ok.sum())
    vals = np.concatenate(kept)
    mean = float(vals.mean())
    return vals.size, mean, float(((vals - mean) ** 2).sum()), rejected


def mc_mean(integrand, dim, samples, seed, workers=1):
    """Mean of ``integrand(theta)`` for ``theta`` uniform on ``[0, 2pi)^dim``.

    ``integrand`` maps an ``(N, dim)`` array to ``N`` values; non-finite
    values are rejected and redrawn from the same block stream.  Block
    moments are merged in block order, so the result does not depend on
    ``workers``.
    """
    if samples < 2:
        raise ValueError("need at least two samples")
    counts = [BLOCK_SIZE] * (samples // BLOCK_SIZE)
    if samples % BLOCK_SIZE:
        counts.append(samples % BLOCK_SIZE)
    jobs = list(enumerate(counts))

    def run(job):
        return _block_moments(integrand, dim, seed, job[0], job[1])

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, jobs))
    else:
        parts = [run(j) for j in jobs]
    n, mean, m2, rejected = 0, 0.0, 0.0, 0
    for nb, mb, m2b, rb in parts:
        # pairwise merge of centred moments
        delta = mb - mean
        total = n + nb
        mean += delta * nb / total
        m2 += m2b + delta * delta * n * nb / total
        n = total
        rejected += rb
    var = m2 / (n - 1)
    return MCEstimate(mean, float(np.sqrt(var / n)), samples, seed, rejected)


def _float_alpha(alpha):
    return np.array([complex(a) for a in alpha])


def mc_polycircle(vertex, section, lifted, alpha, samples=10**5, seed=42,
                  guard=1e-12, workers=1):
    """Monte Carlo value of the local integral at a vertex.

    Averages ``log( prod_j |t^{a'_j}|^{c_j} |t_1 - 1| / max_i |alpha_i t^{a'_i}|^k )``
    over ``t_j = e^{s_j + i theta_j}``.  By Jensen's formula its exact value is
    the vertex contribution computed by the engine.
    """
    if samples < 10**4:
        raise ValueError("mc_polycircle needs at least 10^4 samples")
    s = np.array([float(c) for c in vertex.coords])
    pts = np.array(lifted.points, dtype=float)
    c = np.array(section.c, dtype=float)
    k = section.k
    abs_alpha = np.abs(_float_alpha(alpha))
    near_one = abs(np.expm1(s[0])) < guard

    def integrand(theta):
        t = np.exp(s[None, :] + 1j * theta)
        # |t^{a'_i}| from the complex monomials, evaluated in log form
        log_mono = np.log(np.abs(np.prod(t[:, None, :] ** pts[None, :, :], axis=2)))
        gap = np.abs(t[:, 0] - 1.0)
        with np.errstate(divide="ignore"):
            vals = (log_mono @ c + np.log(gap)
                    - k * np.log(np.max(abs_alpha[None, :] * np.exp(log_mono), axis=1)))
        if near_one:
            vals[gap < guard] = np.nan
        return vals

    return mc_mean(integrand, lifted.d, samples, seed, workers)


def _hypersurface_polynomial(A, alpha):
    gens = binomial_generators(A)
    if len(gens) != 1:
        raise NotHypersurface(f"codimension {len(gens)}, expected 1")
    plus, minus = gens[0].homogenized()

    def coeff(exps):
        out = Fraction(1)
        for a, e in zip(alpha, exps):
            out *= Fraction(a) ** e
        return out

    # alpha^{minus} T^{plus} - alpha^{plus} T^{minus} vanishes on X_{A,alpha}
    return (coeff(minus), plus), (-coeff(plus), minus)


def mahler_hypersurface_height(A, alpha, samples=10**5, seed=42, workers=1):
    """Height of a toric hypersurface from the Mahler measure of its equation.

    For a primitive integer polynomial ``f`` the height equals ``m(f)``.  We
    keep rational coefficients ``u, v`` and add the finite places explicitly:
    ``m(f) + sum_p log max(|u|_p, |v|_p)``.
    """
    alpha = as_coefficients(alpha, A.n)
    (u, e1), (v, e2) = _hypersurface_polynomial(A, alpha)
    lu, lv = log_abs(u), log_abs(v)
    finite = LogLinearNumber.zero()
    for p in sorted(set(lu.coeffs) | set(lv.coeffs)):
        # log max(|u|_p, |v|_p) = -min(v_p(u), v_p(v)) log p
        finite = finite + LogLinearNumber(
            {p: -min(lu.coeffs.get(p, 0), lv.coeffs.get(p, 0))})
    E1 = np.array(e1, dtype=float)
    E2 = np.array(e2, dtype=float)
    uf, vf = float(u), float(v)

    def integrand(theta):
        with np.errstate(divide="ignore"):
            return np.log(np.abs(uf * np.exp(1j * (theta @ E1))
                                 + vf * np.exp(1j * (theta @ E2))))

    arch = mc_mean(integrand, A.n + 1, samples, seed, workers)
    return MahlerHeight(arch.mean + float(finite), arch.stderr, arch, finite,
                        ((u, e1), (v, e2)))


def _cramer_radius(P, L):
    """Box half-width containing every vertex of the roof function."""
    diffs = P[:, None, :] - P[None, :, :]
    longest = float(np.sqrt((diffs ** 2).sum(axis=2)).max())
    m = P.shape[1]
    spread = float(L.max() - L.min())
    return 1.0 + m * max(longest, 1.0) ** (m - 1) * spread


def _gradient(P, L, X, p, h):
    m = X.shape[-1]
    flat = X.reshape(-1, m)
    out = np.empty_like(flat)

    def phi(Y):
        return logsumexp(p * (L[None, :] + Y @ P.T), axis=1) / p

    for k in range(m):
        e = np.zeros(m)
        e[k] = h
        out[:, k] = (phi(flat + e) - phi(flat - e)) / (2 * h)
    return out.reshape(X.shape)


def _boundary_volume(P, L, R, center, grid, p, h):
    m = P.shape[1]
    if m == 1:
        g = _gradient(P, L, np.array([[center[0] - R], [center[0] + R]]), p, h)
        return abs(g[1, 0] - g[0, 0])
    if m == 2:
        u = np.linspace(-R, R, grid, endpoint=False)
        c = center
        sides = [np.stack([u, np.full_like(u, -R)], 1),
                 np.stack([np.full_like(u, R), u], 1),
                 np.stack([-u, np.full_like(u, R)], 1),
                 np.stack([np.full_like(u, -R), -u], 1)]
        loop = np.concatenate(sides) + c
        g = _gradient(P, L, loop, p, h)
        x, y = g[:, 0], g[:, 1]
        return abs(0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y)))
    if m == 3:
        u = np.linspace(-R, R, grid)
        U, V = np.meshgrid(u, u, indexing="ij")
        vol = 0.0
        for axis in range(3):
            for side in (-1.0, 1.0):
                face = np.empty(U.shape + (3,))
                others = [a for a in range(3) if a != axis]
                face[..., axis] = side * R
                face[..., others[0]] = U
                face[..., others[1]] = V
                g = _gradient(P, L, face + center, p, h)
                a, b = g[:-1, :-1], g[1:, :-1]
                c, d = g[1:, 1:], g[:-1, 1:]
                # orientation of (others[0], others[1], axis) vs (0, 1, 2)
                perm = others + [axis]
                sign = side * (1.0 if perm in ([0, 1, 2], [1, 2, 0], [2, 0, 1]) else -1.0)
                tri = (np.einsum("...i,...i", a, np.cross(b, c))
                       + np.einsum("...i,...i", a, np.cross(c, d)))
                vol += sign * float(tri.sum()) / 6.0
        return abs(vol)
    raise ValueError("mass_probe supports dimension at most 3")


def mass_probe(lifted, alpha, samples=4096, seed=42, replicates=8,
               smoothing=64.0):
    """Estimate ``deg X_{A'}`` as ``m!`` times the volume of the gradient image.

    The gradient of the smoothed roof ``(1/p) log sum_i exp(p(L_i + <a'_i,u>))``
    maps a large box onto (nearly) ``conv(A')``; its total Monge-Ampere mass
    equals the total mass of the current measure.  Each replicate jitters the
    box centre; ``samples`` sets the number of boundary evaluations.
    """
    P = np.array(lifted.points, dtype=float)
    L = np.log(np.abs(_float_alpha(alpha)))
    m = P.shape[1]
    if m > 3:
        raise ValueError("mass_probe supports dimension at most 3")
    R = _cramer_radius(P, L) + 20.0 / smoothing
    grid = max(8, samples // 4 if m == 2 else int(np.sqrt(samples / 6)))
    rng = block_rng(seed, 0)
    vals = []
    for _ in range(replicates):
        center = rng.uniform(-0.5, 0.5, size=m)
        vals.append(factorial(m) * _boundary_volume(P, L, R, center, grid,
                                                    smoothing, 1e-6))
    vals = np.array(vals)
    stderr = float(vals.std(ddof=1) / np.sqrt(len(vals))) if len(vals) > 1 else 0.0
    return MCEstimate(float(vals.mean()), stderr, samples * replicates, seed)


def run_checks(report, checks=("mc",), samples=10**5, seed=42, workers=1,
               guard=1e-12, smoothing=64.0):
    """Attach oracle comparisons to a ``HeightReport``; returns the list added."""
    added = []
    if "mc" in checks:
        for ev in report.chain:
            for idx, (v, contrib) in enumerate(zip(ev.measure.atoms,
                                                   ev.contributions)):
                est = mc_polycircle(v, ev.step.section, ev.step.lifted,
                                    report.alpha, samples, seed + idx,
                                    guard=guard, workers=workers)
                added.append({"check": "mc", "step": ev.step.index,
                              "vertex": idx, "expected": float(contrib),
                              "estimate": est.to_json(),
                              "tolerance": est.tolerance(),
                              "pass": bool(est.agrees(contrib))})
    if "mahler" in checks and report.config.codimension == 1 \
            and report.mode == "exact":
        mh = mahler_hypersurface_height(report.config, report.alpha, samples,
                                        seed, workers)
        tol = max(3 * mh.stderr, 1e-3)
        added.append({"check": "mahler", "expected": float(report.value),
                      "estimate": mh.to_json(), "tolerance": tol,
                      "pass": bool(abs(mh.value - float(report.value)) <= tol)})
    if "mass" in checks:
        for ev in report.chain:
            if ev.step.lifted.d > 3:
                continue
            est = mass_probe(ev.step.lifted, report.alpha, seed=seed,
                             smoothing=smoothing)
            added.append({"check": "mass", "step": ev.step.index,
                          "expected": ev.step.degree, "estimate": est.to_json(),
                          "tolerance": 0.1 * ev.step.degree,
                          "pass": bool(abs(est.mean - ev.step.degree)
                                       <= 0.1 * ev.step.degree)})
    report.oracles.extend(added)
    return added
