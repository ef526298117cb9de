"""Deterministic configuration batteries shared by the test modules."""

from itertools import combinations, product

from toric_height.errors import LatticeNotGenerated, RankDeficient
from toric_height.toric import validate_config


def _boxes():
    yield 1, [(v,) for v in range(1, 7)], 6
    yield 2, [p for p in product(range(3), repeat=2) if any(p)], 6
    yield 3, [p for p in product(range(2), repeat=3) if any(p)], 6


def small_battery():
    """Every generating configuration ``{0} + S`` with ``S`` drawn from small boxes.

    d = 1: S inside {1..6}; d = 2: S inside {0,1,2}^2 minus 0, |S| <= 6;
    d = 3: S inside {0,1}^3 minus 0, |S| <= 6.  Only S generating Z^d is kept,
    so n = |S| <= 6.
    """
    out = []
    for d, box, cap in _boxes():
        for size in range(d, cap + 1):
            for S in combinations(box, size):
                try:
                    out.append(validate_config([(0,) * d] + list(S)))
                except (RankDeficient, LatticeNotGenerated):
                    pass
    return out


def positive_codimension(battery):
    return [A for A in battery if A.n > A.d]


PRIMES = (2, 3, 5)


def random_alpha(rng, count, primes=PRIMES, spread=2):
    """Signed rationals supported on ``primes`` with exponents in [-spread, spread]."""
    from fractions import Fraction
    out = []
    for _ in range(count):
        q = Fraction(1)
        for p in primes:
            q *= Fraction(p) ** rng.randint(-spread, spread)
        out.append(q * rng.choice((1, -1)))
    return out


def random_instances(count, seed=0, max_n=5, max_d=3, radius=2):
    """``count`` random ``(config, alpha)`` pairs with positive codimension."""
    import random
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        d = rng.randint(1, max_d)
        n = rng.randint(d + 1, max_n)
        pts = [(0,) * d] + [tuple(rng.randint(-radius, radius) for _ in range(d))
                            for _ in range(n)]
        try:
            A = validate_config(pts)
        except (RankDeficient, LatticeNotGenerated):
            continue
        out.append((A, random_alpha(rng, n + 1)))
    return out
