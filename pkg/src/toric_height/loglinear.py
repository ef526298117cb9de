"""Exact rational combinations of logarithms of primes.

A ``LogLinearNumber`` stores ``sum_p q_p * log(p)`` as a sorted tuple of
``(p, q_p)`` pairs.  Because the logarithms of distinct primes are linearly
independent over Q, equality and the zero test are syntactic.  Signs of
nonzero values are decided numerically, with certified error bounds.

``ApproxLogNumber`` is the float-mode stand-in: same arithmetic surface, a
high-precision mpmath value underneath, and tolerance-based signs.
"""

import math
import os
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

import mpmath
from mpmath.ctx_iv import MPIntervalContext
from sympy import factorint

from .errors import PrecisionExhausted, ZeroInput

__all__ = ["LogLinearNumber", "ApproxLogNumber", "log_abs", "sign_of",
           "refinement_budget", "to_approx"]

_EPS = 2.0 ** -52
DEFAULT_BITS = 4096


@lru_cache(maxsize=None)
def _interval_context(bits):
    ctx = MPIntervalContext()
    ctx.prec = bits
    return ctx


def refinement_budget():
    """Maximum mantissa bits used by interval refinement.

    Overridden by the ``TORIC_HEIGHT_BITS`` environment variable.
    """
    raw = os.environ.get("TORIC_HEIGHT_BITS")
    return int(raw) if raw else DEFAULT_BITS


def _rational(q):
    if isinstance(q, Fraction):
        return q
    if isinstance(q, (int, Rational)):
        return Fraction(q)
    raise TypeError(f"expected a rational scalar, got {type(q).__name__}")


class LogLinearNumber:
    __slots__ = ("_terms", "_hash")

    def __init__(self, coeffs=None):
        items = coeffs.items() if isinstance(coeffs, dict) else (coeffs or ())
        acc = {}
        for p, q in items:
            p = int(p)
            if p < 2:
                raise ValueError(f"{p} is not a prime")
            acc[p] = acc.get(p, Fraction(0)) + _rational(q)
        self._terms = tuple(sorted((p, q) for p, q in acc.items() if q))
        self._hash = None

    @classmethod
    def zero(cls):
        return _ZERO

    @property
    def coeffs(self):
        return dict(self._terms)

    @property
    def terms(self):
        return self._terms

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def _merge(self, other, sign):
        acc = dict(self._terms)
        for p, q in other._terms:
            acc[p] = acc.get(p, 0) + sign * q
        out = LogLinearNumber.__new__(LogLinearNumber)
        out._terms = tuple(sorted((p, q) for p, q in acc.items() if q))
        out._hash = None
        return out

    def __add__(self, other):
        if isinstance(other, LogLinearNumber):
            return self._merge(other, 1)
        if other == 0:
            return self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, LogLinearNumber):
            return self._merge(other, -1)
        if other == 0:
            return self
        return NotImplemented

    def __rsub__(self, other):
        if other == 0:
            return -self
        return NotImplemented

    def __neg__(self):
        out = LogLinearNumber.__new__(LogLinearNumber)
        out._terms = tuple((p, -q) for p, q in self._terms)
        out._hash = None
        return out

    def __mul__(self, scalar):
        if isinstance(scalar, (LogLinearNumber, ApproxLogNumber)):
            return NotImplemented
        s = _rational(scalar)
        if not s:
            return _ZERO
        out = LogLinearNumber.__new__(LogLinearNumber)
        out._terms = tuple((p, q * s) for p, q in self._terms)
        out._hash = None
        return out

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1 / _rational(scalar))

    def __eq__(self, other):
        if isinstance(other, LogLinearNumber):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __lt__(self, other):
        return sign_of(self - other) < 0

    def __le__(self, other):
        return sign_of(self - other) <= 0

    def __gt__(self, other):
        return sign_of(self - other) > 0

    def __ge__(self, other):
        return sign_of(self - other) >= 0

    def sign(self):
        return sign_of(self)

    def __float__(self):
        return math.fsum(float(q) * math.log(p) for p, q in self._terms)

    def approx(self):
        return float(self)

    def enclosure(self, bits=53):
        """mpmath interval guaranteed to contain the exact value."""
        iv = _interval_context(bits)
        total = iv.mpf(0)
        for p, q in self._terms:
            total += iv.mpf(q.numerator) / iv.mpf(q.denominator) * iv.log(iv.mpf(p))
        return total

    def to_json(self):
        return {"log_coeffs": {str(p): str(q) for p, q in self._terms},
                "approx": float(self)}

    @classmethod
    def from_json(cls, data):
        return cls({int(p): Fraction(q) for p, q in data["log_coeffs"].items()})

    def __repr__(self):
        return f"LogLinearNumber({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for p, q in self._terms:
            mag = abs(q)
            c = "" if mag == 1 else f"{mag}*"
            parts.append(("-" if q < 0 else "+", f"{c}log({p})"))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return " ".join([head] + [f"{s} {t}" for s, t in parts[1:]])


_ZERO = LogLinearNumber()


def log_abs(q):
    """``log|q|`` for a nonzero rational ``q`` as an exact ``LogLinearNumber``."""
    q = _rational(q)
    if q == 0:
        raise ZeroInput("log|0| is undefined")
    coeffs = {}
    for p, e in factorint(abs(q.numerator)).items():
        coeffs[p] = coeffs.get(p, 0) + e
    for p, e in factorint(q.denominator).items():
        coeffs[p] = coeffs.get(p, 0) - e
    return LogLinearNumber(coeffs)


def sign_of(x, budget=None):
    """Exact sign of a log-linear number, or tolerance sign of an approx one."""
    if isinstance(x, ApproxLogNumber):
        return x.sign()
    terms = x.terms
    if not terms:
        return 0
    if len(terms) == 1:
        return 1 if terms[0][1] > 0 else -1
    # double precision first; each term carries at most a few ulps of error
    vals = [float(q) * math.log(p) for p, q in terms]
    est = math.fsum(vals)
    bound = 8 * (len(vals) + 2) * _EPS * math.fsum(abs(v) for v in vals)
    if abs(est) > bound:
        return 1 if est > 0 else -1
    budget = refinement_budget() if budget is None else budget
    bits = 106
    while bits <= budget:
        enc = x.enclosure(bits)
        if enc.a > 0:
            return 1
        if enc.b < 0:
            return -1
        bits *= 2
    raise PrecisionExhausted(f"could not separate {x} from 0 within {budget} bits")


_APPROX = mpmath.MPContext()
_APPROX.prec = 256
_APPROX_TOL = _APPROX.mpf(2) ** -180


def to_approx(x):
    """Float-mode coefficient: an mpmath number at the float-mode precision."""
    if isinstance(x, Fraction):
        return _APPROX.mpf(x.numerator) / x.denominator
    return _APPROX.mpmathify(x)


class ApproxLogNumber:
    """High-precision real used in float mode in place of ``LogLinearNumber``."""

    __slots__ = ("value",)

    def __init__(self, value=0):
        self.value = _APPROX.mpf(value)

    @classmethod
    def zero(cls):
        return cls(0)

    @classmethod
    def log_abs(cls, z):
        if z == 0:
            raise ZeroInput("log|0| is undefined")
        if isinstance(z, Fraction):
            z = _APPROX.mpf(z.numerator) / z.denominator
        return cls(_APPROX.log(abs(_APPROX.mpmathify(z))))

    def is_zero(self):
        return self.sign() == 0

    def _wrap(self, v):
        out = ApproxLogNumber.__new__(ApproxLogNumber)
        out.value = v
        return out

    def __add__(self, other):
        if isinstance(other, ApproxLogNumber):
            return self._wrap(self.value + other.value)
        if other == 0:
            return self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, ApproxLogNumber):
            return self._wrap(self.value - other.value)
        if other == 0:
            return self
        return NotImplemented

    def __neg__(self):
        return self._wrap(-self.value)

    def __mul__(self, scalar):
        if isinstance(scalar, (LogLinearNumber, ApproxLogNumber)):
            return NotImplemented
        s = _rational(scalar)
        return self._wrap(self.value * s.numerator / s.denominator)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1 / _rational(scalar))

    def sign(self):
        if abs(self.value) <= _APPROX_TOL:
            return 0
        return 1 if self.value > 0 else -1

    def __eq__(self, other):
        if isinstance(other, ApproxLogNumber):
            return (self - other).sign() == 0
        if other == 0:
            return self.sign() == 0
        return NotImplemented

    def __hash__(self):
        return hash(round(float(self.value), 9))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __float__(self):
        return float(self.value)

    def approx(self):
        return float(self.value)

    def to_json(self):
        return {"approx": float(self.value),
                "digits": _APPROX.nstr(self.value, 40)}

    def __repr__(self):
        return f"ApproxLogNumber({_APPROX.nstr(self.value, 20)})"
