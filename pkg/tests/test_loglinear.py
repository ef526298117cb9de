import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from toric_height.errors import PrecisionExhausted, ZeroInput
from toric_height.loglinear import (ApproxLogNumber, LogLinearNumber, log_abs,
                                    sign_of)

coeffs = st.dictionaries(st.sampled_from([2, 3, 5, 7, 11]),
                         st.fractions(max_denominator=12).filter(bool),
                         max_size=4)


def test_log_abs_factorizes():
    assert log_abs(12) == LogLinearNumber({2: 2, 3: 1})
    assert log_abs(Fraction(-3, 4)) == LogLinearNumber({3: 1, 2: -2})
    assert log_abs(1).is_zero()
    assert log_abs(-1).is_zero()
    with pytest.raises(ZeroInput):
        log_abs(0)


def test_arithmetic_and_printing():
    x = log_abs(2) * Fraction(1, 2) + log_abs(3)
    assert str(x) == "1/2*log(2) + log(3)"
    assert str(-x) == "-1/2*log(2) - log(3)"
    assert x - x == LogLinearNumber.zero()
    assert math.isclose(float(x), 0.5 * math.log(2) + math.log(3))
    assert (x * 2) / 2 == x


@given(coeffs, coeffs)
def test_log_abs_is_additive(a, b):
    x, y = LogLinearNumber(a), LogLinearNumber(b)
    assert (x + y) - y == x
    assert x + y == y + x


@given(st.fractions(max_denominator=50).filter(bool),
       st.fractions(max_denominator=50).filter(bool))
def test_log_abs_homomorphism(p, q):
    assert log_abs(p * q) == log_abs(p) + log_abs(q)


@given(coeffs)
def test_sign_matches_high_precision(c):
    x = LogLinearNumber(c)
    with mpmath.workdps(60):
        ref = mpmath.fsum(mpmath.mpf(q.numerator) / q.denominator * mpmath.log(p)
                          for p, q in c.items())
        expected = 0 if ref == 0 else (1 if ref > 0 else -1)
    assert sign_of(x) == expected


def test_sign_needs_refinement():
    # an integer near-relation found by PSLQ: |value| ~ 3.5e-17, and the
    # double-precision sum even has the wrong sign
    x = LogLinearNumber({2: 55180, 3: -40739, 5: -70080, 7: 61307})
    assert float(x) > 0
    assert sign_of(x) == -1
    with pytest.raises(PrecisionExhausted):
        sign_of(x, budget=53)


def test_budget_from_environment(monkeypatch):
    x = LogLinearNumber({2: 55180, 3: -40739, 5: -70080, 7: 61307})
    monkeypatch.setenv("TORIC_HEIGHT_BITS", "64")
    with pytest.raises(PrecisionExhausted):
        sign_of(x)


def test_enclosure_contains_value():
    x = LogLinearNumber({2: Fraction(1, 3), 5: -2})
    enc = x.enclosure(80)
    assert enc.a <= mpmath.mpf(float(x)) + 1e-15 and enc.b >= mpmath.mpf(float(x)) - 1e-15
    assert enc.b - enc.a < mpmath.mpf(2) ** -70


@given(coeffs)
def test_json_round_trip(c):
    x = LogLinearNumber(c)
    assert LogLinearNumber.from_json(x.to_json()) == x


def test_json_format():
    x = log_abs(2) * Fraction(1, 2)
    data = x.to_json()
    assert data["log_coeffs"] == {"2": "1/2"}
    assert math.isclose(data["approx"], 0.34657359, rel_tol=1e-7)


def test_comparisons():
    assert log_abs(3) > log_abs(2)
    assert log_abs(8) == log_abs(2) * 3
    assert log_abs(Fraction(1, 2)) < 0 * log_abs(2) + LogLinearNumber.zero()


def test_approx_number():
    x = ApproxLogNumber.log_abs(2)
    y = ApproxLogNumber.log_abs(Fraction(1, 2))
    assert (x + y).is_zero()
    assert x * 3 == ApproxLogNumber.log_abs(8)
    assert x > y
    assert math.isclose(float(ApproxLogNumber.log_abs(3 + 4j)), math.log(5))
    assert ApproxLogNumber.log_abs(2).to_json()["digits"].startswith("0.693147180559945309417")
