from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from orbith.surd import I, ComplexSqrt, RadicandMismatch, SignSqrt, squarefree_split

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=20)
radicands = st.integers(min_value=1, max_value=60)


@given(st.integers(min_value=1, max_value=10**6))
def test_squarefree_split_reconstructs(n):
    k, r = squarefree_split(n)
    assert k * k * r == n
    assert all(r % (p * p) for p in range(2, math.isqrt(r) + 1))


def test_canonical_form():
    assert SignSqrt(1, 12) == SignSqrt(2, 3)
    assert SignSqrt(0, 7) == SignSqrt()
    assert SignSqrt(0, 7).r == 1
    assert SignSqrt.sqrt(Fraction(3, 2)) == SignSqrt(Fraction(1, 2), 6)
    assert SignSqrt.sqrt(4, sign=-1) == -2


@given(rationals, radicands, rationals, radicands)
def test_product_squares(q1, r1, q2, r2):
    a, b = SignSqrt(q1, r1), SignSqrt(q2, r2)
    assert (a * b).square() == a.square() * b.square()
    assert (a * b) == (b * a)


@given(rationals, rationals, radicands)
def test_addition_with_shared_radicand(q1, q2, r):
    assert SignSqrt(q1, r) + SignSqrt(q2, r) == SignSqrt(q1 + q2, r)


def test_mixed_radicands_refused():
    with pytest.raises(RadicandMismatch):
        SignSqrt(1, 2) + SignSqrt(1, 3)
    assert SignSqrt(1, 2) + 0 == SignSqrt(1, 2)


@given(rationals.filter(lambda q: q != 0), radicands)
def test_inverse(q, r):
    a = SignSqrt(q, r)
    assert a * a.inverse() == 1
    assert abs(float(a / a) - 1) < 1e-12


def test_zero_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        SignSqrt().inverse()


def test_to_json():
    assert SignSqrt(Fraction(-3, 2), 2).to_json() == {"sign": -1, "numerator": 3, "denominator": 2, "radicand": 2}


def test_complex():
    z = ComplexSqrt(1, SignSqrt(1, 2))
    assert z * z.conjugate() == 3
    assert I * I == -1
    assert (I * 2).is_imaginary() and not (I * 2).is_real()
    assert complex(z) == pytest.approx(1 + 1.4142135623730951j)
