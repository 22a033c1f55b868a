from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qpdo.scalar import ONE, Q, V, ZERO, FieldElement, field_arith, normalize, q_power
from conftest import field_elements


def test_q_is_v_squared():
    assert Q == V * V


def test_q_power_examples():
    assert q_power(0) == ONE
    assert q_power(1) == V**2
    assert q_power(Fraction(-1, 2)) == V.inverse()


def test_q_power_rejects_third():
    with pytest.raises(ValueError):
        q_power(Fraction(1, 3))


def test_field_arith_examples():
    assert field_arith("add", Q, -Q) == ZERO
    assert field_arith("div", Q - 1, V - 1) == V + 1
    assert field_arith("mul", V.inverse(), V) == ONE


def test_division_by_zero_is_an_error():
    with pytest.raises(ZeroDivisionError):
        field_arith("div", Q, ZERO)
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_normalize_examples():
    assert normalize([-2, 0, 2], [-2, 2]) == V + 1
    z = normalize([], [0, 0, 0, 1])
    assert z.is_zero() and z.numerator == () and z.denominator == (1,)
    x = normalize([0, -1], [-1])
    assert x.numerator == (0, 1) and x.denominator == (1,)


def test_zero_denominator_rejected():
    with pytest.raises(ZeroDivisionError):
        normalize([1], [0])


def test_printing():
    assert str(Q - 1) == "q - 1"
    assert str(q_power(-1)) == "q^-1"
    assert str((Q - 1) / (V + 2)) == "(q - 1)/(v + 2)"


@given(field_elements(), field_elements(), field_elements())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == ZERO


@given(field_elements(nonzero=True))
def test_inverse(a):
    assert a * a.inverse() == ONE


@given(field_elements())
def test_normalize_idempotent(a):
    b = normalize(a.numerator, a.denominator)
    assert b == a
    assert normalize(b.numerator, b.denominator).numerator == b.numerator


@given(field_elements())
def test_canonical_denominator(a):
    assert a.denominator[-1] > 0


@given(st.integers(-6, 6), st.integers(-6, 6))
def test_q_power_additive(a, b):
    x, y = Fraction(a, 2), Fraction(b, 2)
    assert q_power(x) * q_power(y) == q_power(x + y)


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=5).filter(any))
def test_no_polynomial_vanishes(coeffs):
    assert not FieldElement(coeffs).is_zero()
