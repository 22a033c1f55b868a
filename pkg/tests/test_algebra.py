import pytest
from hypothesis import given

from qpdo.algebra import (
    Element,
    bracket,
    canonicalize,
    graded_decompose,
    homogeneous_weight,
    identity,
    monomial,
    multiply,
    triangular_split,
    weight,
)
from qpdo.parser import parse_element
from qpdo.scalar import Q, V
from conftest import elements


def E(src, N=3):
    return parse_element(src, N)


def test_product_examples():
    assert multiply(E("E[1,1]"), E("E[1,1]")) == E("E[1,1]")
    assert multiply(E("z*T*E[1,2]"), E("z*T*E[2,3]")) == E("q*z^2*T^2*E[1,3]")
    assert multiply(E("z*T*E[1,2]"), E("E[3,3]")).is_zero()


def test_bracket_examples():
    assert bracket(E("T*E[1,1]", 1), E("z*E[1,1]", 1)) == E("(q-1)*z*T*E[1,1]", 1)
    assert bracket(E("E[1,1]", 2), E("E[2,2]", 2)).is_zero()
    assert bracket(E("E[1,2]", 2), E("E[2,1]", 2)) == E("E[1,1] - E[2,2]", 2)


def test_size_mismatch():
    with pytest.raises(ValueError):
        multiply(E("E[1,1]", 2), E("E[1,1]", 3))
    with pytest.raises(ValueError):
        bracket(E("E[1,1]", 2), E("E[1,1]", 3))


def test_graded_decompose_examples():
    assert graded_decompose(E("z*T^5*E[2,3]")) == {2: E("z*T^5*E[2,3]")}
    assert graded_decompose(E("E[1,1]")) == {0: E("E[1,1]")}
    assert graded_decompose(E("z^-1*E[1,3] + E[2,1]")) == {-5: E("z^-1*E[1,3]"), 1: E("E[2,1]")}


def test_triangular_split_examples():
    assert triangular_split(E("E[2,1] + E[1,2] + E[1,1]", 2)) == (E("E[2,1]", 2), E("E[1,1]", 2), E("E[1,2]", 2))
    zero = Element.zero(2)
    assert triangular_split(zero) == (zero, zero, zero)
    assert triangular_split(E("z*E[1,1]", 2))[0] == E("z*E[1,1]", 2)


def test_canonicalize_examples():
    assert canonicalize(1, [(1, (1, 1, 1, 1)), (-1, (1, 1, 1, 1))]).is_zero()
    assert canonicalize(2, [(Q, (0, 0, 1, 2)), (1, (0, 0, 1, 2))]) == monomial(2, 0, 0, 1, 2, Q + 1)
    x = canonicalize(2, [(1, (0, 0, 1, 1))])
    assert x == E("E[1,1]", 2)
    assert canonicalize(2, [(c, k) for k, c in x.items()]) == x


def test_index_out_of_range():
    with pytest.raises(IndexError):
        canonicalize(2, [(1, (0, 0, 3, 1))])
    with pytest.raises(IndexError):
        monomial(2, 0, 0, 0, 1)


def test_identity_is_unit():
    x = E("z*T^-2*E[2,3] + q*E[1,1]")
    assert multiply(identity(3), x) == x == multiply(x, identity(3))


def test_scalar_case_commutation():
    # T z = q z T for N = 1
    assert multiply(E("T", 1), E("z", 1)) == E("q*z*T", 1)


@given(elements(3), elements(3), elements(3))
def test_associative(a, b, c):
    assert multiply(a, multiply(b, c)) == multiply(multiply(a, b), c)


@given(elements(2), elements(2), elements(2))
def test_jacobi_and_antisymmetry(a, b, c):
    assert bracket(a, b) == -bracket(b, a)
    jac = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b))
    assert jac.is_zero()


@given(elements(3, max_terms=1), elements(3, max_terms=1))
def test_gradation(a, b):
    wa, wb = homogeneous_weight(a), homogeneous_weight(b)
    for x in (multiply(a, b), bracket(a, b)):
        if a and b and x:
            assert homogeneous_weight(x) == wa + wb


@given(elements(3, max_terms=5))
def test_decompositions_sum_back(a):
    total = Element.zero(3)
    for w, band in graded_decompose(a).items():
        assert all(weight(3, key) == w for key in band.keys())
        total = total + band
    assert total == a
    plus, zero, minus = triangular_split(a)
    assert plus + zero + minus == a
