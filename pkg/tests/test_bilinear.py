import pytest
from hypothesis import given, strategies as st

from qpdo.algebra import Element, multiply
from qpdo.bilinear import (
    FormSpec,
    VectorElement,
    act,
    adjoint_check,
    adjoint_sides,
    adjoint_window_check,
    basis_vector,
    block_symmetry_signs,
    form_eval,
    gram_matrix,
    literal_twist_sides,
    nondegeneracy_partners,
    residue,
)
from qpdo.involutions import InvolutionParams
from qpdo.parser import parse_element
from qpdo.scalar import Q, ONE, ZERO
from conftest import elements


def e(N, u, p):
    return basis_vector(N, u, p)


PLUS21 = FormSpec(1, "n<N", 2, 1)
MINUS21 = FormSpec(-1, "n<N", 2, 1)


def test_action_examples():
    assert act(parse_element("z*T*E[1,2]", 2), e(2, 2, 2)) == VectorElement(2, {(3, 1): Q * Q})
    assert not act(parse_element("E[1,1]", 2), e(2, 0, 2))
    assert act(parse_element("T*E[1,1]", 2), e(2, 0, 1)) == e(2, 0, 1)


@given(elements(2), elements(2), st.integers(-3, 3), st.integers(1, 2))
def test_action_property(a, b, u, p):
    h = e(2, u, p)
    assert act(multiply(a, b), h) == act(a, act(b, h))


def test_residue_examples():
    assert residue({-1: 1}) == 1
    assert residue({3: 1}) == 0
    assert residue({-1: Q, 1: 1}) == Q


def test_form_examples():
    assert form_eval(PLUS21, e(2, 1, 1), e(2, 0, 1)) == 1
    assert form_eval(PLUS21, e(2, 0, 1), e(2, 0, 1)) == 0
    assert form_eval(MINUS21, e(2, 0, 2), e(2, 0, 2)) == 1


def test_form_size_mismatch():
    with pytest.raises(ValueError):
        form_eval(PLUS21, e(3, 0, 1), e(2, 0, 1))


@given(st.lists(st.tuples(st.integers(-2, 2), st.integers(1, 3), st.integers(-3, 3)), max_size=4),
       st.lists(st.tuples(st.integers(-2, 2), st.integers(1, 3), st.integers(-3, 3)), max_size=4),
       st.integers(-3, 3))
def test_bilinear(hs, gs, lam):
    spec = FormSpec(-1, "n<N", 3, 1)
    h = VectorElement(3, {(u, p): c for u, p, c in hs})
    g = VectorElement(3, {(u, p): c for u, p, c in gs})
    g2 = e(3, 1, 2)
    assert form_eval(spec, h, g + g2.scale(lam)) == form_eval(spec, h, g) + lam * form_eval(spec, h, g2)
    assert form_eval(spec, h.scale(lam), g) == lam * form_eval(spec, h, g)


def test_adjoint_examples():
    p = InvolutionParams.make(2, 1)
    L = parse_element("E[1,2]", 2)
    assert adjoint_sides(p, PLUS21, L, e(2, 0, 2), e(2, 1, 1)) == (ONE, ONE)
    assert adjoint_sides(p, PLUS21, Element.zero(2), e(2, 0, 2), e(2, 1, 1)) == (ZERO, ZERO)
    p1 = InvolutionParams.make(1, 1, r=2)
    spec1 = FormSpec.for_params(p1)
    L = parse_element("z*T", 1)
    for u in range(-3, 4):
        for s in range(-3, 4):
            assert adjoint_check(p1, spec1, L, e(1, u, 1), e(1, s, 1))


def test_transpose_forms_adjoint():
    for p in (InvolutionParams.make(2, 1), InvolutionParams.make(3, 3, r=1, A=-1)):
        spec = FormSpec.for_params(p, transpose=True)
        for k in range(-1, 2):
            for m in range(-1, 2):
                for i in range(1, p.N + 1):
                    for j in range(1, p.N + 1):
                        assert not adjoint_window_check(p, spec, Element(p.N, {(k, m, i, j): 1}), 2)


def test_uncorrected_twist_fails():
    p = InvolutionParams.make(1, 1, r=2)
    spec = FormSpec.for_params(p)
    lhs, rhs = literal_twist_sides(p, spec, parse_element("z", 1), e(1, 0, 1), e(1, 0, 1))
    assert lhs == 1 and rhs == Q.inverse()
    assert adjoint_check(p, spec, parse_element("z", 1), e(1, 0, 1), e(1, 0, 1))


def test_inhomogeneous_operator_checked_componentwise():
    p = InvolutionParams.make(2, 2, r=1, A=-1)
    spec = FormSpec.for_params(p)
    L = parse_element("z*T*E[1,2] + q*z^-1*E[2,2] + T^2*E[1,1]", 2)
    for u in range(-2, 3):
        for s in range(-2, 3):
            for a in (1, 2):
                for b in (1, 2):
                    assert adjoint_check(p, spec, L, e(2, u, a), e(2, s, b))


def test_gram_examples():
    assert gram_matrix(PLUS21, [e(2, 0, 1), e(2, 1, 1)]) == [[0, 1], [1, 0]]
    assert gram_matrix(PLUS21, [e(2, 0, 1)]) == [[0]]
    assert gram_matrix(PLUS21, [e(2, 0, 2)]) == [[1]]
    with pytest.raises(ValueError):
        gram_matrix(PLUS21, [])


def test_full_case_symmetry():
    for N in (1, 2, 3):
        assert block_symmetry_signs(FormSpec(1, "nN", N, N)) == {"n": 1}
        assert block_symmetry_signs(FormSpec(-1, "nN", N, N)) == {"n": -1}


def test_split_case_symmetry_signs():
    # computed ground truth with the exchange matrix: B- is antisymmetric on the first block
    for N, n in ((2, 1), (3, 1), (3, 2), (5, 2)):
        assert block_symmetry_signs(FormSpec(1, "n<N", N, n)) == {"n": 1, "t": 1}
        assert block_symmetry_signs(FormSpec(-1, "n<N", N, n)) == {"n": -1, "t": 1}


def test_cross_block_orthogonal():
    spec = FormSpec(-1, "n<N", 4, 2)
    for u in range(-3, 4):
        for s in range(-3, 4):
            for p in (1, 2):
                for q in (3, 4):
                    assert form_eval(spec, e(4, u, p), e(4, s, q)) == 0
                    assert form_eval(spec, e(4, s, q), e(4, u, p)) == 0


@pytest.mark.parametrize("variant,N,n", [("nN", 3, 3), ("n<N", 3, 1), ("T-nN", 2, 2), ("T-n<N", 4, 2)])
def test_nondegenerate_on_window(variant, N, n):
    for sign in (1, -1):
        assert all(v is not None for v in nondegeneracy_partners(FormSpec(sign, variant, N, n), 4).values())


def test_form_spec_checks():
    with pytest.raises(ValueError):
        FormSpec(1, "nN", 3, 2)
    with pytest.raises(ValueError):
        FormSpec(2, "nN", 2, 2)
    with pytest.raises(ValueError):
        FormSpec(1, "weird", 2, 2)
