import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qpdo.algebra import Element, identity, multiply, weight
from qpdo.involutions import (
    InvalidParamsError,
    InvolutionParams,
    ad_J,
    apply_automorphism,
    coefficient_matrix,
    dagger,
    dagger_block,
    dot_sigma,
    factorize,
    pi_n,
    random_admissible_cvec,
    sigma_apply,
    sigma_apply_blocks,
    sigma_apply_oracle,
    sigma_generator_image,
    sigma_transpose_variant,
    valid_sign_patterns,
    validate_params,
)
from qpdo.parser import parse_element
from qpdo.scalar import ONE, Q, V, FieldElement
from qpdo.verify import check_involution, extension_is_anti_involution
from conftest import elements, monomial_keys


def P(N, n, **kw):
    return InvolutionParams.make(N, n, **kw)


def E(src, N):
    return parse_element(src, N)


def test_pi_n():
    assert [pi_n(2, 5, i) for i in (1, 3, 5)] == [2, 5, 3]
    assert [pi_n(4, 4, i) for i in range(1, 5)] == [4, 3, 2, 1]
    assert all(pi_n(3, 7, pi_n(3, 7, i)) == i for i in range(1, 8))
    with pytest.raises(ValueError):
        pi_n(3, 2, 1)


def test_validate_examples():
    rep = validate_params(P(2, 1, epsilon=-1, c=[1]))
    assert not rep.ok
    assert any("impossible case" in e.detail for e in rep.failures())
    assert validate_params(P(3, 2, epsilon=-1, c=[-1, 1])).ok
    assert validate_params(P(2, 2, A=1, B=Q, r=5, c=[1])).ok


def test_each_violation_reported():
    rep = validate_params(P(5, 3, epsilon=1, r=1, c=[2, 1, 1, 3]))
    failed = {e.constraint for e in rep.failures()}
    assert {"r=0", "c_i*c_(n-i)=1", "c_(n+i)*c_(N-i)=1"} <= failed
    assert "(1, 2)" in next(e.detail for e in rep.failures() if e.constraint == "c_i*c_(n-i)=1")


def test_full_case_relation():
    assert not validate_params(P(2, 2, A=1, B=Q * Q, r=1)).ok
    assert validate_params(P(2, 2, A=V**-1, B=Q * Q, r=1)).ok


def test_case_minus_fixed_points():
    # N odd: the single fixed point must be -1
    assert validate_params(P(3, 1, epsilon=-1, c=[1, -1])).ok
    assert not validate_params(P(3, 1, epsilon=-1, c=[1, 1])).ok
    # N even, n even: two fixed points with opposite signs
    assert validate_params(P(4, 2, epsilon=-1, c=[-1, 1, 1])).ok
    assert not validate_params(P(4, 2, epsilon=-1, c=[-1, 1, -1])).ok
    for n in (1, 3):
        assert valid_sign_patterns(4, n, -1) == []


def test_case_plus_two_negative_fixed_points():
    p = P(4, 2, epsilon=1, c=[-1, 1, -1])
    assert validate_params(p).ok
    assert extension_is_anti_involution(p)


def test_coefficient_matrix():
    p = P(4, 4, c=[2, 3, 5])
    m = coefficient_matrix(p)
    assert m[(2, 1)] == 2 and m[(4, 2)] == 15 and m[(4, 1)] == 30


def test_generator_examples():
    p = P(2, 1)
    assert sigma_generator_image(p, "E", 2, 1) == E("z*E[1,2]", 2)
    assert sigma_generator_image(p, "T", 2) == E("T^-1*E[2,2]", 2)
    for N, n in ((3, 1), (4, 4)):
        q = P(N, n)
        for i in range(1, N + 1):
            k = pi_n(n, N, i)
            assert sigma_generator_image(q, "E", i, i) == Element(N, {(0, 0, k, k): 1})


def test_generator_inverses():
    for p in (P(3, 1, epsilon=-1, c=[1, -1]), P(2, 2, A=V**-1, B=Q * Q, r=1)):
        for i in range(1, p.N + 1):
            for a, b in (("z", "zinv"), ("T", "Tinv")):
                x = sigma_generator_image(p, a, i)
                y = sigma_generator_image(p, b, i)
                assert multiply(y, x) == Element(p.N, {(0, 0, pi_n(p.n, p.N, i), pi_n(p.n, p.N, i)): 1})


def test_invalid_params_rejected():
    with pytest.raises(InvalidParamsError):
        sigma_apply(P(2, 1, epsilon=-1), E("E[1,1]", 2))
    with pytest.raises(InvalidParamsError):
        sigma_generator_image(P(2, 1, epsilon=-1), "E", 1, 1)


def test_oracle_examples():
    assert sigma_apply_oracle(P(2, 1), E("z*E[1,2]", 2)) == E("E[2,1]", 2)
    for p in (P(3, 1), P(2, 2, r=3)):
        assert sigma_apply_oracle(p, identity(p.N)) == identity(p.N)
    assert sigma_apply_oracle(P(2, 2), E("z*T*E[1,2]", 2)) == E("z*T^-1*E[1,2]", 2)


def test_factorization_multiplies_back():
    for key in [(2, -1, 3, 1), (-1, 2, 1, 3), (0, 0, 2, 2), (1, 1, 2, 1)]:
        acc = None
        for kind, a, b in factorize(key):
            k, m = {"z": (1, 0), "zinv": (-1, 0), "T": (0, 1), "Tinv": (0, -1), "E": (0, 0)}[kind]
            f = Element(3, {(k, m, a, a if b is None else b): 1})
            acc = f if acc is None else multiply(acc, f)
        assert acc == Element(3, {key: 1})


def test_closed_form_examples():
    p = P(2, 2)
    x = sigma_apply(p, E("z*T*E[1,2]", 2))
    assert x == E("z*T^-1*E[1,2]", 2)
    assert sigma_apply(p, x) == E("z*T*E[1,2]", 2)
    assert sigma_apply(P(2, 2, r=2), E("z*E[1,1]", 2)) == E("z*T^2*E[2,2]", 2)
    assert sigma_apply(P(2, 1), E("E[1,2]", 2)) == E("z^-1*E[2,1]", 2)


def test_dot_sigma_examples():
    assert dot_sigma(1, Q, 0, E("T", 1)) == E("q*T^-1", 1)
    assert dot_sigma(-1, 1, 0, E("z", 1)) == E("-z", 1)
    assert dot_sigma(-1, V, 3, E("1", 1)) == E("1", 1)


def test_block_identities():
    # sigma_{+,q,0}(z^-1 sigma_{+,q,0}(x)) = x z^-1 and its case - companions
    zinv = E("z^-1", 1)
    for k in range(-2, 3):
        for m in range(-2, 3):
            x = Element(1, {(k, m, 1, 1): 1})
            assert dot_sigma(1, Q, 0, zinv * dot_sigma(1, Q, 0, x)) == x * zinv
            assert dot_sigma(1, 1, 0, zinv * dot_sigma(1, Q, 0, x)) == zinv * x
            assert dot_sigma(-1, Q, 0, zinv * dot_sigma(-1, Q, 0, x)) == -(x * zinv)
            assert dot_sigma(-1, 1, 0, zinv * dot_sigma(-1, Q, 0, x)) == -(zinv * x)


def test_dagger_examples():
    assert dagger(E("E[1,1]", 2)) == E("E[2,2]", 2)
    assert dagger(E("E[1,2]", 2)) == E("E[1,2]", 2)
    assert dagger(dagger(E("z*T*E[2,1]", 2))) == E("z*T*E[2,1]", 2)


def test_rectangular_dagger():
    # 2 x 3 block: (M^dagger)[a, b] = M[3 - b, 4 - a]
    block = {(1, 3): "x", (2, 1): "y"}
    assert dagger_block(block, 2, 3) == {(1, 2): "x", (3, 1): "y"}
    assert dagger_block(dagger_block(block, 2, 3), 3, 2) == block


def test_automorphism_examples():
    assert apply_automorphism("theta", E("T*E[1,1]", 2), 1) == E("q*T*E[1,1]", 2)
    assert apply_automorphism("gamma", E("E[2,1]", 2), [Q]) == E("q*E[2,1]", 2)
    assert apply_automorphism("ad_J", E("E[1,1]", 2)) == E("E[2,2]", 2)
    with pytest.raises(ValueError):
        apply_automorphism("theta", E("T*E[1,1]", 2), Fraction(1, 3))


@given(elements(3), elements(3), st.sampled_from([Fraction(1, 2), -1, 2]))
def test_automorphisms_are_multiplicative(a, b, s):
    alpha = (Q, -V)
    for f in (lambda x: apply_automorphism("theta", x, s), lambda x: apply_automorphism("gamma", x, alpha),
              lambda x: ad_J(x), lambda x: ad_J(x, 1)):
        assert f(multiply(a, b)) == multiply(f(a), f(b))


def test_transpose_examples():
    p = P(2, 2)
    assert sigma_transpose_variant(p, E("E[1,1]", 2)) == E("E[1,1]", 2)
    assert ad_J(sigma_transpose_variant(p, E("z*T*E[1,2]", 2))) == sigma_apply(p, E("z*T*E[1,2]", 2))


def test_transpose_breaks_gradation_for_n3():
    p = P(3, 3)
    x = E("E[2,1]", 3)
    assert weight(3, next(iter(sigma_transpose_variant(p, x).keys()))) != weight(3, (0, 0, 2, 1))


def test_random_admissible_cvec_is_admissible():
    rng = random.Random(3)
    for N in range(1, 6):
        for n in range(1, N + 1):
            for _ in range(5):
                c = random_admissible_cvec(N, n, rng)
                assert validate_params(InvolutionParams(N, n, ONE, Q, 0, c)).ok


GRID = [P(3, 1, epsilon=-1, c=[1, -1]), P(3, 2, c=[1, 1]), P(2, 2, A=-1, r=1), P(3, 3, A=V**2, B=1, r=2, c=[-1, -1]),
        P(4, 2, epsilon=-1, c=[-1, Q, 1]), P(2, 1, B=Q**3, c=[V])]


@pytest.mark.parametrize("p", GRID, ids=lambda p: f"N{p.N}n{p.n}")
def test_laws_on_window(p):
    assert check_involution(p, 2, 2).ok


@pytest.mark.parametrize("p", GRID, ids=lambda p: f"N{p.N}n{p.n}")
def test_oracle_blocks_and_cached_agree(p):
    for k in range(-2, 3):
        for m in range(-2, 3):
            for i in range(1, p.N + 1):
                for j in range(1, p.N + 1):
                    x = Element(p.N, {(k, m, i, j): 1})
                    y = sigma_apply(p, x)
                    assert y == sigma_apply_oracle(p, x) == sigma_apply_blocks(p, x)


@given(elements(3, max_terms=4))
def test_sigma_linear_and_involutive(a):
    p = GRID[0]
    assert sigma_apply(p, sigma_apply(p, a)) == a
    assert sigma_apply_blocks(p, a) == sigma_apply(p, a)
