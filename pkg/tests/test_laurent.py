import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Poly, divisors

from qmat.laurent import (
    ONE,
    Q,
    Q_INV,
    Q_MINUS_QINV,
    Q_SCALAR,
    ZERO,
    CyclotomicScalar,
    LaurentScalar,
    cyclotomic_poly,
    laurent_arith,
    phi,
    reduce_at_root,
)

scalars = st.lists(
    st.tuples(st.integers(-4, 4), st.integers(-5, 5)), max_size=5
).map(LaurentScalar.from_terms)


def test_q_times_inverse_is_one():
    assert Q_SCALAR * Q_INV == ONE


def test_difference_of_squares():
    plus = Q_SCALAR + Q_INV
    assert Q_MINUS_QINV * plus == LaurentScalar.from_terms([(2, 1), (-2, -1)])


def test_square_renders_descending():
    assert str(Q_MINUS_QINV * Q_MINUS_QINV) == "q^2 - 2 + q^-2"


@pytest.mark.parametrize("value, text", [
    (ZERO, "0"),
    (Q_SCALAR, "q"),
    (-Q_SCALAR, "-q"),
    (LaurentScalar.monomial(-1, 2), "2*q^-1"),
    (Q_MINUS_QINV, "q - q^-1"),
])
def test_render(value, text):
    assert str(value) == text


def test_from_terms_merges_and_drops_zeros():
    s = LaurentScalar.from_terms([(1, 2), (1, -2), (0, 3)])
    assert s.terms == ((0, 3),)


def test_negative_power_of_monomial():
    assert LaurentScalar.monomial(2, -1) ** -1 == LaurentScalar.monomial(-2, -1)
    assert Q_SCALAR ** -3 == LaurentScalar.monomial(-3)


def test_negative_power_of_binomial_rejected():
    with pytest.raises(ValueError):
        Q_MINUS_QINV ** -1


def test_laurent_arith_ops():
    assert laurent_arith(Q_SCALAR, Q_INV, "mul") == ONE
    assert laurent_arith(Q_SCALAR, Q_INV, "sub") == Q_MINUS_QINV
    with pytest.raises(ValueError, match="Unknown op"):
        laurent_arith(ONE, ONE, "div")


@pytest.mark.parametrize("m, coeffs", [
    (1, [1, -1]),
    (2, [1, 1]),
    (3, [1, 1, 1]),
    (4, [1, 0, 1]),
    (6, [1, -1, 1]),
])
def test_small_cyclotomic_polys(m, coeffs):
    assert [int(c) for c in cyclotomic_poly(m).all_coeffs()] == coeffs


@pytest.mark.parametrize("m", range(1, 25))
def test_cyclotomic_product_identity(m):
    product = Poly(1, Q, domain="ZZ")
    for d in divisors(m):
        product = product * cyclotomic_poly(d)
    assert product == Poly(Q ** m - 1, Q, domain="ZZ")
    assert cyclotomic_poly(m).degree() == phi(m)


def test_cyclotomic_index_must_be_positive():
    with pytest.raises(ValueError):
        cyclotomic_poly(0)


def test_reduce_examples():
    assert reduce_at_root(LaurentScalar.monomial(3), 3) == CyclotomicScalar(3, (1, 0))
    assert reduce_at_root(LaurentScalar.from_terms([(0, 1), (1, 1), (2, 1)]), 3).is_zero()
    assert reduce_at_root(Q_MINUS_QINV, 2).is_zero()
    assert not reduce_at_root(Q_MINUS_QINV, 3).is_zero()
    assert reduce_at_root(LaurentScalar.from_terms([(0, 2), (5, -1)]), 1) == CyclotomicScalar(1, (1,))


def test_cyclotomic_scalar_checks_width_and_modulus():
    with pytest.raises(ValueError):
        CyclotomicScalar(5, (1, 2))
    with pytest.raises(ValueError, match="Modulus mismatch"):
        CyclotomicScalar.zero(3) + CyclotomicScalar.zero(4)


@settings(max_examples=150, deadline=None)
@given(scalars, scalars, st.integers(1, 12))
def test_reduction_is_a_ring_homomorphism(a, b, m):
    ra, rb = reduce_at_root(a, m), reduce_at_root(b, m)
    assert reduce_at_root(a + b, m) == ra + rb
    assert reduce_at_root(a * b, m) == ra * rb


@settings(max_examples=100, deadline=None)
@given(scalars, scalars, scalars)
def test_laurent_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()


@settings(max_examples=100, deadline=None)
@given(scalars, st.integers(-6, 6))
def test_shift_matches_monomial_product(a, k):
    assert a.shift(k) == a * LaurentScalar.monomial(k)
