from itertools import combinations

import numpy as np
import pytest

from qmat.laurent import ONE, LaurentScalar
from qmat.minors import (
    ExponentMatrix,
    MinorDescriptor,
    candidate_quarter,
    candidate_Za,
    candidates_even_m,
    candidates_theta_chain,
    candidates_Za,
    covariance_exponents_structural,
    d_family,
    leading_exponent,
    psi,
    quantum_determinant,
    quantum_minor,
    structural_covariance,
    theta,
    theta_tilde,
)
from qmat.ncalgebra import AlgebraDescriptor, GeneratorId, covariance_profile


def D(rows, cols):
    return MinorDescriptor(tuple(rows), tuple(cols))


# --- Descriptors ---

def test_minor_descriptor_sorts_and_labels():
    d = D((2, 1), (4, 3))
    assert d.rows == (1, 2) and d.cols == (3, 4)
    assert d.label() == "D(1,2|3,4)"
    assert D((), ()).label() == "1"


def test_minor_descriptor_validation():
    with pytest.raises(ValueError):
        D((1, 2), (1,))
    with pytest.raises(ValueError):
        D((1, 1), (1, 2))


def test_exponent_matrix_reduces_and_vectorizes():
    E = ExponentMatrix(((3, -1), (0, 4)), modulus=3)
    assert E.entries == ((0, 2), (0, 1))
    alg = AlgebraDescriptor.square(2)
    assert E.vec(alg) == [0, 2, 0, 1]
    assert ExponentMatrix.from_vec([1, 0, 0, 1], alg) == ExponentMatrix(((1, 0), (0, 1)))


def test_exponent_matrix_outside_generators():
    alg = AlgebraDescriptor.hook(3, 1)
    E = ExponentMatrix(((0, 0, 0), (0, 1, 0), (0, 0, 0)))
    with pytest.raises(ValueError, match="outside"):
        E.vec(alg)


# --- Quantum minors ---

def test_one_by_one_minor_is_generator():
    alg = AlgebraDescriptor.square(2)
    assert str(quantum_minor(D((2,), (1,)), alg)) == "Z21"


def test_two_by_two_determinant():
    assert str(quantum_determinant(AlgebraDescriptor.square(2))) == "Z11*Z22 - q*Z12*Z21"


def test_three_by_three_determinant_terms():
    alg = AlgebraDescriptor.square(3)
    det = quantum_determinant(alg)
    assert len(det.terms) == 6
    mono = [0] * 9
    for g in (GeneratorId(1, 3), GeneratorId(2, 2), GeneratorId(3, 1)):
        mono[alg.index(g)] = 1
    assert det.as_dict()[tuple(mono)] == LaurentScalar.monomial(3, -1)


def test_minor_outside_algebra_rejected():
    with pytest.raises(ValueError, match="not contained"):
        quantum_minor(D((2, 3), (2, 3)), AlgebraDescriptor.hook(3, 1))


def test_minor_leading_term_is_diagonal():
    alg = AlgebraDescriptor.square(4)
    for k in range(1, 4):
        for rows in combinations(range(1, 5), k):
            for cols in combinations(range(1, 5), k):
                mono, coeff = quantum_minor(D(rows, cols), alg).leading()
                expected = [0] * 16
                for i, j in zip(rows, cols):
                    expected[alg.index((i, j))] = 1
                assert mono == tuple(expected)
                assert coeff == ONE


# --- Minor families ---

def test_theta_windows():
    assert theta(2, 5, 3) == D((1, 2, 3), (2, 3, 4))
    assert theta(5, 5, 3) == D((1,), (5,))
    assert theta(4, 5, 3) == D((1, 2), (4, 5))
    assert theta_tilde(3, 3, 3) == D((3,), (1,))


def test_theta_index_range():
    with pytest.raises(ValueError, match="out of range"):
        theta(0, 3, 2)


def test_psi_windows():
    assert psi(-1, 6, 2).is_empty()
    assert psi(0, 6, 2) == D((1,), (2,))
    assert psi(3, 6, 2) == D((3, 4), (1, 2))
    assert psi(6, 6, 2) == D((6,), (1,))
    assert psi(1, 3, 3) == D((1, 2, 3), (1, 2, 3))


# --- Structural covariance ---

def test_structural_covariance_of_corner():
    alg = AlgebraDescriptor.square(3)
    e = covariance_exponents_structural(D((2, 3), (1, 2)), alg)
    assert e.entries[0][0] == 1   # Z11: column 1 in J, row 1 not in I
    assert e.entries[1][2] == -1  # Z23: row 2 in I, column 3 not in J
    assert e.entries[1][0] == 0


def test_structural_covariance_of_determinant_vanishes():
    alg = AlgebraDescriptor.square(2)
    assert covariance_exponents_structural(D((1, 2), (1, 2)), alg).is_zero()


@pytest.mark.parametrize("n", [2, 3, 4])
def test_structural_rule_matches_rewriting_on_corners(n):
    alg = AlgebraDescriptor.square(n)
    corners = [theta(k, n, n) for k in range(2, n + 1)] + [theta_tilde(k, n, n) for k in range(2, n + 1)]
    for d in corners:
        profile = covariance_profile(quantum_minor(d, alg), alg)
        structural = covariance_exponents_structural(d, alg)
        for g in alg.generators:
            assert profile[g] is not None
            assert structural.entries[g.row - 1][g.col - 1] == -profile[g]


# --- Candidates ---

def test_za_for_square_two():
    z1, z2 = candidates_Za(2, 2, 3)
    assert z1.factors == ((D((1, 2), (1, 2)), 1),)
    assert leading_exponent(z2).entries == ((0, 2), (1, 0))


def test_za_for_tall_rectangle():
    z1 = candidate_Za(1, 6, 2)
    assert z1.factors == (
        (D((1, 2), (1, 2)), 1),
        (D((3, 4), (1, 2)), -1),
        (D((5, 6), (1, 2)), 1),
    )
    assert z1.describe() == "D(1,2|1,2)*D(3,4|1,2)^-1*D(5,6|1,2)"


def test_za_needs_odd_quotients():
    with pytest.raises(ValueError, match="must both be odd"):
        candidate_Za(1, 4, 2)
    with pytest.raises(ValueError, match="must both be odd"):
        candidate_Za(1, 2, 4)
    assert candidates_Za(4, 2) == []


def test_za_for_wide_rectangle_is_transposed():
    wide = candidate_Za(1, 2, 6)
    assert wide.shape == (2, 6)
    assert wide.factors == tuple((d.transpose(), e) for d, e in candidate_Za(1, 6, 2).factors)
    assert leading_exponent(wide, 3).entries == tuple(zip(*leading_exponent(candidate_Za(1, 6, 2), 3).entries))


def test_negative_exponents_need_modulus():
    z2 = candidate_Za(2, 2, 2)
    with pytest.raises(ValueError, match="modulus"):
        z2.realized()
    assert (D((1,), (2,)), 2) in z2.realized(3)


def test_chain_for_square_two():
    det, c2 = candidates_theta_chain(2, 2, 3)
    assert det.label == "det_q"
    assert leading_exponent(c2).entries == ((0, 2), (1, 0))


def test_chain_for_r_plus_two():
    c1 = candidates_theta_chain(4, 2)[0]
    assert c1.factors == (
        (D((1,), (4,)), 1),
        (D((1, 2), (2, 3)), -1),
        (D((4,), (1,)), 1),
        (D((2, 3), (1, 2)), -1),
        (D((1, 2), (1, 2)), 1),
    )


def test_anchored_chain_for_single_column_hook():
    (c,) = candidates_theta_chain(4, 1)
    arr = leading_exponent(c).as_array()
    expected = np.zeros((4, 4), dtype=object)
    expected[0, 3], expected[0, 2], expected[0, 1] = 1, -1, 1
    expected[1, 0], expected[2, 0], expected[3, 0] = -1, 1, -1
    assert (arr == expected).all()


def test_d_family_labels():
    assert [d.label for d in d_family(3)] == ["d_2", "d_3"]


def test_even_m_candidates_for_square_two():
    corners, cross = candidates_even_m(2, 2, 4)
    assert corners.label == "corners[1,2|1,2]"
    assert leading_exponent(corners).entries == ((2, 2), (2, 2))
    assert leading_exponent(cross).entries == ((0, 2), (2, 0))
    (only,) = [c for c in candidates_even_m(2, 2, 2) if c.label == "row1+col1"]
    assert leading_exponent(only).entries == ((0, 1), (1, 0))


def test_even_m_row_column_with_odd_n():
    (c,) = [c for c in candidates_even_m(3, 3, 2) if c.label == "row1+col1"]
    assert leading_exponent(c).entries == ((1, 1, 1), (1, 0, 0), (1, 0, 0))


def test_even_m_rejects_odd_m():
    with pytest.raises(ValueError, match="even m"):
        candidates_even_m(2, 2, 3)


def test_quarter_candidate():
    c = candidate_quarter(6, 3, 4)
    rows = [(3, 1, 0, 1, 1, 0), (2, 1, 1, 0, 1, 1), (3, 0, 1, 3, 0, 1)]
    assert leading_exponent(c).entries == tuple(zip(*rows))


def test_quarter_support_is_stable_in_m():
    a = leading_exponent(candidate_quarter(6, 3, 4)).as_array()
    b = leading_exponent(candidate_quarter(6, 3, 8)).as_array()
    assert ((a != 0) == (b != 0)).all()


@pytest.mark.parametrize("n, r, m", [(6, 2, 4), (6, 3, 2), (5, 3, 4)])
def test_quarter_preconditions(n, r, m):
    with pytest.raises(ValueError):
        candidate_quarter(n, r, m)


def test_structural_covariance_of_candidate():
    alg = AlgebraDescriptor.rectangle(2, 2)
    z1, z2 = candidates_Za(2, 2, 3)
    assert structural_covariance(z1, alg).is_zero()
    assert structural_covariance(z2, alg, 3).is_zero()
