import pytest

from qmat import degree
from qmat.degree import (
    brute_force_h,
    candidates_for,
    center_generation_check,
    classify_blocks,
    closed_form_degree,
    degree_quasipoly,
    degree_report,
    is_good_modulus,
    rectangle_corank_formula,
    verify_central_candidate,
)
from qmat.errors import GuardExceededError
from qmat.minors import (
    CentralCandidate,
    ExponentMatrix,
    MinorDescriptor,
    candidate_quarter,
    candidates_even_m,
    candidates_theta_chain,
    candidates_Za,
    d_family,
)
from qmat.ncalgebra import AlgebraDescriptor
from qmat.skewlat import SkewMatrix, defining_matrix, skew_normal_form

square = AlgebraDescriptor.square
rect = AlgebraDescriptor.rectangle
hook = AlgebraDescriptor.hook


# --- Degrees ---

def test_degree_examples():
    assert degree_quasipoly(defining_matrix(square(2)), 3) == 3
    assert degree_quasipoly(defining_matrix(square(3)), 5) == 125
    assert degree_quasipoly(SkewMatrix(((0, 0), (0, 0))), 7) == 1
    assert degree_quasipoly(SkewMatrix(((0, 2), (-2, 0))), 4) == 2


def test_closed_forms():
    assert closed_form_degree(square(3), 5) == 125
    assert closed_form_degree(hook(3, 2), 3) == 27
    assert closed_form_degree(hook(3, 2), 4) == 32
    assert closed_form_degree(square(3), 4) is None
    assert closed_form_degree(AlgebraDescriptor.cross(3, 2), 3) is None


def test_degree_report_for_m3():
    report = degree_report(square(3), 5)
    assert report.degree == 125
    assert report.h == 125 ** 2
    assert report.corank == 3
    assert report.match is True


def test_degree_report_without_closed_form():
    report = degree_report(AlgebraDescriptor.cross(3, 2), 3)
    assert report.closed_form is None
    assert report.match is None


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("m", [3, 5, 7])
def test_square_degree_formula(n, m):
    assert degree_report(square(n), m).match is True


@pytest.mark.parametrize("n", range(1, 5))
@pytest.mark.parametrize("r", range(1, 5))
def test_rectangle_good_modulus_formula(n, r):
    alg = rect(n, r)
    snf = skew_normal_form(defining_matrix(alg))
    for m in (3, 5, 7):
        if is_good_modulus(snf, m):
            assert degree_report(alg, m).match is True


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("r", range(1, 7))
def test_rectangle_degree_at_two(n, r):
    assert degree_report(rect(n, r), 2).degree == 2 ** ((n + r - 1) // 2)


@pytest.mark.parametrize("n, r", [(n, r) for n in range(1, 6) for r in range(1, n + 1)])
def test_hook_degree_formula(n, r):
    for m in (2, 3, 4, 5):
        assert degree_report(hook(n, r), m).match is True


@pytest.mark.parametrize("n", range(1, 9))
@pytest.mark.parametrize("r", range(1, 9))
def test_corank_gcd_formula(n, r):
    assert skew_normal_form(defining_matrix(rect(n, r))).zero_rank == rectangle_corank_formula(n, r)


def test_brute_force_agrees_on_m2():
    assert brute_force_h(defining_matrix(square(2)), 3) == 9


def test_good_modulus():
    snf = skew_normal_form(SkewMatrix(((0, 3), (-3, 0))))
    assert is_good_modulus(snf, 5)
    assert not is_good_modulus(snf, 3)
    assert not is_good_modulus(snf, 4)


# --- Blocks ---

def test_blocks_of_m22():
    report = classify_blocks(rect(2, 2))
    assert report.count_1 == 1
    assert report.corank == 2
    assert report.passed


def test_blocks_of_m32():
    report = classify_blocks(rect(3, 2))
    assert report.count_1 == 2
    assert report.count_2 + report.count_4 == 1
    assert report.corank == 0
    assert report.passed


def test_four_block_appears_for_m63():
    report = classify_blocks(rect(6, 3))
    assert report.count_4 == 1
    assert report.passed


def test_blocks_of_hook():
    report = classify_blocks(hook(3, 2))
    assert (report.count_1, report.count_2) == (2, 1)
    assert report.passed


@pytest.mark.parametrize("n", range(1, 5))
@pytest.mark.parametrize("r", range(1, 5))
def test_rectangle_blocks_have_no_findings(n, r):
    report = classify_blocks(rect(n, r))
    assert report.findings == ()
    assert report.to_dict()["findings"] == []


# --- Centrality ---

def test_za_central_both_ways():
    alg = rect(2, 2)
    for c in candidates_Za(2, 2, 3):
        assert verify_central_candidate(c, alg, 3, "lattice").passed
        assert verify_central_candidate(c, alg, 3, "symbolic").passed


def test_single_generator_fails_with_witness():
    alg = rect(2, 2)
    c = CentralCandidate("Z12", ((MinorDescriptor((1,), (2,)), 1),), (2, 2), 3)
    lattice = verify_central_candidate(c, alg, 3, "lattice")
    symbolic = verify_central_candidate(c, alg, 3, "symbolic")
    assert not lattice.passed and lattice.witness == "Z11"
    assert not symbolic.passed and symbolic.witness == "Z11"


def test_chain_on_small_hook_is_symbolically_central():
    alg = hook(2, 1)
    for c in candidates_theta_chain(2, 1, 3):
        assert verify_central_candidate(c, alg, 3, "symbolic").passed


@pytest.mark.parametrize("n, r", [(n, r) for n in range(1, 8) for r in (1, 2) if r <= n])
def test_chains_in_lattice_kernel(n, r):
    alg = hook(n, r)
    for m in (3, 4, 5):
        for c in candidates_theta_chain(n, r, m):
            assert verify_central_candidate(c, alg, m).passed, c.label


def test_quarter_and_corners_central():
    alg = rect(6, 3)
    assert verify_central_candidate(candidate_quarter(6, 3, 4), alg, 4).passed
    for c in candidates_even_m(4, 3, 2):
        assert verify_central_candidate(c, rect(4, 3), 2).passed, c.label


def test_symbolic_guard():
    with pytest.raises(GuardExceededError, match="--unsafe-guard-symbolic"):
        verify_central_candidate(candidates_Za(4, 4, 3)[0], square(4), 3, "symbolic")
    with pytest.raises(GuardExceededError):
        verify_central_candidate(candidates_Za(2, 2, 5)[0], rect(2, 2), 5, "symbolic")


def test_symbolic_guard_can_be_raised():
    c = candidates_Za(2, 2, 5)[1]
    assert verify_central_candidate(c, rect(2, 2), 5, "symbolic", max_modulus=5).passed


def test_verify_rejects_bad_input():
    c = candidates_Za(2, 2, 3)[0]
    with pytest.raises(ValueError, match="Unknown mode"):
        verify_central_candidate(c, rect(2, 2), 3, "numeric")
    with pytest.raises(ValueError, match="frame"):
        verify_central_candidate(c, rect(3, 2), 3)


def test_candidates_for_rectangles():
    labels = [c.label for c in candidates_for(rect(6, 3), 4)]
    assert "A1+A2" in labels
    assert [c.label for c in candidates_for(rect(2, 2), 3)] == ["Z_1", "Z_2"]


# --- Center generation ---

@pytest.mark.parametrize("n, r, m", [(2, 2, 3), (3, 3, 5), (3, 2, 5), (6, 2, 3)])
def test_center_generation(n, r, m):
    verdict = center_generation_check(n, r, m)
    assert verdict.equal
    assert verdict.kernel_order == verdict.generated_order


def test_center_generation_orders():
    assert center_generation_check(2, 2, 3).kernel_order == 9
    assert center_generation_check(3, 3, 5).kernel_order == 125


def test_center_generation_needs_good_modulus():
    with pytest.raises(ValueError, match="not a good modulus"):
        center_generation_check(2, 2, 4)


# --- d family, wide frames, structural witnesses ---

@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("m", [3, 5])
def test_d_family_in_lattice_kernel(n, m):
    for c in d_family(n, m):
        assert verify_central_candidate(c, square(n), m).passed, c.label


def test_d_family_symbolically_central_in_m3():
    for c in d_family(3, 3):
        assert verify_central_candidate(c, square(3), 3, "symbolic").passed, c.label


def test_candidates_for_squares_include_d_family():
    labels = [c.label for c in candidates_for(square(3), 3)]
    assert {"d_2", "d_3"} <= set(labels)
    assert all(verify_central_candidate(c, square(3), 3).passed for c in candidates_for(square(3), 3))


def test_za_on_wide_rectangles():
    alg = rect(2, 6)
    cands = candidates_for(alg, 3)
    assert [c.label for c in cands] == ["Z_1", "Z_2"]
    assert all(verify_central_candidate(c, alg, 3).passed for c in cands)
    verdict = center_generation_check(2, 6, 3)
    assert verdict.equal
    assert verdict.kernel_order == center_generation_check(6, 2, 3).kernel_order


def test_za_on_single_row_symbolically():
    alg = rect(1, 3)
    (c,) = candidates_Za(1, 3, 3)
    assert verify_central_candidate(c, alg, 3, "symbolic").passed


def test_structural_disagreement_reports_witness(monkeypatch):
    alg = rect(2, 2)
    c = candidates_Za(2, 2, 3)[0]
    monkeypatch.setattr(
        degree, "structural_covariance", lambda cand, a, m=None: ExponentMatrix(((0, 1), (0, 0)), m)
    )
    verdict = verify_central_candidate(c, alg, 3)
    assert not verdict.passed
    assert verdict.witness == "Z12"
    assert "disagrees" in verdict.detail
