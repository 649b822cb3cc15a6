"""Exact elimination engine and series formatting."""

import random
from fractions import Fraction

import pytest

from brieskorn import (
    InconsistentComplex,
    RationalMatrix,
    build_complex,
    graded_homology,
    poincare_series,
    seifert_data,
    validate_params,
)
from brieskorn.homology import rank_by_minors
from brieskorn.orbits import GradedComplex


def random_small_matrix(rng, rows, cols):
    return RationalMatrix(
        rows, cols, [[rng.choice([-1, 0, 1]) for _ in range(cols)] for _ in range(rows)]
    )


def test_rank_matches_minor_expansion():
    rng = random.Random(7)
    for _ in range(250):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        mat = random_small_matrix(rng, rows, cols)
        assert mat.rank() == rank_by_minors(mat)


def test_rank_handles_general_rationals():
    mat = RationalMatrix(
        3,
        3,
        [
            [Fraction(1, 2), Fraction(1, 3), Fraction(5, 6)],
            [Fraction(2, 7), Fraction(1, 7), Fraction(3, 7)],
            [Fraction(1), Fraction(2, 3), Fraction(5, 3)],
        ],
    )
    # column 3 = column 1 + column 2 in rows 1 and 2; check row 3: 1 + 2/3 = 5/3
    assert mat.rank() == rank_by_minors(mat) == 2


def test_graded_homology_first_fiber_block_2_3_7():
    data = seifert_data(validate_params([2, 3, 7]))
    complex_ = build_complex(data, 1)
    assert graded_homology(complex_) == {-4: 1, -2: 1}


def test_graded_homology_first_fiber_block_2_2_3_3_3():
    data = seifert_data(validate_params([2, 2, 3, 3, 3]))
    complex_ = build_complex(data, 1)
    dims = {k: len(g) for k, g in complex_.generators_by_grading.items()}
    assert dims == {-14: 36, -13: 55, -12: 1}
    assert graded_homology(complex_) == {-14: 1, -13: 20, -12: 1}


def test_zero_differential_returns_chain_dims():
    gens = {0: ["a", "b"], -1: ["c"]}
    diff = {0: RationalMatrix(1, 2), -1: RationalMatrix(0, 1)}
    complex_ = GradedComplex("test", gens, diff)
    assert graded_homology(complex_) == {0: 2, -1: 1}


def test_inconsistent_complex_detected():
    gens = {0: ["a"], -1: ["b"], -2: ["c"]}
    diff = {
        0: RationalMatrix(1, 1, [[1]]),
        -1: RationalMatrix(1, 1, [[1]]),
        -2: RationalMatrix(0, 1),
    }
    with pytest.raises(InconsistentComplex):
        graded_homology(GradedComplex("bad", gens, diff))


def test_homology_invariant_under_generator_permutation():
    rng = random.Random(11)
    data = seifert_data(validate_params([2, 2, 3, 3, 3]))
    complex_ = build_complex(data, 1)
    reference = graded_homology(complex_)

    permuted_gens = {}
    perms = {}
    for k, gens in complex_.generators_by_grading.items():
        order = list(range(len(gens)))
        rng.shuffle(order)
        perms[k] = order
        permuted_gens[k] = [gens[i] for i in order]

    permuted_diff = {}
    for k, mat in complex_.differential.items():
        rows = perms.get(k - 1, list(range(mat.rows)))
        cols = perms.get(k, list(range(mat.cols)))
        new = RationalMatrix(mat.rows, mat.cols)
        for i, old_i in enumerate(rows):
            for j, old_j in enumerate(cols):
                new[i, j] = mat[old_i, old_j]
        permuted_diff[k] = new

    shuffled = GradedComplex("shuffled", permuted_gens, permuted_diff)
    assert graded_homology(shuffled) == reference


def test_alternating_sums_agree_per_class(fuzz_corpus):
    for data in fuzz_corpus[:120]:
        complex_ = build_complex(data, 1)
        chain_chi = sum(
            (-1) ** (k % 2) * len(g) for k, g in complex_.generators_by_grading.items()
        )
        homology = graded_homology(complex_)
        homology_chi = sum((-1) ** (k % 2) * c for k, c in homology.items())
        assert chain_chi == homology_chi == 2 - 2 * data.genus


def test_poincare_series_formatting():
    series = poincare_series({-2: 10, -4: 11, -6: 11, -8: 11}, floor=-6)
    assert series.terms == ((-2, 10), (-4, 11), (-6, 11))
    assert series.text == "10*t^2 + 11*t^4 + 11*t^6"


def test_poincare_series_empty():
    series = poincare_series({}, floor=-10)
    assert series.terms == ()
    assert series.text == "0"


def test_poincare_series_2_3_11_top_coefficient():
    from brieskorn import closed_form_homology

    data = seifert_data(validate_params([2, 3, 11]))
    series = poincare_series(closed_form_homology(data, -2), floor=-2)
    assert series.terms == ((-2, 2),)
