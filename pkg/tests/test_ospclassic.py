from fractions import Fraction

import numpy as np
import pytest

from uqosp_fock.algebra_calculations.alg_enums import Grade, IndexRangeError, Sign
from uqosp_fock.algebra_calculations.ospclassic import (
    CartanMatrix,
    GradedMatrix,
    anticommutator,
    cartan_element,
    classical_parabose,
    in_osp,
    parabose_operators,
    span_rank,
    supercommutator,
    verify_classical,
)
from uqosp_fock.algebra_calculations.qcoeff import Surd


def test_cartan_matrix():
    np.testing.assert_array_equal(
        CartanMatrix(3).entries, np.array([[2, -1, 0], [-1, 2, -1], [0, -1, 1]])
    )
    assert CartanMatrix(1).entry(1, 1) == 1
    with pytest.raises(IndexRangeError):
        CartanMatrix(2).entry(3, 1)


def test_parabose_matrices_are_odd_osp_elements():
    ops = parabose_operators(2)
    assert len(ops) == 4
    for matrix in ops.values():
        assert matrix.grade is Grade.ODD
        assert matrix.dim == 5
        assert in_osp(matrix)
    assert classical_parabose(2, 1, Sign.MINUS).entry(0, 1) == Surd(Fraction(0), Fraction(1))


def test_anticommutator_gives_cartan_element():
    n = 2
    ops = parabose_operators(n)
    for i in (1, 2):
        pair = anticommutator(ops[(i, Sign.MINUS)], ops[(i, Sign.PLUS)])
        assert (pair + cartan_element(n, i) * 2).is_zero()
        assert pair.grade is Grade.EVEN


def test_parabose_triple_relation_single_mode():
    ops = parabose_operators(1)
    minus, plus = ops[(1, Sign.MINUS)], ops[(1, Sign.PLUS)]
    # [{A-, A+}, A+] = 2 A+
    lhs = supercommutator(anticommutator(minus, plus), plus)
    assert (lhs - plus * 2).is_zero()


def test_mixed_grade_addition_rejected():
    even = cartan_element(1, 1)
    odd = classical_parabose(1, 1, Sign.PLUS)
    with pytest.raises(ValueError):
        even + odd
    assert ((GradedMatrix.zero(3) + odd) - odd).is_zero()


def test_span_rank_counts_independent_matrices():
    ops = parabose_operators(1)
    members = list(ops.values()) + [ops[(1, Sign.PLUS)] * 3]
    assert span_rank(members) == 2


@pytest.mark.parametrize("n, span", [(1, 5), (2, 14), (3, 27)])
def test_classical_suite_passes(n, span):
    results = verify_classical(n)
    assert all(r.passed for r in results), [r.id for r in results if not r.passed]
    assert sum(r.id.startswith("PB[") for r in results) == 8 * n**3
    assert sum(r.id.startswith("SP[") for r in results) == 16 * n**4
    (span_result,) = [r for r in results if r.id.startswith("SPAN[")]
    assert span_result.detail == f"dimension {span}"


def test_classical_suite_reports_corrupted_operators():
    ops = parabose_operators(2)
    ops[(2, Sign.PLUS)] = ops[(2, Sign.PLUS)] * 2
    failures = [r for r in verify_classical(2, ops) if not r.passed]
    assert failures
    assert any(r.id.startswith("PB[") for r in failures)


def test_classical_suite_rejects_large_n():
    with pytest.raises(IndexRangeError):
        verify_classical(5)
