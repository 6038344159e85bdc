import cmath
import math

import numpy as np
import pytest

from uqosp_fock.algebra_calculations.alg_enums import (
    GuardError,
    IndexRangeError,
    RelationFamily,
    UnitarityError,
)
from uqosp_fock.algebra_calculations.fockrep import (
    FockBasisIndex,
    FockRepresentation,
    OpKind,
    OpLabel,
    block_dimension_multinomial,
    block_dimension_polynomial,
    build_generator_matrix,
    check_matrix_relations,
    check_unitarity,
    decompose_gl,
    decomposition_checks,
    fock_representation_for_q,
    gl_generator_gap,
    norm_consistency_checks,
    pbw_rank_report,
    positivity_diagnostic,
    root_order,
)
from uqosp_fock.algebra_calculations.uqosp import catalog


def failing(results):
    return [r.id for r in results if not r.passed]


def test_guard():
    with pytest.raises(GuardError):
        FockRepresentation(4, 20)
    with pytest.raises(GuardError):
        FockRepresentation(1, 1)
    assert FockRepresentation(2, 3).dim == 9


def test_basis_index_is_mixed_radix():
    index = FockBasisIndex.from_linear(5, 2, 3)
    assert index.m == (1, 2)
    assert index.linear == 5
    assert index.total == 3
    with pytest.raises(IndexRangeError):
        FockBasisIndex((3, 0), 3)
    with pytest.raises(IndexRangeError):
        FockBasisIndex.from_linear(9, 2, 3)


def test_op_labels():
    assert OpLabel.parse("k2^-1") == OpLabel(OpKind.KAPPA, 2, power=-1)
    assert OpLabel.parse("e1_2") == OpLabel(OpKind.E, 1, 2)
    assert str(OpLabel.parse("a3-")) == "a3-"
    assert str(OpLabel.parse("L1^-1")) == "L1^-1"
    with pytest.raises(IndexRangeError):
        OpLabel.parse("b1")
    with pytest.raises(IndexRangeError):
        build_generator_matrix("a3+", 2, 3)


def test_creation_amplitude_at_k2():
    matrix = build_generator_matrix("a1+", 1, 2).dense()
    assert matrix[1, 0] == pytest.approx(2**0.25)
    assert matrix[0, 1] == 0


def test_amplitudes_follow_norm_ratios():
    k = 5
    plus = build_generator_matrix("a1+", 1, k).dense()
    constant = 1 / math.cos(math.pi / (2 * k))
    for m in range(k - 1):
        q_number = math.sin(math.pi * (m + 1) / k) / math.sin(math.pi / k)
        assert abs(plus[m + 1, m]) ** 2 == pytest.approx(constant * q_number)
    assert not plus[:, k - 1].any()


def test_second_mode_carries_phase():
    k = 3
    plus = build_generator_matrix("a2+", 2, k)
    # |m1=1, m2=0> (index 3) -> |1, 1> (index 4)
    amp = plus.data[4, 3]
    assert amp / abs(amp) == pytest.approx(cmath.exp(-1j * math.pi / k))


def test_triplets_are_sorted():
    frame = build_generator_matrix("a1-", 2, 3).triplets()
    assert list(frame.columns) == ["row", "col", "re", "im"]
    assert list(frame["row"]) == sorted(frame["row"])
    assert len(frame) == 6


@pytest.mark.parametrize("n, k", [(1, 2), (1, 5), (2, 3), (3, 2)])
def test_unitarity_and_norms(n, k):
    rep = FockRepresentation(n, k)
    assert failing(check_unitarity(rep)) == []
    assert failing(norm_consistency_checks(rep)) == []


@pytest.mark.parametrize("n, k", [(1, 2), (1, 3), (1, 5), (2, 2), (2, 3), (2, 5), (3, 2)])
def test_relations_as_matrices(n, k):
    rep = FockRepresentation(n, k)
    results = check_matrix_relations(rep, catalog(n))
    assert failing(results) == []
    assert any(r.id.startswith("SYM_") for r in results)
    assert gl_generator_gap(rep) < 1e-9


def test_relation_mode_mismatch():
    rep = FockRepresentation(1, 3)
    with pytest.raises(IndexRangeError):
        check_matrix_relations(rep, catalog(2, [RelationFamily.CK]))


@pytest.mark.parametrize(
    "n, k, dims",
    [
        (2, 3, [1, 2, 3, 2, 1]),
        (1, 4, [1, 1, 1, 1]),
        (3, 2, [1, 3, 3, 1]),
        (3, 3, [1, 3, 6, 7, 6, 3, 1]),
    ],
)
def test_gl_decomposition(n, k, dims):
    decomposition = decompose_gl(FockRepresentation(n, k))
    assert decomposition.dims == dims
    assert len(decomposition.blocks) == n * k - n + 1
    assert decomposition.fock_strongly_connected
    assert failing(decomposition_checks(decomposition)) == []


def test_dimension_oracles_agree():
    assert block_dimension_polynomial(3, 3) == [1, 3, 6, 7, 6, 3, 1]
    for n, k in [(2, 4), (3, 3), (4, 3)]:
        poly = block_dimension_polynomial(n, k)
        assert sum(poly) == k**n
        assert poly == [block_dimension_multinomial(n, k, m) for m in range(n * (k - 1) + 1)]


def test_decomposition_json():
    data = decompose_gl(FockRepresentation(2, 2)).to_json()
    assert data["n"] == 2
    assert [b["dim"] for b in data["blocks"]] == [1, 2, 1]
    assert data["blocks"][1]["indices"] == [1, 2]


def test_positivity_diagnostic():
    real = positivity_diagnostic(1.1)
    assert not real.unit_modulus
    assert real.first_nonpositive_m is None
    twisted = positivity_diagnostic(1.1 * cmath.exp(1j * math.pi / 3))
    assert twisted.first_nonpositive_m == 1
    root = positivity_diagnostic(cmath.exp(1j * math.pi / 4))
    assert root.unit_modulus
    assert root.first_nonpositive_m == 4


def test_representation_for_q():
    assert root_order(cmath.exp(1j * math.pi / 7)) == 7
    assert root_order(1.1) is None
    rep = fock_representation_for_q(cmath.exp(1j * math.pi / 3), 2)
    assert (rep.n, rep.k) == (2, 3)
    with pytest.raises(UnitarityError) as err:
        fock_representation_for_q(1.1, 1)
    assert not err.value.diagnostic.unit_modulus
    with pytest.raises(UnitarityError):
        fock_representation_for_q(-1, 1)


def test_pbw_rank_report():
    report = pbw_rank_report(FockRepresentation(2, 2), max_degree=1)
    assert report.monomials == 3
    assert report.rank == 3
    full = pbw_rank_report(FockRepresentation(2, 2), max_degree=2)
    assert report.rank <= full.rank <= min(full.monomials, 16)


def test_weight_vector():
    rep = FockRepresentation(1, 4)
    np.testing.assert_allclose(rep.weight_vector(1), np.exp(1j * np.pi * np.arange(4) / 4))
