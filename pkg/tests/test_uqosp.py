import gc
import json
import weakref
from collections import Counter
from fractions import Fraction

import pytest

from uqosp_fock.algebra_calculations.alg_enums import IndexRangeError, RelationFamily, Sign
from uqosp_fock.algebra_calculations.gen_expr import A, L, anti, e, k
from uqosp_fock.algebra_calculations.qcoeff import QCoeff, Surd
from uqosp_fock.algebra_calculations.uqosp import (
    build_cartan_L,
    build_gl_generator,
    build_preoscillator,
    cartan_weyl_basis,
    catalog,
    classical_limit_check,
    get_realization,
    gl_order_key,
    oscillator_cartan_weyl,
    realize,
    tau,
    theta,
    verify_catalog,
)
from uqosp_fock.algebra_calculations.walgebra import Letter, WeylElement, a_minus, kappa


def failing(results):
    return [r.id for r in results if not r.passed]


def test_index_functions():
    assert tau(1, 2, 3) == 1
    assert tau(3, 1) == -1
    assert tau(1, 3, 2) == 0
    assert theta(3, 2, 1) == 1
    assert theta(1, 2) == 0
    assert gl_order_key(1, 2) < gl_order_key(2, 1)


def test_catalog_sizes_for_one_mode():
    counts = Counter(inst.family for inst in catalog(1))
    assert counts[RelationFamily.CK] == 4
    assert counts[RelationFamily.SERRE] == 0
    assert counts[RelationFamily.PRE] == 5
    assert counts[RelationFamily.T] == 6
    assert counts[RelationFamily.G] == 2


def test_catalog_ids_are_unique():
    ids = [inst.id for inst in catalog(3)]
    assert len(ids) == len(set(ids))


def test_catalog_family_filter():
    instances = catalog(2, [RelationFamily.SERRE])
    assert instances
    assert {inst.tag for inst in instances} == {"SERRE_E", "SERRE_F"}
    assert catalog(1, [RelationFamily.SERRE]) == []


def test_catalog_sampling_is_seeded():
    first = catalog(4, [RelationFamily.T], seed=5, sample_size=10)
    second = catalog(4, [RelationFamily.T], seed=5, sample_size=10)
    assert [i.id for i in first] == [i.id for i in second]
    assert max(Counter(i.tag for i in first).values()) <= 10


def test_catalog_rejects_out_of_range_n():
    with pytest.raises(IndexRangeError):
        catalog(6)
    with pytest.raises(IndexRangeError):
        catalog(0)


def test_instance_json_line():
    inst = catalog(2, [RelationFamily.T])[0]
    record = json.loads(inst.to_json_line())
    assert record["id"] == inst.id
    assert record["family"] == "T"
    assert record["signs"] in (["+"], ["-"])


def test_realize_generators():
    n = 2
    assert realize(A(1, Sign.MINUS), n) == a_minus(n, 1)
    expected_e = a_minus(n, n).scale(QCoeff.const(Surd(Fraction(0), Fraction(-1, 2))))
    assert realize(e(n), n) == expected_e
    assert realize(L(1), n) == kappa(n, 1, -1).scale(QCoeff.s_power(-1))
    assert realize(k(1) * k(1, -1), n) == WeylElement.one(n)


def test_preoscillator_realizes_oscillators():
    # the nested brackets of Chevalley generators give back the a_i^+-
    n = 3
    for i in range(1, n + 1):
        for sign in Sign:
            image = realize(build_preoscillator(n, i, sign), n)
            assert image == WeylElement.letter(n, Letter.a(i, sign))


def test_gl_generator_rejects_diagonal():
    with pytest.raises(IndexRangeError):
        build_gl_generator(2, 1, 1)
    assert realize(build_gl_generator(2, 1, 2), 2).terms


@pytest.mark.parametrize("n", [1, 2])
def test_all_relations_hold(n):
    results = verify_catalog(catalog(n))
    assert results
    assert failing(results) == []
    assert {r.residual for r in results} == {"exact-zero"}


@pytest.mark.slow
def test_all_relations_hold_three_modes():
    assert failing(verify_catalog(catalog(3), threads=4)) == []


def test_corrupted_realization_is_reported():
    results = verify_catalog(catalog(2, [RelationFamily.PRE]), corrupted=True)
    failures = failing(results)
    assert failures
    assert all(r.detail.startswith("residual") for r in results if not r.passed)


def test_threaded_verification_keeps_order():
    instances = catalog(2, [RelationFamily.CK, RelationFamily.G])
    serial = verify_catalog(instances)
    threaded = verify_catalog(instances, threads=3)
    assert [r.id for r in serial] == [r.id for r in threaded] == [i.id for i in instances]


@pytest.mark.parametrize("n", [1, 2])
def test_classical_limit(n):
    results = classical_limit_check(n)
    assert results
    assert failing(results) == []


def test_cartan_weyl_basis():
    n = 2
    basis = cartan_weyl_basis(n)
    assert len(basis) == 2 * n * n + 4 * n
    images = dict(oscillator_cartan_weyl(n))
    assert images["A1+"] == WeylElement.letter(n, Letter.a(1, Sign.PLUS))
    assert not images["{A1-,A2+}"].is_zero()


def test_cartan_l_is_a_product_of_k():
    n = 3
    for i in range(1, n + 1):
        assert realize(build_cartan_L(n, i), n) == realize(L(i), n)


def test_repeated_verification_does_not_grow_state():
    realization = get_realization(2)
    families = [RelationFamily.CK, RelationFamily.PRE]
    verify_catalog(catalog(2, families))
    leaves = len(realization._leaves)
    for _ in range(3):
        verify_catalog(catalog(2, families))
    assert len(realization._leaves) == leaves
    assert vars(realization.evaluate) == {"backend": realization}


def test_realized_expression_is_released():
    expr = anti(A(1, Sign.MINUS), A(2, Sign.PLUS)) * L(2, -1)
    ref = weakref.ref(expr)
    assert not realize(expr, 2).is_zero()
    del expr
    gc.collect()
    assert ref() is None
