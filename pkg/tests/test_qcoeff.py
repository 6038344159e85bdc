import cmath
import math
from fractions import Fraction

import pytest

from uqosp_fock.algebra_calculations.alg_enums import GuardError, IndexRangeError
from uqosp_fock.algebra_calculations.qcoeff import (
    FOCK_CONSTANT,
    INV_Q_DIFF,
    Q,
    Q_MINUS_Q_INV,
    S_PLUS_S_INV,
    SQRT2,
    QCoeff,
    QFraction,
    Surd,
    eval_root,
    fock_norm_factor,
    q_factorial,
    q_int,
    q_int_signed,
    root_s,
)


def test_surd_arithmetic():
    root = Surd(Fraction(0), Fraction(1))
    assert root * root == 2
    x = Surd(Fraction(1), Fraction(1))
    assert x * x.inverse() == 1
    assert float(x) == pytest.approx(1 + math.sqrt(2))
    assert str(Surd(Fraction(1, 2), Fraction(-1))) == "(1/2-√2)"


def test_qcoeff_ring_operations():
    a = QCoeff.s_power(1) + QCoeff.s_power(-1)
    assert a == S_PLUS_S_INV
    assert a * a == QCoeff.from_dict({2: Surd(Fraction(1)), 0: Surd(Fraction(2)), -2: Surd(Fraction(1))})
    assert (Q - Q).is_zero()
    assert Q * Q.unit_inverse() == 1
    assert Q**-2 == QCoeff.q_power(-2)
    assert SQRT2 * SQRT2 == 2


def test_divide_exact():
    product = Q_MINUS_Q_INV * S_PLUS_S_INV
    assert product.divide_exact(S_PLUS_S_INV) == Q_MINUS_Q_INV
    assert QCoeff.const(1).divide_exact(S_PLUS_S_INV) is None
    with pytest.raises(ZeroDivisionError):
        Q.divide_exact(QCoeff())


def test_qcoeff_str_uses_q_for_even_exponents():
    assert str(Q) == "q"
    assert str(QCoeff.s_power(-1)) == "s^-1"
    assert str(Q - QCoeff.q_power(-1)) == "q - q^-1"
    assert str(QCoeff()) == "0"


def test_qcoeff_json():
    value = QCoeff.from_dict({3: Surd(Fraction(1, 2), Fraction(-2)), -1: Surd(Fraction(5))})
    assert QCoeff.from_json(value.to_json()) == value
    assert value.to_json()["terms"][0] == {"s_exp": -1, "r": "5", "w": "0"}


def test_q_integers():
    assert q_int(0).is_zero()
    assert q_int(1) == 1
    assert q_int(2) == Q + QCoeff.q_power(-1)
    assert q_int(3) * Q_MINUS_Q_INV == QCoeff.q_power(3) - QCoeff.q_power(-3)
    assert q_int_signed(-2) == -q_int(2)
    assert q_factorial(3) == q_int(1) * q_int(2) * q_int(3)
    with pytest.raises(IndexRangeError):
        q_int(-1)


def test_qfraction_simplifies_known_factors():
    value = QFraction.make(Q_MINUS_Q_INV * QCoeff.const(3), diff_exp=1)
    assert value.diff_exp == 0
    assert value == 3
    # (q - 1/q) / (s + 1/s) = s - 1/s
    ratio = QFraction.make(Q_MINUS_Q_INV, plus_exp=1)
    assert ratio == QCoeff.s_power(1) - QCoeff.s_power(-1)


def test_qfraction_equality_by_cross_multiplication():
    left = FOCK_CONSTANT * (Q - QCoeff.q_power(-1)) * INV_Q_DIFF
    assert left == FOCK_CONSTANT
    assert FOCK_CONSTANT + FOCK_CONSTANT == QFraction(QCoeff.const(4), plus_exp=1)
    assert FOCK_CONSTANT != 1


def test_qfraction_at_one_and_conjugate():
    assert FOCK_CONSTANT.at_one() == 1
    assert INV_Q_DIFF.at_one() is None
    assert INV_Q_DIFF.conjugate() == -INV_Q_DIFF
    assert QFraction(Q).conjugate() == QFraction(QCoeff.q_power(-1))
    assert str(FOCK_CONSTANT) == "(2/(s+s^-1))"


def test_fock_norm_factor_recurrence():
    for m in range(6):
        assert fock_norm_factor(m + 1) == fock_norm_factor(m) * FOCK_CONSTANT * q_int(m + 1)


def test_evaluation_at_root_of_unity():
    k = 3
    s = root_s(k)
    assert s * s == pytest.approx(cmath.exp(1j * math.pi / k))
    # [m]_q = sin(m pi/k) / sin(pi/k)
    for m in range(1, 6):
        assert eval_root(q_int(m), k) == pytest.approx(math.sin(m * math.pi / k) / math.sin(math.pi / k))
    assert eval_root(FOCK_CONSTANT, k) == pytest.approx(1 / math.cos(math.pi / (2 * k)))
    assert eval_root(fock_norm_factor(k), k) == pytest.approx(0)
    assert eval_root(Fraction(1, 2), k) == pytest.approx(0.5)


def test_fractions_refuse_the_pole_at_q_minus_one():
    for m in (1, 2):
        with pytest.raises(GuardError):
            eval_root(fock_norm_factor(m), 1)
    with pytest.raises(GuardError):
        eval_root(FOCK_CONSTANT, 1)
    assert eval_root(fock_norm_factor(0), 1) == pytest.approx(1)
    assert eval_root(q_int(2), 1) == pytest.approx(-2)
