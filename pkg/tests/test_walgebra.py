import random

import pytest

from uqosp_fock.algebra_calculations.alg_enums import (
    IndexRangeError,
    RewriteStrategy,
    Sign,
    WordParseError,
)
from uqosp_fock.algebra_calculations.qcoeff import FOCK_CONSTANT, QCoeff, QFraction
from uqosp_fock.algebra_calculations.walgebra import (
    FockVector,
    Letter,
    LetterKind,
    WeylElement,
    WeylMonomial,
    a_minus,
    a_plus,
    apply_fock,
    apply_word,
    inner,
    kappa,
    mul,
    normal_order,
    parse_word,
    rewrite_measure,
    vacuum_expectation,
)

TOKENS = ["a{}+", "a{}-", "k{}", "k{}^-1"]


def random_word(rng: random.Random, n: int, length: int) -> str:
    return " ".join(
        rng.choice(TOKENS).format(rng.randint(1, n)) for _ in range(length)
    )


@pytest.mark.parametrize(
    "word, expected",
    [
        ("a1- a1+", "q a1+ a1- + (2/(s+s^-1)) k1^-1"),
        ("k1", "k1"),
        ("a2- a1+", "q a1+ a2-"),
        ("k1 k1^-1", "1"),
        ("a1+ a2+", "a1+ a2+"),
        ("a1+ a1-", "a1+ a1-"),
    ],
)
def test_normal_order_text(word, expected):
    assert str(normal_order(word)) == expected


def test_parse_word():
    word = parse_word("a1+^2 k2^-1 a2-")
    assert [str(letter) for letter in word] == ["a1+", "a1+", "k2^-1", "a2-"]
    assert parse_word("k1^0") == ()
    assert parse_word("") == ()


@pytest.mark.parametrize(
    "text, position, token",
    [("a1+ b2", 1, "b2"), ("a0+", 0, "a0+"), ("k1 a3-", 1, "a3-")],
)
def test_parse_word_errors(text, position, token):
    with pytest.raises(WordParseError) as err:
        parse_word(text, n=2)
    assert err.value.position == position
    assert err.value.token == token


def test_kappa_letters_commute_with_other_modes():
    assert str(normal_order("k2 a1+")) == "a1+ k2"
    assert normal_order("k1 a1+") == normal_order("a1+ k1").scale(QCoeff.q_power(1))


def test_lower_sign_oscillator_relation_holds_in_reduced_form():
    n = 1
    lhs = normal_order("a1- a1+") - normal_order("a1+ a1-").scale(QCoeff.q_power(-1))
    assert lhs == kappa(n, 1).scale(FOCK_CONSTANT)


def test_reduced_form_has_no_same_mode_pairs():
    x = normal_order("a1- a1+ a2- a1+ a2+")
    reduced = x.reduced()
    assert all(m.is_reduced() for m in reduced.terms)
    assert reduced == x


def test_strategies_agree_and_measure_decreases():
    rng = random.Random(7)
    for _ in range(200):
        word = random_word(rng, 3, rng.randint(0, 6))
        left = normal_order(word, 3, RewriteStrategy.LEFTMOST, check_measure=True)
        right = normal_order(word, 3, RewriteStrategy.RIGHTMOST, check_measure=True)
        assert left.terms == right.terms, word


@pytest.mark.slow
def test_confluence_sweep():
    rng = random.Random(2024)
    for _ in range(10_000):
        word = random_word(rng, 3, rng.randint(0, 8))
        left = normal_order(word, 3, RewriteStrategy.LEFTMOST)
        right = normal_order(word, 3, RewriteStrategy.RIGHTMOST)
        assert left.terms == right.terms, word


def test_rewrite_measure():
    assert rewrite_measure(parse_word("a1- a1+")) == (1, 2)
    assert rewrite_measure(parse_word("a1+ k1 a1-")) == (0, 3)


def test_multiplication_is_associative():
    rng = random.Random(11)
    for _ in range(30):
        x, y, z = (normal_order(random_word(rng, 2, 3), 2) for _ in range(3))
        assert mul(mul(x, y), z).terms == mul(x, mul(y, z)).terms


@pytest.mark.slow
def test_multiplication_is_associative_sweep():
    rng = random.Random(1000)
    for _ in range(1000):
        x, y, z = (normal_order(random_word(rng, 2, 3), 2) for _ in range(3))
        assert mul(mul(x, y), z).terms == mul(x, mul(y, z)).terms


def test_mul_rejects_mode_mismatch():
    with pytest.raises(IndexRangeError):
        mul(a_plus(1, 1), a_plus(2, 1))
    with pytest.raises(IndexRangeError):
        normal_order((Letter.a(3, Sign.PLUS),), n=2)


def test_conjugation_is_an_anti_automorphism():
    x = normal_order("a1- a1+")
    assert x.conjugate() == x
    y = a_plus(2, 1) * a_minus(2, 2)
    assert y.conjugate() == a_plus(2, 2) * a_minus(2, 1)
    monomial = WeylMonomial((1, 0), (2, -1), (0, 1))
    assert monomial.conjugate() == WeylMonomial((0, 1), (-2, 1), (1, 0))


def test_element_arithmetic():
    n = 2
    x = a_plus(n, 1) + a_minus(n, 2)
    assert (x - x).is_zero()
    assert x * 2 == x + x
    assert WeylElement.scalar(n, 0).is_zero()
    assert str(WeylElement.one(n)) == "1"
    assert str(-a_plus(n, 1)) == "-a1+"


def test_fock_inner_products():
    n = 1
    one = apply_fock(a_plus(n, 1), FockVector.vacuum(n))
    assert one.amplitude((1,)) == 1
    assert inner(one, one) == FOCK_CONSTANT
    assert vacuum_expectation(normal_order("a1- a1+")) == FOCK_CONSTANT
    assert vacuum_expectation(normal_order("a1+ a1-")) == 0


def test_fock_action_matches_normal_order():
    rng = random.Random(3)
    n = 2
    for _ in range(40):
        word = parse_word(random_word(rng, n, rng.randint(1, 5)), n)
        start = FockVector.basis(n, (rng.randint(0, 2), rng.randint(0, 2)))
        direct = apply_word(word, start)
        ordered = apply_fock(normal_order(word, n), start)
        keys = set(direct.amplitudes) | set(ordered.amplitudes)
        for m in keys:
            assert direct.amplitude(m) == ordered.amplitude(m)


def test_crossing_phase_on_fock_states():
    n = 2
    vacuum = FockVector.vacuum(n)
    a1_then_a2 = apply_word(parse_word("a2+ a1+"), vacuum)
    a2_then_a1 = apply_word(parse_word("a1+ a2+"), vacuum)
    assert a1_then_a2.amplitude((1, 1)) == QFraction(QCoeff.q_power(-1))
    assert a2_then_a1.amplitude((1, 1)) == 1


def test_root_of_unity_truncation():
    k = 3
    top = FockVector.basis(1, (k - 1,), k)
    assert apply_word((Letter(LetterKind.PLUS, 1),), top).is_zero()
    with pytest.raises(IndexRangeError):
        FockVector.basis(1, (k,), k)
    lowered = apply_word((Letter.a(1, Sign.MINUS),), top)
    assert abs(lowered.amplitude((k - 2,))) > 0


def random_vector(rng: random.Random, n: int, states: int = 3) -> FockVector:
    v = FockVector(n, {})
    for _ in range(states):
        m = tuple(rng.randint(0, 2) for _ in range(n))
        weight = QFraction(QCoeff.s_power(rng.randint(-2, 2), rng.randint(1, 3)))
        v = v + FockVector.basis(n, m).scale(weight)
    return v


def assert_same_vector(u: FockVector, v: FockVector):
    for m in set(u.amplitudes) | set(v.amplitudes):
        assert u.amplitude(m) == v.amplitude(m), m


def test_ladder_operators_are_adjoint():
    rng = random.Random(17)
    n = 2
    for _ in range(20):
        u, v = random_vector(rng, n), random_vector(rng, n)
        for i in range(1, n + 1):
            left = inner(apply_fock(a_plus(n, i), u), v)
            right = inner(u, apply_fock(a_minus(n, i), v))
            assert left == right


def test_conjugate_element_is_the_adjoint():
    rng = random.Random(23)
    n = 2
    for _ in range(15):
        x = normal_order(random_word(rng, n, rng.randint(1, 3)), n)
        u, v = random_vector(rng, n), random_vector(rng, n)
        assert inner(apply_fock(x, u), v) == inner(u, apply_fock(x.conjugate(), v))


def test_fock_space_is_a_module():
    rng = random.Random(29)
    n = 2
    for _ in range(25):
        x = normal_order(random_word(rng, n, rng.randint(1, 3)), n)
        y = normal_order(random_word(rng, n, rng.randint(1, 3)), n)
        v = random_vector(rng, n)
        assert_same_vector(apply_fock(mul(x, y), v), apply_fock(x, apply_fock(y, v)))
