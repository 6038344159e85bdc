import cmath
import logging
import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from uqosp_fock.algebra_calculations.alg_enums import (
    IndexRangeError,
    OspqError,
    RewriteStrategy,
    Sign,
    WordParseError,
)
from uqosp_fock.algebra_calculations.qcoeff import (
    FOCK_CONSTANT,
    INV_Q_DIFF,
    QCoeff,
    QFraction,
    Scalar,
    eval_root,
    fock_norm_factor,
    q_int,
)

logger = logging.getLogger(__name__)

ONE_F = QFraction.coerce(1)
ZERO_F = QFraction()


def q_power(exponent: int) -> QFraction:
    return QFraction(QCoeff.q_power(exponent))


class LetterKind(Enum):
    PLUS = "+"
    KAPPA = "k"
    MINUS = "-"


@dataclass(frozen=True)
class Letter:
    """One generator of W_q(n): a_i^+, a_i^- or kappa_i^power."""

    kind: LetterKind
    mode: int
    power: int = 1

    @classmethod
    def a(cls, mode: int, sign: Sign) -> "Letter":
        return cls(LetterKind.PLUS if sign is Sign.PLUS else LetterKind.MINUS, mode)

    @classmethod
    def kappa(cls, mode: int, power: int = 1) -> "Letter":
        return cls(LetterKind.KAPPA, mode, power)

    @property
    def sign(self) -> int:
        """+1 for a^+, -1 for a^-; zero for kappa."""
        match self.kind:
            case LetterKind.PLUS:
                return 1
            case LetterKind.MINUS:
                return -1
        return 0

    @property
    def key(self) -> tuple[int, int]:
        match self.kind:
            case LetterKind.PLUS:
                return (0, self.mode)
            case LetterKind.KAPPA:
                return (1, self.mode)
        return (2, -self.mode)

    def __str__(self) -> str:
        if self.kind is LetterKind.KAPPA:
            return f"k{self.mode}" if self.power == 1 else f"k{self.mode}^{self.power}"
        return f"a{self.mode}{self.kind.value}"


Word = tuple[Letter, ...]

_A_TOKEN = re.compile(r"^a(\d+)([+-])(?:\^(\d+))?$")
_K_TOKEN = re.compile(r"^k(\d+)(?:\^(-?\d+))?$")


def parse_word(text: str, n: int | None = None) -> Word:
    """
    Parse a whitespace separated word such as ``"a1- k2^-1 a2+"``.

    Tokens are ``a<i>+``, ``a<i>-``, ``k<i>`` and ``k<i>^<e>``; ``a`` tokens
    may carry a positive power ``^p``.
    """

    letters: list[Letter] = []
    for position, token in enumerate(text.split()):
        if match := _A_TOKEN.match(token):
            mode, sign = int(match.group(1)), Sign(match.group(2))
            power = int(match.group(3) or 1)
            if power < 1:
                raise WordParseError("power of a creation/annihilation letter must be >= 1", position, token)
            letters.extend([Letter.a(mode, sign)] * power)
        elif match := _K_TOKEN.match(token):
            mode = int(match.group(1))
            power = int(match.group(2) or 1)
            if power:
                letters.append(Letter.kappa(mode, power))
        else:
            raise WordParseError("unknown letter", position, token)
        if mode < 1 or (n is not None and mode > n):
            raise WordParseError(f"mode index outside 1..{n}", position, token)
    return tuple(letters)


def word_modes(word: Iterable[Letter]) -> int:
    return max((letter.mode for letter in word), default=1)


def _crossing_table() -> dict[tuple[int, int, bool], int]:
    """q-exponent for a_u^xi a_v^eta = q^e a_v^eta a_u^xi, keyed by (xi, eta, u < v)."""
    table = {}
    for xi in (1, -1):
        for eta in (1, -1):
            table[(xi, eta, True)] = xi * eta
            # inverse orientation of the same relation
            table[(xi, eta, False)] = -xi * eta
    return table


CROSSING = _crossing_table()


def swap_exponent(x: Letter, y: Letter) -> int:
    """q-exponent e with x y = q^e y x, for letters that do not form a same-mode a^- a^+ pair."""
    if x.kind is LetterKind.KAPPA and y.kind is LetterKind.KAPPA:
        return 0
    if x.kind is LetterKind.KAPPA:
        return y.sign * x.power if x.mode == y.mode else 0
    if y.kind is LetterKind.KAPPA:
        return -x.sign * y.power if x.mode == y.mode else 0
    if x.mode == y.mode:
        raise OspqError(f"no swap rule for {x} {y}")
    return CROSSING[(x.sign, y.sign, x.mode < y.mode)]


def _is_redex(x: Letter, y: Letter) -> bool:
    if x.kind is LetterKind.KAPPA and y.kind is LetterKind.KAPPA and x.mode == y.mode:
        return True
    return x.key > y.key


def _rewrite_pair(x: Letter, y: Letter) -> list[tuple[QFraction, Word]]:
    if x.kind is LetterKind.KAPPA and y.kind is LetterKind.KAPPA and x.mode == y.mode:
        power = x.power + y.power
        return [(ONE_F, (Letter.kappa(x.mode, power),) if power else ())]
    if x.kind is LetterKind.MINUS and y.kind is LetterKind.PLUS and x.mode == y.mode:
        # a^- a^+ = q a^+ a^- + (2/(s+1/s)) kappa^-1
        return [
            (q_power(1), (y, x)),
            (FOCK_CONSTANT, (Letter.kappa(x.mode, -1),)),
        ]
    return [(q_power(swap_exponent(x, y)), (y, x))]


def _find_redex(word: Word, strategy: RewriteStrategy) -> int | None:
    positions = range(len(word) - 1)
    if strategy is RewriteStrategy.RIGHTMOST:
        positions = reversed(positions)
    for pos in positions:
        if _is_redex(word[pos], word[pos + 1]):
            return pos
    return None


def rewrite_measure(word: Word) -> tuple[int, int]:
    """(inversions against the normal order, length); decreases with every rule."""
    inversions = sum(
        1
        for p in range(len(word))
        for r in range(p + 1, len(word))
        if word[p].key > word[r].key
    )
    return inversions, len(word)


@dataclass(frozen=True, order=True)
class WeylMonomial:
    """
    (a_1^+)^p_1 ... (a_n^+)^p_n kappa_1^z_1 ... kappa_n^z_n (a_n^-)^d_n ... (a_1^-)^d_1.

    ``minus[i-1]`` is the exponent of a_i^-, the printed order is decreasing in i.
    """

    plus: tuple[int, ...]
    kappa: tuple[int, ...]
    minus: tuple[int, ...]

    @classmethod
    def identity(cls, n: int) -> "WeylMonomial":
        return cls((0,) * n, (0,) * n, (0,) * n)

    @classmethod
    def from_word(cls, word: Word, n: int) -> "WeylMonomial":
        plus, kappa, minus = [0] * n, [0] * n, [0] * n
        for letter in word:
            match letter.kind:
                case LetterKind.PLUS:
                    plus[letter.mode - 1] += 1
                case LetterKind.KAPPA:
                    kappa[letter.mode - 1] += letter.power
                case LetterKind.MINUS:
                    minus[letter.mode - 1] += 1
        return cls(tuple(plus), tuple(kappa), tuple(minus))

    @property
    def n(self) -> int:
        return len(self.plus)

    @property
    def degree(self) -> int:
        return sum(self.plus) + sum(self.minus)

    def word(self) -> Word:
        letters: list[Letter] = []
        for i, p in enumerate(self.plus, start=1):
            letters.extend([Letter.a(i, Sign.PLUS)] * p)
        for i, z in enumerate(self.kappa, start=1):
            if z:
                letters.append(Letter.kappa(i, z))
        for i in range(self.n, 0, -1):
            letters.extend([Letter.a(i, Sign.MINUS)] * self.minus[i - 1])
        return tuple(letters)

    def is_reduced(self) -> bool:
        return all(p == 0 or d == 0 for p, d in zip(self.plus, self.minus))

    def conjugate(self) -> "WeylMonomial":
        # (a_i^+)^dagger = a_i^-, kappa^dagger = kappa^-1, order reversed
        return WeylMonomial(self.minus, tuple(-z for z in self.kappa), self.plus)

    def print_key(self) -> tuple:
        return (-self.degree, tuple(-p for p in self.plus), tuple(-d for d in self.minus), self.kappa)

    def __str__(self) -> str:
        parts = []
        for i, p in enumerate(self.plus, start=1):
            if p:
                parts.append(f"a{i}+" + (f"^{p}" if p > 1 else ""))
        for i, z in enumerate(self.kappa, start=1):
            if z:
                parts.append(f"k{i}" + (f"^{z}" if z != 1 else ""))
        for i in range(self.n, 0, -1):
            d = self.minus[i - 1]
            if d:
                parts.append(f"a{i}-" + (f"^{d}" if d > 1 else ""))
        return " ".join(parts) if parts else "1"


def _accumulate(
    target: dict[WeylMonomial, QFraction], monomial: WeylMonomial, coeff: QFraction
) -> None:
    value = target.get(monomial, ZERO_F) + coeff
    if value.is_zero():
        target.pop(monomial, None)
    else:
        target[monomial] = value


def _normal_order_terms(
    start: Mapping[Word, QFraction],
    n: int,
    strategy: RewriteStrategy,
    check_measure: bool,
) -> dict[WeylMonomial, QFraction]:
    pending: dict[Word, QFraction] = dict(start)
    result: dict[WeylMonomial, QFraction] = {}
    steps = 0
    while pending:
        word, coeff = pending.popitem()
        if coeff.is_zero():
            continue
        pos = _find_redex(word, strategy)
        if pos is None:
            _accumulate(result, WeylMonomial.from_word(word, n), coeff)
            continue
        steps += 1
        before = rewrite_measure(word) if check_measure else None
        for factor, replacement in _rewrite_pair(word[pos], word[pos + 1]):
            new_word = word[:pos] + replacement + word[pos + 2 :]
            if before is not None and not rewrite_measure(new_word) < before:
                raise OspqError(f"rewriting measure did not decrease at {word[pos]} {word[pos + 1]}")
            pending[new_word] = pending.get(new_word, ZERO_F) + coeff * factor
    logger.debug("normal ordering finished after %d rewrite steps", steps)
    return result


@dataclass(frozen=True, eq=False)
class WeylElement:
    """Finite linear combination of normal-form monomials of W_q(n)."""

    n: int
    terms: Mapping[WeylMonomial, QFraction]

    @classmethod
    def zero(cls, n: int) -> "WeylElement":
        return cls(n, {})

    @classmethod
    def scalar(cls, n: int, value: Scalar) -> "WeylElement":
        value = QFraction.coerce(value)
        if value.is_zero():
            return cls.zero(n)
        return cls(n, {WeylMonomial.identity(n): value})

    @classmethod
    def one(cls, n: int) -> "WeylElement":
        return cls.scalar(n, 1)

    @classmethod
    def from_monomial(cls, monomial: WeylMonomial, coeff: Scalar = 1) -> "WeylElement":
        return cls(monomial.n, {monomial: QFraction.coerce(coeff)})

    @classmethod
    def letter(cls, n: int, letter: Letter) -> "WeylElement":
        if not 1 <= letter.mode <= n:
            raise IndexRangeError(f"mode index {letter.mode} outside 1..{n}")
        return cls.from_monomial(WeylMonomial.from_word((letter,), n))

    def __iter__(self) -> Iterator[tuple[WeylMonomial, QFraction]]:
        return iter(sorted(self.terms.items(), key=lambda item: item[0].print_key()))

    def __len__(self) -> int:
        return len(self.terms)

    def _check_modes(self, other: "WeylElement") -> None:
        if self.n != other.n:
            raise IndexRangeError(f"mode count mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "WeylElement") -> "WeylElement":
        self._check_modes(other)
        terms = dict(self.terms)
        for monomial, coeff in other.terms.items():
            _accumulate(terms, monomial, coeff)
        return WeylElement(self.n, terms)

    def __neg__(self) -> "WeylElement":
        return WeylElement(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "WeylElement") -> "WeylElement":
        return self + (-other)

    def scale(self, value: Scalar) -> "WeylElement":
        value = QFraction.coerce(value)
        if value.is_zero():
            return WeylElement.zero(self.n)
        return WeylElement(self.n, {m: c * value for m, c in self.terms.items()})

    def __mul__(self, other: "WeylElement | Scalar") -> "WeylElement":
        if isinstance(other, WeylElement):
            return mul(self, other)
        return self.scale(other)

    def __rmul__(self, other: Scalar) -> "WeylElement":
        return self.scale(other)

    def reduced(self) -> "WeylElement":
        """
        Canonical form over the monomials with p_i * d_i = 0 for every mode.

        Uses a_i^+ a_i^- = (2/(s+1/s)) (kappa_i - kappa_i^-1)/(q - 1/q), the
        consequence of both sign choices of the oscillator relation.
        """

        terms: dict[WeylMonomial, QFraction] = {}
        for monomial, coeff in self.terms.items():
            for base, factor in _reduce_monomial(monomial):
                _accumulate(terms, base, coeff * factor)
        return WeylElement(self.n, terms)

    def is_zero(self) -> bool:
        return not self.reduced().terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.n == other.n and (self - other).is_zero()

    __hash__ = None  # type: ignore

    def conjugate(self) -> "WeylElement":
        """Anti-linear anti-automorphism a^+ <-> a^-, kappa -> kappa^-1, s -> 1/s."""
        return WeylElement(
            self.n, {m.conjugate(): c.conjugate() for m, c in self.terms.items()}
        )

    def at_root(self, k: int) -> list[tuple[WeylMonomial, complex]]:
        return [(m, eval_root(c, k)) for m, c in self]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for monomial, coeff in self:
            coeff_str = _coefficient_str(coeff)
            if monomial == WeylMonomial.identity(self.n):
                parts.append(coeff_str)
            elif coeff_str == "1":
                parts.append(str(monomial))
            elif coeff_str == "-1":
                parts.append(f"-{monomial}")
            else:
                parts.append(f"{coeff_str} {monomial}")
        return " + ".join(parts).replace("+ -", "- ")


def _coefficient_str(coeff: QFraction) -> str:
    text = str(coeff)
    if not (coeff.plus_exp or coeff.diff_exp) and coeff.num.needs_parentheses():
        return f"({text})"
    return text


@lru_cache(maxsize=None)
def _reduce_monomial(monomial: WeylMonomial) -> tuple[tuple[WeylMonomial, QFraction], ...]:
    mode = next(
        (i for i, (p, d) in enumerate(zip(monomial.plus, monomial.minus)) if p and d),
        None,
    )
    if mode is None:
        return ((monomial, ONE_F),)
    plus, kappa, minus = list(monomial.plus), list(monomial.kappa), list(monomial.minus)
    # move one a_i^+ right past higher plus letters and kappa, one a_i^- left past higher minus letters
    exponent = sum(plus[mode + 1 :]) - kappa[mode] - sum(minus[mode + 1 :])
    plus[mode] -= 1
    minus[mode] -= 1
    up, down = list(kappa), list(kappa)
    up[mode] += 1
    down[mode] -= 1
    factor = q_power(exponent) * FOCK_CONSTANT * INV_Q_DIFF
    out: dict[WeylMonomial, QFraction] = {}
    for shifted, sign in ((up, 1), (down, -1)):
        child = WeylMonomial(tuple(plus), tuple(shifted), tuple(minus))
        for base, inner in _reduce_monomial(child):
            _accumulate(out, base, factor * inner * sign)
    return tuple(out.items())


def normal_order(
    word: Word | str,
    n: int | None = None,
    strategy: RewriteStrategy = RewriteStrategy.LEFTMOST,
    check_measure: bool = False,
) -> WeylElement:
    """
    Normal form of a word by exhaustive rewriting with the oscillator relations.

    Parameters
    ----------
    word : Word | str
        letters, or their text form
    n : int | None
        number of modes; defaults to the largest mode in the word
    strategy : RewriteStrategy
        which redex is rewritten first
    check_measure : bool
        raise if a rewrite does not decrease (inversions, length)

    Returns
    -------
    WeylElement
        the normally ordered element
    """

    if isinstance(word, str):
        word = parse_word(word, n)
    n = n if n is not None else word_modes(word)
    for letter in word:
        if not 1 <= letter.mode <= n:
            raise IndexRangeError(f"mode index {letter.mode} outside 1..{n}")
    terms = _normal_order_terms({tuple(word): ONE_F}, n, strategy, check_measure)
    return WeylElement(n, terms)


@lru_cache(maxsize=None)
def _monomial_product(
    left: WeylMonomial, right: WeylMonomial
) -> tuple[tuple[WeylMonomial, QFraction], ...]:
    terms = _normal_order_terms(
        {left.word() + right.word(): ONE_F}, left.n, RewriteStrategy.LEFTMOST, False
    )
    return tuple(terms.items())


def mul(a: WeylElement, b: WeylElement) -> WeylElement:
    a._check_modes(b)
    terms: dict[WeylMonomial, QFraction] = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            coeff = c1 * c2
            for monomial, factor in _monomial_product(m1, m2):
                _accumulate(terms, monomial, coeff * factor)
    return WeylElement(a.n, terms)


def a_plus(n: int, i: int) -> WeylElement:
    return WeylElement.letter(n, Letter.a(i, Sign.PLUS))


def a_minus(n: int, i: int) -> WeylElement:
    return WeylElement.letter(n, Letter.a(i, Sign.MINUS))


def kappa(n: int, i: int, power: int = 1) -> WeylElement:
    if power == 0:
        return WeylElement.one(n)
    return WeylElement.letter(n, Letter.kappa(i, power))


Occupation = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class FockVector:
    """
    Sparse vector over the unnormalized states (a_1^+)^m_1 ... (a_n^+)^m_n |0>.

    With ``k`` set the amplitudes are complex numbers at q = exp(i pi/k) and every
    occupation stays below k; otherwise they are exact QFractions.
    """

    n: int
    amplitudes: Mapping[Occupation, QFraction | complex]
    k: int | None = None

    @classmethod
    def vacuum(cls, n: int, k: int | None = None) -> "FockVector":
        return cls.basis(n, (0,) * n, k)

    @classmethod
    def basis(cls, n: int, m: Occupation, k: int | None = None) -> "FockVector":
        if len(m) != n or any(x < 0 for x in m):
            raise IndexRangeError(f"invalid occupation {m} for n={n}")
        if k is not None and any(x >= k for x in m):
            raise IndexRangeError(f"occupation {m} outside 0..{k - 1}")
        return cls(n, {tuple(m): (1 + 0j) if k is not None else ONE_F}, k)

    @property
    def symbolic(self) -> bool:
        return self.k is None

    def amplitude(self, m: Occupation) -> QFraction | complex:
        return self.amplitudes.get(tuple(m), ZERO_F if self.symbolic else 0j)

    def __add__(self, other: "FockVector") -> "FockVector":
        if (self.n, self.k) != (other.n, other.k):
            raise IndexRangeError("Fock vectors live in different spaces")
        amplitudes = dict(self.amplitudes)
        for m, value in other.amplitudes.items():
            amplitudes[m] = amplitudes.get(m, 0) + value
        return FockVector(self.n, _prune(amplitudes), self.k)

    def scale(self, value: QFraction | complex) -> "FockVector":
        return FockVector(
            self.n, _prune({m: a * value for m, a in self.amplitudes.items()}), self.k
        )

    def is_zero(self) -> bool:
        return not self.amplitudes


def _prune(amplitudes: dict[Occupation, QFraction | complex]) -> dict[Occupation, QFraction | complex]:
    out = {}
    for m, value in amplitudes.items():
        if isinstance(value, QFraction):
            if not value.is_zero():
                out[m] = value
        elif value != 0:
            out[m] = value
    return out


def _letter_action(
    letter: Letter, m: Occupation, k: int | None
) -> tuple[QFraction | complex, Occupation] | None:
    i = letter.mode - 1
    below = sum(m[:i])
    match letter.kind:
        case LetterKind.PLUS:
            if k is not None and m[i] == k - 1:
                return None
            target = m[:i] + (m[i] + 1,) + m[i + 1 :]
            return _q_factor(-below, k), target
        case LetterKind.MINUS:
            if m[i] == 0:
                return None
            target = m[:i] + (m[i] - 1,) + m[i + 1 :]
            return _q_factor(below, k) * _fock_constant_q_int(m[i], k), target
    return _q_factor(letter.power * m[i], k), m


def _q_factor(exponent: int, k: int | None) -> QFraction | complex:
    if k is None:
        return q_power(exponent)
    return cmath.exp(1j * cmath.pi * exponent / k)


def _fock_constant_q_int(x: int, k: int | None) -> QFraction | complex:
    value = FOCK_CONSTANT * q_int(x)
    return value if k is None else eval_root(value, k)


def apply_word(word: Word, v: FockVector) -> FockVector:
    amplitudes = dict(v.amplitudes)
    for letter in reversed(word):
        if not 1 <= letter.mode <= v.n:
            raise IndexRangeError(f"mode index {letter.mode} outside 1..{v.n}")
        moved: dict[Occupation, QFraction | complex] = {}
        for m, value in amplitudes.items():
            action = _letter_action(letter, m, v.k)
            if action is None:
                continue
            factor, target = action
            moved[target] = moved.get(target, 0) + value * factor
        amplitudes = _prune(moved)
    return FockVector(v.n, amplitudes, v.k)


def apply_fock(x: WeylElement, v: FockVector) -> FockVector:
    """Action of a W_q(n) element on the Fock space, exact or at the root of unity."""
    if x.n != v.n:
        raise IndexRangeError(f"mode count mismatch: {x.n} vs {v.n}")
    result = FockVector(v.n, {}, v.k)
    for monomial, coeff in x.terms.items():
        value = coeff if v.symbolic else eval_root(coeff, v.k)
        result = result + apply_word(monomial.word(), v).scale(value)
    return result


def fock_norm(m: Occupation) -> QFraction:
    norm = ONE_F
    for x in m:
        norm = norm * fock_norm_factor(x)
    return norm


def inner(u: FockVector, v: FockVector) -> QFraction:
    """
    Sesquilinear form with <0|0> = 1 and (a_i^+)^dagger = a_i^-, conjugating s -> 1/s.

    Distinct occupations are orthogonal; the unnormalized state m has squared
    norm prod_i (2/(s+1/s))^m_i [m_i]!.
    """

    if not (u.symbolic and v.symbolic):
        raise OspqError("inner products are computed in symbolic mode only")
    total = ZERO_F
    for m, value in v.amplitudes.items():
        other = u.amplitudes.get(m)
        if other is not None:
            total = total + other.conjugate() * value * fock_norm(m)
    return total


def vacuum_expectation(x: WeylElement) -> QFraction:
    """<0| x |0> computed from the Fock action."""
    return apply_fock(x, FockVector.vacuum(x.n)).amplitude((0,) * x.n)
