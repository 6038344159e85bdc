import cmath
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from uqosp_fock.algebra_calculations.alg_enums import GuardError, IndexRangeError

logger = logging.getLogger(__name__)

SQRT2_FLOAT = math.sqrt(2.0)

ComplexValue = complex
Rational = Union[int, Fraction]


def _fraction_str(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Surd:
    """Exact element r + w*sqrt(2) of Q(sqrt 2)."""

    r: Fraction = Fraction(0)
    w: Fraction = Fraction(0)

    @classmethod
    def coerce(cls, value: "Surd | Rational") -> "Surd":
        if isinstance(value, Surd):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(Fraction(value), Fraction(0))
        raise TypeError(f"cannot interpret {value!r} as an element of Q(sqrt2)")

    def __bool__(self) -> bool:
        return bool(self.r) or bool(self.w)

    def __add__(self, other: "Surd | Rational") -> "Surd":
        other = Surd.coerce(other)
        return Surd(self.r + other.r, self.w + other.w)

    __radd__ = __add__

    def __neg__(self) -> "Surd":
        return Surd(-self.r, -self.w)

    def __sub__(self, other: "Surd | Rational") -> "Surd":
        return self + (-Surd.coerce(other))

    def __rsub__(self, other: "Surd | Rational") -> "Surd":
        return Surd.coerce(other) - self

    def __mul__(self, other: "Surd | Rational") -> "Surd":
        other = Surd.coerce(other)
        # sqrt2 * sqrt2 = 2
        return Surd(
            self.r * other.r + 2 * self.w * other.w,
            self.r * other.w + self.w * other.r,
        )

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.r * self.r - 2 * self.w * self.w

    def inverse(self) -> "Surd":
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(sqrt2)")
        n = self.norm()
        return Surd(self.r / n, -self.w / n)

    def __truediv__(self, other: "Surd | Rational") -> "Surd":
        return self * Surd.coerce(other).inverse()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Surd.coerce(other)
        if not isinstance(other, Surd):
            return NotImplemented
        return self.r == other.r and self.w == other.w

    def __hash__(self) -> int:
        if not self.w:
            return hash(self.r)
        return hash((self.r, self.w))

    def __float__(self) -> float:
        return float(self.r) + float(self.w) * SQRT2_FLOAT

    def __str__(self) -> str:
        if not self.w:
            return _fraction_str(self.r)
        if self.w == 1:
            w_part = "√2"
        elif self.w == -1:
            w_part = "-√2"
        else:
            w_part = f"{_fraction_str(self.w)}√2"
        if not self.r:
            return w_part
        return f"({_fraction_str(self.r)}+{w_part})".replace("+-", "-")


SurdLike = Union[Surd, int, Fraction]


@dataclass(frozen=True)
class QCoeff:
    """
    Laurent polynomial in s = q^(1/2) with coefficients in Q(sqrt2).

    ``terms`` is sorted by exponent and never holds a zero coefficient, so the
    dataclass equality is equality in the ring.
    """

    terms: tuple[tuple[int, Surd], ...] = ()

    @classmethod
    def from_dict(cls, terms: dict[int, Surd]) -> "QCoeff":
        return cls(tuple(sorted((e, c) for e, c in terms.items() if c)))

    @classmethod
    def const(cls, value: SurdLike) -> "QCoeff":
        return cls.s_power(0, value)

    @classmethod
    def s_power(cls, exponent: int, value: SurdLike = 1) -> "QCoeff":
        value = Surd.coerce(value)
        if not value:
            return cls()
        return cls(((exponent, value),))

    @classmethod
    def q_power(cls, exponent: int, value: SurdLike = 1) -> "QCoeff":
        return cls.s_power(2 * exponent, value)

    @classmethod
    def coerce(cls, value: "QCoeff | SurdLike") -> "QCoeff":
        if isinstance(value, QCoeff):
            return value
        return cls.const(value)

    def as_dict(self) -> dict[int, Surd]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_unit(self) -> bool:
        return len(self.terms) == 1

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "QCoeff | SurdLike") -> "QCoeff":
        if isinstance(other, QFraction):
            return NotImplemented
        other = QCoeff.coerce(other)
        merged = self.as_dict()
        for e, c in other.terms:
            merged[e] = merged.get(e, Surd()) + c
        return QCoeff.from_dict(merged)

    __radd__ = __add__

    def __neg__(self) -> "QCoeff":
        return QCoeff(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "QCoeff | SurdLike") -> "QCoeff":
        if isinstance(other, QFraction):
            return NotImplemented
        return self + (-QCoeff.coerce(other))

    def __rsub__(self, other: "QCoeff | SurdLike") -> "QCoeff":
        return QCoeff.coerce(other) - self

    def __mul__(self, other: "QCoeff | SurdLike") -> "QCoeff":
        if isinstance(other, QFraction):
            return NotImplemented
        other = QCoeff.coerce(other)
        product: dict[int, Surd] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                product[e1 + e2] = product.get(e1 + e2, Surd()) + c1 * c2
        return QCoeff.from_dict(product)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "QCoeff":
        if exponent < 0:
            return self.unit_inverse() ** (-exponent)
        result = QCoeff.const(1)
        for _ in range(exponent):
            result = result * self
        return result

    def unit_inverse(self) -> "QCoeff":
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit of Q(sqrt2)[s, 1/s]")
        (e, c), = self.terms
        return QCoeff(((-e, c.inverse()),))

    def __truediv__(self, other: "QCoeff | SurdLike") -> "QCoeff":
        return self * QCoeff.coerce(other).unit_inverse()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, Surd)):
            other = QCoeff.const(other)
        if not isinstance(other, QCoeff):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def conjugate(self) -> "QCoeff":
        """Formal conjugation s -> 1/s; rationals and sqrt2 are real."""
        return QCoeff.from_dict({-e: c for e, c in self.terms})

    def min_exponent(self) -> int:
        return self.terms[0][0]

    def max_exponent(self) -> int:
        return self.terms[-1][0]

    def divide_exact(self, divisor: "QCoeff") -> "QCoeff | None":
        """
        Exact division in Q(sqrt2)[s, 1/s]; returns None if ``divisor`` does not
        divide ``self``.

        Both operands are shifted to polynomials with nonzero constant term on
        the divisor side, so Laurent divisibility reduces to polynomial long
        division.
        """

        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if self.is_zero():
            return QCoeff()
        shift = self.min_exponent() - divisor.min_exponent()
        remainder = {e - self.min_exponent(): c for e, c in self.terms}
        den = {e - divisor.min_exponent(): c for e, c in divisor.terms}
        den_degree = max(den)
        lead_inverse = den[den_degree].inverse()
        quotient: dict[int, Surd] = {}
        while remainder:
            top = max(remainder)
            if top < den_degree:
                return None
            factor = remainder[top] * lead_inverse
            quotient[top - den_degree] = factor
            for e, c in den.items():
                key = e + top - den_degree
                value = remainder.get(key, Surd()) - factor * c
                if value:
                    remainder[key] = value
                else:
                    remainder.pop(key, None)
        return QCoeff.from_dict({e + shift: c for e, c in quotient.items()})

    def eval_at(self, s: complex) -> complex:
        return sum((float(c) * s**e for e, c in self.terms), 0j)

    def at_one(self) -> Surd:
        return sum((c for _, c in self.terms), Surd())

    def to_json(self) -> dict[str, list[dict[str, int | str]]]:
        return {
            "terms": [
                {"s_exp": e, "r": _fraction_str(c.r), "w": _fraction_str(c.w)}
                for e, c in self.terms
            ]
        }

    @classmethod
    def from_json(cls, data: dict[str, list[dict[str, int | str]]]) -> "QCoeff":
        return cls.from_dict(
            {
                int(term["s_exp"]): Surd(Fraction(str(term["r"])), Fraction(str(term["w"])))
                for term in data["terms"]
            }
        )

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = [_term_str(e, c) for e, c in reversed(self.terms)]
        return " + ".join(parts).replace("+ -", "- ")

    def needs_parentheses(self) -> bool:
        return len(self.terms) > 1


def _power_str(exponent: int) -> str:
    if exponent % 2 == 0:
        power = exponent // 2
        return "q" if power == 1 else f"q^{power}"
    return "s" if exponent == 1 else f"s^{exponent}"


def _term_str(exponent: int, coefficient: Surd) -> str:
    if exponent == 0:
        return str(coefficient)
    power = _power_str(exponent)
    if coefficient == 1:
        return power
    if coefficient == -1:
        return f"-{power}"
    return f"{coefficient} {power}"


ONE = QCoeff.const(1)
ZERO = QCoeff()
SQRT2 = QCoeff.const(Surd(Fraction(0), Fraction(1)))
S = QCoeff.s_power(1)
Q = QCoeff.q_power(1)
S_PLUS_S_INV = QCoeff.from_dict({1: Surd(Fraction(1)), -1: Surd(Fraction(1))})
S_MINUS_S_INV = QCoeff.from_dict({1: Surd(Fraction(1)), -1: Surd(Fraction(-1))})
Q_MINUS_Q_INV = QCoeff.from_dict({2: Surd(Fraction(1)), -2: Surd(Fraction(-1))})


@dataclass(frozen=True, eq=False)
class QFraction:
    """
    ``num / ((s + 1/s)^plus_exp * (q - 1/q)^diff_exp)``.

    Only these two denominators occur: the constant 2/(s+1/s) of the deformed
    oscillator relations and the (q-1/q) of q-numbers. Representations are not
    unique, so equality is decided by cross-multiplication.
    """

    num: QCoeff = ZERO
    plus_exp: int = 0
    diff_exp: int = 0

    @classmethod
    def make(cls, num: QCoeff, plus_exp: int = 0, diff_exp: int = 0) -> "QFraction":
        if num.is_zero():
            return cls()
        while diff_exp > 0:
            quotient = num.divide_exact(Q_MINUS_Q_INV)
            if quotient is not None:
                num, diff_exp = quotient, diff_exp - 1
                continue
            # (q - 1/q) = (s - 1/s)(s + 1/s)
            quotient = num.divide_exact(S_MINUS_S_INV)
            if quotient is None:
                break
            num, diff_exp, plus_exp = quotient, diff_exp - 1, plus_exp + 1
        while plus_exp > 0:
            quotient = num.divide_exact(S_PLUS_S_INV)
            if quotient is None:
                break
            num, plus_exp = quotient, plus_exp - 1
        return cls(num, plus_exp, diff_exp)

    @classmethod
    def coerce(cls, value: "QFraction | QCoeff | SurdLike") -> "QFraction":
        if isinstance(value, QFraction):
            return value
        return cls(QCoeff.coerce(value))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def _lifted(self, plus_exp: int, diff_exp: int) -> QCoeff:
        return (
            self.num
            * S_PLUS_S_INV ** (plus_exp - self.plus_exp)
            * Q_MINUS_Q_INV ** (diff_exp - self.diff_exp)
        )

    def __add__(self, other: "QFraction | QCoeff | SurdLike") -> "QFraction":
        other = QFraction.coerce(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        plus_exp = max(self.plus_exp, other.plus_exp)
        diff_exp = max(self.diff_exp, other.diff_exp)
        return QFraction.make(
            self._lifted(plus_exp, diff_exp) + other._lifted(plus_exp, diff_exp),
            plus_exp,
            diff_exp,
        )

    __radd__ = __add__

    def __neg__(self) -> "QFraction":
        return QFraction(-self.num, self.plus_exp, self.diff_exp)

    def __sub__(self, other: "QFraction | QCoeff | SurdLike") -> "QFraction":
        return self + (-QFraction.coerce(other))

    def __rsub__(self, other: "QFraction | QCoeff | SurdLike") -> "QFraction":
        return QFraction.coerce(other) - self

    def __mul__(self, other: "QFraction | QCoeff | SurdLike") -> "QFraction":
        other = QFraction.coerce(other)
        if self.is_zero() or other.is_zero():
            return QFraction()
        if not (other.plus_exp or other.diff_exp or self.plus_exp or self.diff_exp):
            return QFraction(self.num * other.num)
        return QFraction.make(
            self.num * other.num,
            self.plus_exp + other.plus_exp,
            self.diff_exp + other.diff_exp,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: "QCoeff | SurdLike") -> "QFraction":
        return QFraction(self.num / other, self.plus_exp, self.diff_exp)

    def __pow__(self, exponent: int) -> "QFraction":
        if exponent < 0:
            raise ValueError("negative powers of a QFraction are not supported")
        result = QFraction.coerce(1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, Surd, QCoeff)):
            other = QFraction.coerce(other)
        if not isinstance(other, QFraction):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None  # type: ignore

    def conjugate(self) -> "QFraction":
        # (s + 1/s) is invariant, (q - 1/q) changes sign
        sign = -1 if self.diff_exp % 2 else 1
        return QFraction(self.num.conjugate() * sign, self.plus_exp, self.diff_exp)

    def has_pole_at_q_minus_one(self) -> bool:
        # s + 1/s and q - 1/q both vanish at q = -1
        return bool(self.plus_exp or self.diff_exp)

    def eval_at(self, s: complex) -> complex:
        den = (s + 1 / s) ** self.plus_exp * (s * s - 1 / (s * s)) ** self.diff_exp
        if den == 0:
            raise GuardError(f"denominator of {self} vanishes at s = {s}")
        return self.num.eval_at(s) / den

    def at_one(self) -> Surd | None:
        """Value at s = 1, or None when the (q-1/q) denominator survives."""
        if self.diff_exp:
            return None
        return self.num.at_one() / 2**self.plus_exp

    def to_json(self) -> dict[str, object]:
        data: dict[str, object] = dict(self.num.to_json())
        data["den"] = {"s_plus_s_inv": self.plus_exp, "q_minus_q_inv": self.diff_exp}
        return data

    def needs_parentheses(self) -> bool:
        return self.num.needs_parentheses() or bool(self.plus_exp or self.diff_exp)

    def __str__(self) -> str:
        if not (self.plus_exp or self.diff_exp):
            return str(self.num)
        den = ""
        if self.plus_exp:
            den += "(s+s^-1)" + (f"^{self.plus_exp}" if self.plus_exp > 1 else "")
        if self.diff_exp:
            den += "(q-q^-1)" + (f"^{self.diff_exp}" if self.diff_exp > 1 else "")
        num = f"({self.num})" if self.num.needs_parentheses() else str(self.num)
        return f"({num}/{den})"


Scalar = Union[QFraction, QCoeff, Surd, int, Fraction]

FOCK_CONSTANT = QFraction(QCoeff.const(2), plus_exp=1)
INV_Q_DIFF = QFraction(ONE, diff_exp=1)


def q_int(x: int) -> QCoeff:
    """[x]_q = q^(x-1) + q^(x-3) + ... + q^(1-x), in s-exponents."""
    if x < 0:
        raise IndexRangeError(f"q_int expects x >= 0, got {x}")
    return QCoeff.from_dict({2 * (x - 1 - 2 * j): Surd(Fraction(1)) for j in range(x)})


def q_int_signed(x: int) -> QCoeff:
    return q_int(x) if x >= 0 else -q_int(-x)


@lru_cache(maxsize=None)
def q_factorial(m: int) -> QCoeff:
    if m < 0:
        raise IndexRangeError(f"q_factorial expects m >= 0, got {m}")
    if m == 0:
        return ONE
    return q_factorial(m - 1) * q_int(m)


def fock_norm_factor(m: int) -> QFraction:
    """
    Squared norm of the unnormalized one-mode state (a+)^m |0>.

    Equals (2/(s+1/s))^m [m]_q!, the reciprocal of the normalisation constant
    alpha(m); the recurrence a- a+ = (2/(s+1/s)) [N+1] fixes this reading.
    """

    if m < 0:
        raise IndexRangeError(f"fock_norm_factor expects m >= 0, got {m}")
    return QFraction(QCoeff.const(2**m) * q_factorial(m), plus_exp=m)


def root_s(k: int) -> complex:
    if k < 1:
        raise IndexRangeError(f"root of unity order must be >= 1, got {k}")
    return cmath.exp(1j * math.pi / (2 * k))


def eval_root(c: Scalar, k: int) -> ComplexValue:
    """Evaluate at q = exp(i pi / k), i.e. s = exp(i pi / (2k))."""
    s = root_s(k)
    if k == 1 and isinstance(c, QFraction) and c.has_pole_at_q_minus_one():
        raise GuardError(f"{c} has a pole at q = -1 (k = 1): its denominator has s + 1/s or q - 1/q")
    if isinstance(c, (QFraction, QCoeff)):
        return c.eval_at(s)
    return complex(float(Surd.coerce(c)))
