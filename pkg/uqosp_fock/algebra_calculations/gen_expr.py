import logging
from dataclasses import dataclass
from enum import Enum
from typing import Generic, Protocol, TypeVar

from uqosp_fock.algebra_calculations.alg_enums import IndexRangeError, Sign
from uqosp_fock.algebra_calculations.qcoeff import QCoeff, QFraction, Scalar

logger = logging.getLogger(__name__)

T = TypeVar("T")


class LeafKind(Enum):
    E = "e"
    F = "f"
    K = "k"
    A = "A"
    L = "L"
    OSC = "a"
    KAPPA = "kappa"


class GenExpr:
    """Base of the expression tree; supports ``*``, ``+``, ``-`` and scalar weights."""

    def __mul__(self, other: "GenExpr | Scalar") -> "GenExpr":
        if isinstance(other, GenExpr):
            return Product((self, other))
        return Sum(((QFraction.coerce(other), self),))

    def __rmul__(self, other: Scalar) -> "GenExpr":
        return Sum(((QFraction.coerce(other), self),))

    def __add__(self, other: "GenExpr") -> "GenExpr":
        return Sum(((QFraction.coerce(1), self), (QFraction.coerce(1), other)))

    def __sub__(self, other: "GenExpr") -> "GenExpr":
        return Sum(((QFraction.coerce(1), self), (QFraction.coerce(-1), other)))

    def __neg__(self) -> "GenExpr":
        return Sum(((QFraction.coerce(-1), self),))

    def leaves(self) -> list["Leaf"]:
        raise NotImplementedError


@dataclass(frozen=True, eq=False)
class Leaf(GenExpr):
    kind: LeafKind
    index: int
    sign: Sign | None = None
    power: int = 1

    def __post_init__(self):
        if self.index < 1:
            raise IndexRangeError(f"leaf index {self.index} must be >= 1")
        if self.power not in (1, -1):
            raise IndexRangeError(f"leaf power must be +1 or -1, got {self.power}")

    def leaves(self) -> list["Leaf"]:
        return [self]

    def __str__(self) -> str:
        suffix = self.sign.value if self.sign is not None else ""
        exponent = "^-1" if self.power == -1 else ""
        return f"{self.kind.value}{self.index}{suffix}{exponent}"


@dataclass(frozen=True, eq=False)
class Const(GenExpr):
    value: QFraction

    def leaves(self) -> list[Leaf]:
        return []

    def __str__(self) -> str:
        return f"({self.value})"


@dataclass(frozen=True, eq=False)
class Product(GenExpr):
    factors: tuple[GenExpr, ...]

    def leaves(self) -> list[Leaf]:
        return [leaf for factor in self.factors for leaf in factor.leaves()]

    def __str__(self) -> str:
        return " ".join(str(f) for f in self.factors)


@dataclass(frozen=True, eq=False)
class Sum(GenExpr):
    terms: tuple[tuple[QFraction, GenExpr], ...]

    def leaves(self) -> list[Leaf]:
        return [leaf for _, term in self.terms for leaf in term.leaves()]

    def __str__(self) -> str:
        parts = []
        for weight, term in self.terms:
            if weight == 1:
                parts.append(str(term))
            elif weight == -1:
                parts.append(f"-{term}")
            else:
                parts.append(f"({weight}) {term}")
        return "(" + " + ".join(parts).replace("+ -", "- ") + ")"


@dataclass(frozen=True, eq=False)
class QBracket(GenExpr):
    """[u, v]_x = u v - x v u with x a unit, a power of s."""

    left: GenExpr
    right: GenExpr
    parameter: QCoeff

    def __post_init__(self):
        if not self.parameter.is_unit():
            raise ValueError(f"q-bracket parameter {self.parameter} is not a unit")

    def leaves(self) -> list[Leaf]:
        return self.left.leaves() + self.right.leaves()

    def __str__(self) -> str:
        if self.parameter == 1:
            return f"[{self.left},{self.right}]"
        return f"[{self.left},{self.right}]_{self.parameter}"


@dataclass(frozen=True, eq=False)
class AntiComm(GenExpr):
    left: GenExpr
    right: GenExpr

    def leaves(self) -> list[Leaf]:
        return self.left.leaves() + self.right.leaves()

    def __str__(self) -> str:
        return f"{{{self.left},{self.right}}}"


def e(i: int) -> Leaf:
    return Leaf(LeafKind.E, i)


def f(i: int) -> Leaf:
    return Leaf(LeafKind.F, i)


def k(i: int, power: int = 1) -> Leaf:
    return Leaf(LeafKind.K, i, power=power)


def A(i: int, sign: Sign) -> Leaf:
    return Leaf(LeafKind.A, i, sign)


def L(i: int, power: int = 1) -> Leaf:
    return Leaf(LeafKind.L, i, power=power)


def bracket(u: GenExpr, v: GenExpr, parameter: QCoeff | int = 1) -> QBracket:
    return QBracket(u, v, QCoeff.coerce(parameter))


def q_bracket(u: GenExpr, v: GenExpr, q_exponent: int) -> QBracket:
    """[u, v]_{q^e}."""
    return QBracket(u, v, QCoeff.q_power(q_exponent))


def anti(u: GenExpr, v: GenExpr) -> AntiComm:
    return AntiComm(u, v)


def const(value: Scalar) -> Const:
    return Const(QFraction.coerce(value))


class Backend(Protocol[T]):
    """Target algebra an expression is evaluated in."""

    def leaf(self, leaf: Leaf) -> T:
        ...

    def scalar(self, value: QFraction) -> T:
        ...

    def add(self, a: T, b: T) -> T:
        ...

    def mul(self, a: T, b: T) -> T:
        ...

    def scale(self, a: T, value: QFraction) -> T:
        ...


class Evaluator(Generic[T]):
    """
    Evaluates expression trees in a backend.

    Repeated subtrees of one tree are evaluated once. The memo lives only for a single
    top-level call, so nothing of the tree is kept afterwards; long-lived caching belongs
    in the backend's ``leaf``.
    """

    def __init__(self, backend: Backend[T]):
        self.backend = backend

    def __call__(self, expr: GenExpr) -> T:
        return self._evaluate(expr, {})

    def _shared(self, expr: GenExpr, memo: dict[int, T]) -> T:
        key = id(expr)
        if key not in memo:
            memo[key] = self._evaluate(expr, memo)
        return memo[key]

    def _evaluate(self, expr: GenExpr, memo: dict[int, T]) -> T:
        b = self.backend
        match expr:
            case Leaf():
                return b.leaf(expr)
            case Const(value=value):
                return b.scalar(value)
            case Product(factors=factors):
                result = self._shared(factors[0], memo)
                for factor in factors[1:]:
                    result = b.mul(result, self._shared(factor, memo))
                return result
            case Sum(terms=terms):
                weight, first = terms[0]
                result = b.scale(self._shared(first, memo), weight)
                for weight, term in terms[1:]:
                    result = b.add(result, b.scale(self._shared(term, memo), weight))
                return result
            case QBracket(left=left, right=right, parameter=parameter):
                u, v = self._shared(left, memo), self._shared(right, memo)
                return b.add(b.mul(u, v), b.scale(b.mul(v, u), -QFraction(parameter)))
            case AntiComm(left=left, right=right):
                u, v = self._shared(left, memo), self._shared(right, memo)
                return b.add(b.mul(u, v), b.mul(v, u))
        raise TypeError(f"unknown expression node {expr!r}")
