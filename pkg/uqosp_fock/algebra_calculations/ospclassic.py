import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np
import numpy.typing as npt
import sympy
from sympy.polys.matrices import DomainMatrix

from uqosp_fock.algebra_calculations.alg_enums import (
    Grade,
    IndexRangeError,
    Sign,
)
from uqosp_fock.algebra_calculations.qcoeff import Surd
from uqosp_fock.algebra_calculations.results import (
    CheckResult,
    exact_check,
    instance_id,
)

logger = logging.getLogger(__name__)

MAX_CLASSICAL_N = 4

IntArray = npt.NDArray[np.int64]
ParaBoseSet = dict[tuple[int, Sign], "GradedMatrix"]


def _dyadic(value: Fraction) -> tuple[int, int]:
    den = value.denominator
    if den & (den - 1):
        raise ValueError(f"{value} has a denominator that is not a power of two")
    return value.numerator, den.bit_length() - 1


def check_mode_index(n: int, i: int) -> None:
    if not 1 <= i <= n:
        raise IndexRangeError(f"mode index {i} outside 1..{n}")


@dataclass(frozen=True)
class CartanMatrix:
    """Symmetric Cartan matrix of osp(1/2n): 2 on the diagonal, 1 at (n, n), -1 off by one."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise IndexRangeError(f"n must be >= 1, got {self.n}")

    def entry(self, i: int, j: int) -> int:
        check_mode_index(self.n, i)
        check_mode_index(self.n, j)
        if i == j:
            return 1 if i == self.n else 2
        if abs(i - j) == 1:
            return -1
        return 0

    @property
    def entries(self) -> IntArray:
        indices = range(1, self.n + 1)
        return np.array([[self.entry(i, j) for j in indices] for i in indices])


@dataclass(frozen=True, eq=False)
class GradedMatrix:
    """
    Homogeneous (2n+1) x (2n+1) matrix with entries in Q(sqrt2).

    The value is (rational + sqrt2 * radical) / 2**halvings with integer arrays,
    which keeps products exact and fast. Every denominator met in the
    classical relations is a power of two.
    """

    rational: IntArray
    radical: IntArray
    grade: Grade
    halvings: int = 0

    @classmethod
    def make(
        cls, rational: IntArray, radical: IntArray, grade: Grade, halvings: int = 0
    ) -> "GradedMatrix":
        while halvings > 0 and not (rational % 2).any() and not (radical % 2).any():
            rational, radical, halvings = rational // 2, radical // 2, halvings - 1
        return cls(rational, radical, grade, halvings)

    @classmethod
    def zero(cls, dim: int, grade: Grade = Grade.EVEN) -> "GradedMatrix":
        empty = np.zeros((dim, dim), dtype=np.int64)
        return cls(empty, empty.copy(), grade)

    @property
    def dim(self) -> int:
        return self.rational.shape[0]

    @property
    def n(self) -> int:
        return (self.dim - 1) // 2

    def is_zero(self) -> bool:
        return not self.rational.any() and not self.radical.any()

    def _aligned(self, halvings: int) -> tuple[IntArray, IntArray]:
        factor = 2 ** (halvings - self.halvings)
        return self.rational * factor, self.radical * factor

    def __add__(self, other: "GradedMatrix") -> "GradedMatrix":
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.grade is not other.grade:
            raise ValueError("sum of matrices with different grades is not homogeneous")
        halvings = max(self.halvings, other.halvings)
        r1, w1 = self._aligned(halvings)
        r2, w2 = other._aligned(halvings)
        return GradedMatrix.make(r1 + r2, w1 + w2, self.grade, halvings)

    def __neg__(self) -> "GradedMatrix":
        return GradedMatrix(-self.rational, -self.radical, self.grade, self.halvings)

    def __sub__(self, other: "GradedMatrix") -> "GradedMatrix":
        return self + (-other)

    def __matmul__(self, other: "GradedMatrix") -> "GradedMatrix":
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        r1, w1, r2, w2 = self.rational, self.radical, other.rational, other.radical
        return GradedMatrix.make(
            r1 @ r2 + 2 * (w1 @ w2),
            r1 @ w2 + w1 @ r2,
            Grade((self.grade.value + other.grade.value) % 2),
            self.halvings + other.halvings,
        )

    def __mul__(self, scalar: Surd | int | Fraction) -> "GradedMatrix":
        scalar = Surd.coerce(scalar)
        a, ea = _dyadic(scalar.r)
        b, eb = _dyadic(scalar.w)
        shift = max(ea, eb)
        a, b = a * 2 ** (shift - ea), b * 2 ** (shift - eb)
        r, w = self.rational, self.radical
        return GradedMatrix.make(
            a * r + 2 * b * w, b * r + a * w, self.grade, self.halvings + shift
        )

    __rmul__ = __mul__

    def entry(self, row: int, col: int) -> Surd:
        den = 2**self.halvings
        return Surd(
            Fraction(int(self.rational[row, col]), den),
            Fraction(int(self.radical[row, col]), den),
        )

    def sympy_vector(self) -> list[sympy.Expr]:
        den = 2**self.halvings
        return [
            sympy.Rational(int(r), den) + sympy.Rational(int(w), den) * sympy.sqrt(2)
            for r, w in zip(self.rational.flat, self.radical.flat)
        ]


def unit_matrix(n: int, row: int, col: int) -> IntArray:
    """E_{row,col} with rows and columns labelled 0..2n."""
    matrix = np.zeros((2 * n + 1, 2 * n + 1), dtype=np.int64)
    matrix[row, col] = 1
    return matrix


def classical_parabose(n: int, i: int, sign: Sign) -> GradedMatrix:
    check_mode_index(n, i)
    zero = np.zeros((2 * n + 1, 2 * n + 1), dtype=np.int64)
    match sign:
        case Sign.MINUS:
            radical = unit_matrix(n, 0, i) - unit_matrix(n, i + n, 0)
        case Sign.PLUS:
            radical = unit_matrix(n, 0, i + n) + unit_matrix(n, i, 0)
    return GradedMatrix(zero, radical, Grade.ODD)


def parabose_operators(n: int) -> ParaBoseSet:
    return {
        (i, sign): classical_parabose(n, i, sign)
        for i in range(1, n + 1)
        for sign in Sign
    }


def cartan_element(n: int, i: int) -> GradedMatrix:
    check_mode_index(n, i)
    rational = unit_matrix(n, n + i, n + i) - unit_matrix(n, i, i)
    return GradedMatrix(rational, np.zeros_like(rational), Grade.EVEN)


def supercommutator(a: GradedMatrix, b: GradedMatrix) -> GradedMatrix:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    if a.grade is Grade.ODD and b.grade is Grade.ODD:
        return a @ b + b @ a
    return a @ b - b @ a


def anticommutator(a: GradedMatrix, b: GradedMatrix) -> GradedMatrix:
    return a @ b + b @ a


def in_osp(matrix: GradedMatrix) -> bool:
    """Block membership test for the matrix form of osp(1/2n), including the grade."""
    n = matrix.n
    for part in (matrix.rational, matrix.radical):
        x, y = part[0, 1 : n + 1], part[0, n + 1 :]
        d, e = part[1 : n + 1, 1 : n + 1], part[1 : n + 1, n + 1 :]
        f, g = part[n + 1 :, 1 : n + 1], part[n + 1 :, n + 1 :]
        if part[0, 0] != 0:
            return False
        if not (
            np.array_equal(e, e.T)
            and np.array_equal(f, f.T)
            and np.array_equal(part[n + 1 :, 0], -x)
            and np.array_equal(part[1 : n + 1, 0], y)
            and np.array_equal(g, -d.T)
        ):
            return False
        if matrix.grade is Grade.ODD and (d.any() or e.any() or f.any()):
            return False
        if matrix.grade is Grade.EVEN and (x.any() or y.any()):
            return False
    return True


@dataclass(frozen=True)
class ClassicalChevalley:
    e: list[GradedMatrix]
    f: list[GradedMatrix]
    h: list[GradedMatrix]


def classical_chevalley(n: int, ops: ParaBoseSet) -> ClassicalChevalley:
    """
    Chevalley generators expressed through the para-Bose operators.

    h_i is half of ({A_(i+1)^-, A_(i+1)^+} - {A_i^-, A_i^+}), i.e. H_i - H_(i+1);
    this is the reading that satisfies the Cartan-Kac relations.
    """

    half = Fraction(1, 2)
    inv_sqrt2 = Surd(Fraction(0), half)
    cartan = [
        anticommutator(ops[(i, Sign.MINUS)], ops[(i, Sign.PLUS)])
        for i in range(1, n + 1)
    ]
    e, f, h = [], [], []
    for i in range(1, n):
        e.append(anticommutator(ops[(i, Sign.MINUS)], ops[(i + 1, Sign.PLUS)]) * half)
        f.append(anticommutator(ops[(i, Sign.PLUS)], ops[(i + 1, Sign.MINUS)]) * half)
        h.append((cartan[i] - cartan[i - 1]) * half)
    e.append(ops[(n, Sign.MINUS)] * (-inv_sqrt2))
    f.append(ops[(n, Sign.PLUS)] * inv_sqrt2)
    h.append(cartan[n - 1] * (-half))
    return ClassicalChevalley(e, f, h)


def serre_expressions(
    n: int, gens: list[GradedMatrix], letter: str
) -> list[tuple[str, GradedMatrix]]:
    """Left-hand sides of the Serre relations for the generators ``gens`` (all must vanish)."""

    def g(i: int) -> GradedMatrix:
        return gens[i - 1]

    def cubic(a: GradedMatrix, b: GradedMatrix) -> GradedMatrix:
        return a @ a @ b - (a @ b @ a) * 2 + b @ a @ a

    tag = f"CSERRE_{letter.upper()}"
    out: list[tuple[str, GradedMatrix]] = []
    for i, j in itertools.combinations(range(1, n + 1), 2):
        if j - i > 1:
            out.append((instance_id(tag, n=n, i=i, j=j), supercommutator(g(i), g(j))))
    for i in range(1, n):
        out.append((instance_id(tag, n=n, i=i, j=i + 1), cubic(g(i), g(i + 1))))
    for i in range(2, n):
        out.append((instance_id(tag, n=n, i=i, j=i - 1), cubic(g(i), g(i - 1))))
    if n >= 2:
        gn, gm = g(n), g(n - 1)
        quartic = (
            gn @ gn @ gn @ gm
            - (gn @ gn @ gm @ gn + gn @ gm @ gn @ gn)
            + gm @ gn @ gn @ gn
        )
        out.append((instance_id(tag, n=n, i=n, j=n - 1), quartic))
    return out


def parabose_rhs(
    ops: ParaBoseSet, i: int, j: int, k: int, xi: Sign, eta: Sign, eps: Sign
) -> GradedMatrix:
    """(eps - eta) delta_jk A_i^xi + (eps - xi) delta_ik A_j^eta."""
    dim = ops[(i, xi)].dim
    result = GradedMatrix.zero(dim, Grade.ODD)
    if j == k:
        result = result + ops[(i, xi)] * (eps.factor - eta.factor)
    if i == k:
        result = result + ops[(j, eta)] * (eps.factor - xi.factor)
    return result


def span_rank(matrices: list[GradedMatrix]) -> int:
    """Dimension over Q(sqrt2) of the linear span of ``matrices``."""
    rows: dict[bytes, GradedMatrix] = {}
    for matrix in matrices:
        if matrix.is_zero():
            continue
        key = (
            matrix.rational.tobytes() + matrix.radical.tobytes() + bytes([matrix.halvings])
        )
        rows.setdefault(key, matrix)
    if not rows:
        return 0
    domain_matrix = DomainMatrix.from_Matrix(
        sympy.Matrix([m.sympy_vector() for m in rows.values()]), extension=True
    )
    return domain_matrix.convert_to(domain_matrix.domain.get_field()).rank()


def verify_classical(n: int, ops: ParaBoseSet | None = None) -> list[CheckResult]:
    """
    Exact check of the undeformed relations for n pairs of para-Bose operators.

    Parameters
    ----------
    n : int
        number of modes, 1 <= n <= 4
    ops : ParaBoseSet | None
        operators to check, defaults to the osp(1/2n) matrix realization;
        tests pass a corrupted set here

    Returns
    -------
    list[CheckResult]
        one entry per relation instance
    """

    if not 1 <= n <= MAX_CLASSICAL_N:
        raise IndexRangeError(f"classical verification supports 1 <= n <= {MAX_CLASSICAL_N}")
    ops = ops if ops is not None else parabose_operators(n)
    modes = range(1, n + 1)
    results: list[CheckResult] = []

    anti = {
        (i, xi, j, eta): anticommutator(ops[(i, xi)], ops[(j, eta)])
        for i, xi, j, eta in itertools.product(modes, Sign, modes, Sign)
    }

    for i, j, k in itertools.product(modes, repeat=3):
        for xi, eta, eps in itertools.product(Sign, repeat=3):
            lhs = supercommutator(anti[(i, xi, j, eta)], ops[(k, eps)])
            rhs = parabose_rhs(ops, i, j, k, xi, eta, eps)
            check_id = instance_id("PB", n=n, i=i, j=j, k=k, xi=xi, eta=eta, eps=eps)
            results.append(exact_check(check_id, (lhs - rhs).is_zero()))

    for i, j, k, l in itertools.product(modes, repeat=4):
        for xi, eta, eps, phi in itertools.product(Sign, repeat=4):
            lhs = supercommutator(anti[(i, xi, j, eta)], anti[(k, eps, l, phi)])
            rhs = GradedMatrix.zero(2 * n + 1)
            if j == k:
                rhs = rhs + anti[(i, xi, l, phi)] * (eps.factor - eta.factor)
            if i == k:
                rhs = rhs + anti[(j, eta, l, phi)] * (eps.factor - xi.factor)
            if j == l:
                rhs = rhs + anti[(i, xi, k, eps)] * (phi.factor - eta.factor)
            if i == l:
                rhs = rhs + anti[(j, eta, k, eps)] * (phi.factor - xi.factor)
            check_id = instance_id(
                "SP", n=n, i=i, j=j, k=k, l=l, xi=xi, eta=eta, eps=eps, phi=phi
            )
            results.append(exact_check(check_id, (lhs - rhs).is_zero()))

    for i in modes:
        residual = anti[(i, Sign.MINUS, i, Sign.PLUS)] + cartan_element(n, i) * 2
        results.append(exact_check(instance_id("CARTAN", n=n, i=i), residual.is_zero()))

    members = list(ops.values()) + list(anti.values())
    results.append(
        exact_check(
            instance_id("OSP_FORM", n=n),
            all(in_osp(m) for m in members),
            f"{len(members)} matrices",
        )
    )

    results.extend(_chevalley_checks(n, classical_chevalley(n, ops)))

    span = span_rank(members)
    results.append(
        exact_check(
            instance_id("SPAN", n=n), span == 2 * n * n + 3 * n, f"dimension {span}"
        )
    )
    gl_rank = span_rank([anti[(i, Sign.MINUS, j, Sign.PLUS)] for i in modes for j in modes])
    results.append(
        exact_check(instance_id("GL_SPAN", n=n), gl_rank == n * n, f"rank {gl_rank}")
    )
    logger.debug("classical verification n=%d: %d checks", n, len(results))
    return results


def _chevalley_checks(n: int, chev: ClassicalChevalley) -> list[CheckResult]:
    cartan = CartanMatrix(n)
    modes = range(1, n + 1)
    out: list[CheckResult] = []

    def record(check_id: str, residual: GradedMatrix) -> None:
        out.append(exact_check(check_id, residual.is_zero()))

    e: Callable[[int], GradedMatrix] = lambda i: chev.e[i - 1]
    f: Callable[[int], GradedMatrix] = lambda i: chev.f[i - 1]
    h: Callable[[int], GradedMatrix] = lambda i: chev.h[i - 1]
    for i, j in itertools.product(modes, repeat=2):
        a = cartan.entry(i, j)
        record(instance_id("CCK", n=n, i=i, j=j, rel="hh"), supercommutator(h(i), h(j)))
        record(
            instance_id("CCK", n=n, i=i, j=j, rel="he"),
            supercommutator(h(i), e(j)) - e(j) * a,
        )
        record(
            instance_id("CCK", n=n, i=i, j=j, rel="hf"),
            supercommutator(h(i), f(j)) + f(j) * a,
        )
        # for i = j = n the odd pair makes this the anticommutator {e_n, f_n}
        ef = supercommutator(e(i), f(j))
        record(
            instance_id("CCK", n=n, i=i, j=j, rel="ef"),
            ef - h(i) if i == j else ef,
        )
    for letter, gens in (("e", chev.e), ("f", chev.f)):
        for check_id, residual in serre_expressions(n, gens, letter):
            record(check_id, residual)
    return out
