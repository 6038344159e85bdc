import itertools
import json
import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable

import numpy as np

from uqosp_fock.algebra_calculations.alg_enums import (
    Grade,
    IndexRangeError,
    RelationFamily,
    Sign,
)
from uqosp_fock.algebra_calculations.gen_expr import (
    A,
    Evaluator,
    GenExpr,
    L,
    Leaf,
    LeafKind,
    anti,
    bracket,
    const,
    e,
    f,
    k,
    q_bracket,
)
from uqosp_fock.algebra_calculations.ospclassic import (
    CartanMatrix,
    GradedMatrix,
    check_mode_index,
    classical_parabose,
)
from uqosp_fock.algebra_calculations.qcoeff import (
    INV_Q_DIFF,
    Q_MINUS_Q_INV,
    QCoeff,
    QFraction,
    Scalar,
    Surd,
)
from uqosp_fock.algebra_calculations.results import (
    CheckResult,
    exact_check,
    instance_id,
)
from uqosp_fock.algebra_calculations.walgebra import (
    Letter,
    WeylElement,
    mul,
    q_power,
)

logger = logging.getLogger(__name__)


DEFAULT_SAMPLE_SIZE = 500
FULL_SWEEP_MAX_N = 3
MAX_CATALOG_N = 5

SQRT2 = QCoeff.const(Surd(Fraction(0), Fraction(1)))
INV_SQRT2 = QCoeff.const(Surd(Fraction(0), Fraction(1, 2)))
Q_DIFF = QFraction(Q_MINUS_Q_INV)


def tau(*indices: int) -> int:
    """1 for a strictly increasing index chain, -1 for strictly decreasing, else 0."""
    pairs = list(zip(indices, indices[1:]))
    if all(a < b for a, b in pairs):
        return 1
    if all(a > b for a, b in pairs):
        return -1
    return 0


def theta(*indices: int) -> int:
    """1 for a strictly decreasing index chain, else 0."""
    return int(all(a > b for a, b in zip(indices, indices[1:])))


def delta(i: int, j: int) -> int:
    return int(i == j)


def build_preoscillator(n: int, i: int, sign: Sign) -> GenExpr:
    """
    Deformed para-Bose operator as nested q-brackets of Chevalley generators.

    A_i^- = -sqrt2 [e_i, [e_(i+1), ... [e_(n-1), e_n]_(1/q) ...]_(1/q)]_(1/q),
    A_i^+ = sqrt2 [...[f_n, f_(n-1)]_q, ..., f_i]_q.
    """

    check_mode_index(n, i)
    match sign:
        case Sign.MINUS:
            inner: GenExpr = e(n)
            for j in range(n - 1, i - 1, -1):
                inner = q_bracket(e(j), inner, -1)
            return inner * (-SQRT2)
        case Sign.PLUS:
            inner = f(n)
            for j in range(n - 1, i - 1, -1):
                inner = q_bracket(inner, f(j), 1)
            return inner * SQRT2
    raise ValueError(f"unknown sign {sign!r}")


def build_cartan_L(n: int, i: int) -> GenExpr:
    check_mode_index(n, i)
    factors: GenExpr = k(i)
    for j in range(i + 1, n + 1):
        factors = factors * k(j)
    return factors


def build_chevalley_from_pre(n: int, i: int) -> tuple[GenExpr, GenExpr]:
    """(e_i, f_i) through the pre-oscillator operators A and L."""
    check_mode_index(n, i)
    if i == n:
        return A(n, Sign.MINUS) * (-INV_SQRT2), A(n, Sign.PLUS) * INV_SQRT2
    e_i = (anti(A(i, Sign.MINUS), A(i + 1, Sign.PLUS)) * L(i + 1, -1)) * QCoeff.q_power(
        1, Fraction(-1, 2)
    )
    f_i = (L(i + 1) * anti(A(i, Sign.PLUS), A(i + 1, Sign.MINUS))) * QCoeff.q_power(
        -1, Fraction(-1, 2)
    )
    return e_i, f_i


def build_gl_generator(n: int, i: int, j: int) -> GenExpr:
    """Cartan-Weyl root vector e_ij of U_q[gl(n)]."""
    check_mode_index(n, i)
    check_mode_index(n, j)
    if i == j:
        raise IndexRangeError("e_ii is not a root vector, the Cartan directions are the L_i")
    pair = anti(A(i, Sign.MINUS), A(j, Sign.PLUS))
    half = Fraction(-1, 2)
    if i < j:
        return (L(j, -1) * pair) * half
    return (pair * L(i)) * half


def gl_order_key(i: int, j: int) -> tuple[int, int, int]:
    """Normal order of gl(n) root vectors: positive before negative, then (i, j)."""
    return (0 if i < j else 1, i, j)


class Realization:
    """
    The homomorphism onto W_q(n): A_i -> a_i, L_i -> q^(-1/2) kappa_i^-1.

    Chevalley leaves go through their pre-oscillator form and k_i = L_i L_(i+1)^-1.
    ``corrupted`` drops the q^(-1/2) of L_i; it exists to exercise failure reporting.
    """

    def __init__(self, n: int, corrupted: bool = False):
        if n < 1:
            raise IndexRangeError(f"n must be >= 1, got {n}")
        self.n = n
        self.corrupted = corrupted
        self.evaluate: Evaluator[WeylElement] = Evaluator(self)
        self._leaves: dict[tuple, WeylElement] = {}

    def __call__(self, expr: GenExpr) -> WeylElement:
        return self.evaluate(expr)

    def leaf(self, leaf: Leaf) -> WeylElement:
        check_mode_index(self.n, leaf.index)
        key = (leaf.kind, leaf.index, leaf.sign, leaf.power)
        if key not in self._leaves:
            self._leaves[key] = self._leaf_image(leaf)
        return self._leaves[key]

    def _leaf_image(self, leaf: Leaf) -> WeylElement:
        n, i, p = self.n, leaf.index, leaf.power
        match leaf.kind:
            case LeafKind.A | LeafKind.OSC:
                return WeylElement.letter(n, Letter.a(i, leaf.sign))
            case LeafKind.KAPPA:
                return WeylElement.letter(n, Letter.kappa(i, p))
            case LeafKind.L:
                image = WeylElement.letter(n, Letter.kappa(i, -p))
                return image if self.corrupted else image.scale(QCoeff.s_power(-p))
            case LeafKind.K:
                if i == n:
                    return self.leaf(L(n, p))
                return mul(self.leaf(L(i, p)), self.leaf(L(i + 1, -p)))
            case LeafKind.E:
                return self.evaluate(build_chevalley_from_pre(n, i)[0])
            case LeafKind.F:
                return self.evaluate(build_chevalley_from_pre(n, i)[1])
        raise ValueError(f"unknown leaf {leaf}")

    def scalar(self, value: QFraction) -> WeylElement:
        return WeylElement.scalar(self.n, value)

    def add(self, a: WeylElement, b: WeylElement) -> WeylElement:
        return a + b

    def mul(self, a: WeylElement, b: WeylElement) -> WeylElement:
        return mul(a, b)

    def scale(self, a: WeylElement, value: QFraction) -> WeylElement:
        return a.scale(value)


@lru_cache(maxsize=None)
def get_realization(n: int, corrupted: bool = False) -> Realization:
    return Realization(n, corrupted)


def realize(expr: GenExpr, n: int, corrupted: bool = False) -> WeylElement:
    """Normal-ordered image of ``expr`` in W_q(n)."""
    return get_realization(n, corrupted)(expr)


@dataclass(frozen=True, eq=False)
class RelationInstance:
    tag: str
    family: RelationFamily
    n: int
    params: tuple[tuple[str, int | Sign | str], ...]
    lhs: GenExpr
    rhs: GenExpr

    @property
    def id(self) -> str:
        return instance_id(self.tag, n=self.n, **dict(self.params))

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(v for _, v in self.params if isinstance(v, int))

    @property
    def signs(self) -> tuple[Sign, ...]:
        return tuple(v for _, v in self.params if isinstance(v, Sign))

    def to_json_line(self) -> str:
        return json.dumps(
            {
                "id": self.id,
                "family": self.family.value,
                "indices": list(self.indices),
                "signs": [s.value for s in self.signs],
                "lhs": str(self.lhs),
                "rhs": str(self.rhs),
            }
        )


def combine(terms: Iterable[tuple[Scalar, Callable[[], GenExpr]]]) -> GenExpr:
    """Weighted sum of the terms with nonzero weight; the expressions are built lazily."""
    expr: GenExpr | None = None
    for weight, build in terms:
        weight = QFraction.coerce(weight)
        if weight.is_zero():
            continue
        term = build() * weight
        expr = term if expr is None else expr + term
    return expr if expr is not None else const(0)


def _instance(
    tag: str, family: RelationFamily, n: int, lhs: GenExpr, rhs: GenExpr, **params
) -> RelationInstance:
    return RelationInstance(tag, family, n, tuple(params.items()), lhs, rhs)


def _ck_relations(n: int) -> list[RelationInstance]:
    cartan = CartanMatrix(n)
    fam = RelationFamily.CK
    out = []
    modes = range(1, n + 1)
    for i in modes:
        out.append(_instance("CK", fam, n, k(i) * k(i, -1), const(1), i=i, rel="kinv"))
    for i, j in itertools.combinations(modes, 2):
        out.append(_instance("CK", fam, n, k(i) * k(j), k(j) * k(i), i=i, j=j, rel="kk"))
    for i, j in itertools.product(modes, repeat=2):
        a = cartan.entry(i, j)
        out.append(
            _instance("CK", fam, n, k(i) * e(j), (e(j) * k(i)) * q_power(a), i=i, j=j, rel="ke")
        )
        out.append(
            _instance("CK", fam, n, k(i) * f(j), (f(j) * k(i)) * q_power(-a), i=i, j=j, rel="kf")
        )
    for i, j in itertools.product(modes, repeat=2):
        lhs = anti(e(n), f(n)) if i == j == n else bracket(e(i), f(j))
        rhs = combine(
            [
                (INV_Q_DIFF * delta(i, j), lambda: k(i)),
                (-INV_Q_DIFF * delta(i, j), lambda: k(i, -1)),
            ]
        )
        out.append(_instance("CK", fam, n, lhs, rhs, i=i, j=j, rel="ef"))
    return out


def _serre_relations(n: int, letter: str) -> list[RelationInstance]:
    g = e if letter == "E" else f
    tag = f"SERRE_{letter}"
    fam = RelationFamily.SERRE
    q_sum = QFraction(QCoeff.q_power(1) + QCoeff.q_power(-1))
    out = []
    for i, j in itertools.combinations(range(1, n + 1), 2):
        if j - i > 1:
            out.append(_instance(tag, fam, n, bracket(g(i), g(j)), const(0), i=i, j=j))

    def cubic(i: int, j: int) -> GenExpr:
        return combine(
            [
                (1, lambda: g(i) * g(i) * g(j)),
                (-q_sum, lambda: g(i) * g(j) * g(i)),
                (1, lambda: g(j) * g(i) * g(i)),
            ]
        )

    for i in range(1, n):
        out.append(_instance(tag, fam, n, cubic(i, i + 1), const(0), i=i, j=i + 1))
    for i in range(2, n):
        out.append(_instance(tag, fam, n, cubic(i, i - 1), const(0), i=i, j=i - 1))
    if n >= 2:
        gn, gm = g(n), g(n - 1)
        middle = QFraction(QCoeff.const(1) - QCoeff.q_power(1) - QCoeff.q_power(-1))
        quartic = combine(
            [
                (1, lambda: gn * gn * gn * gm),
                (middle, lambda: gn * gn * gm * gn),
                (middle, lambda: gn * gm * gn * gn),
                (1, lambda: gm * gn * gn * gn),
            ]
        )
        out.append(_instance(tag, fam, n, quartic, const(0), i=n, j=n - 1))
    return out


def _pre_relations(n: int) -> list[RelationInstance]:
    fam = RelationFamily.PRE
    modes = range(1, n + 1)
    out = []
    for i in modes:
        out.append(_instance("PRE1", fam, n, L(i) * L(i, -1), const(1), i=i, rel="right"))
        out.append(_instance("PRE1", fam, n, L(i, -1) * L(i), const(1), i=i, rel="left"))
    for i, j in itertools.combinations(modes, 2):
        out.append(_instance("PRE1", fam, n, L(i) * L(j), L(j) * L(i), i=i, j=j, rel="comm"))
    for i, j in itertools.product(modes, repeat=2):
        for xi in Sign:
            rhs = (A(j, xi) * L(i)) * q_power(-xi.factor * delta(i, j))
            out.append(_instance("PRE2", fam, n, L(i) * A(j, xi), rhs, i=i, j=j, xi=xi))
    for i in modes:
        rhs = combine([(-2 * INV_Q_DIFF, lambda: L(i)), (2 * INV_Q_DIFF, lambda: L(i, -1))])
        out.append(_instance("PRE3", fam, n, anti(A(i, Sign.MINUS), A(i, Sign.PLUS)), rhs, i=i))
    for i in modes:
        for direction in (1, -1):
            other = i + direction
            if not 1 <= other <= n:
                continue
            for j, xi in itertools.product(modes, Sign):
                lhs = q_bracket(
                    anti(A(i, xi.flipped), A(other, xi)),
                    A(j, xi.flipped),
                    direction * delta(i, j),
                )
                rhs = combine(
                    [
                        (
                            -2 * xi.factor * delta(j, other),
                            lambda: L(j, direction * xi.factor) * A(i, xi.flipped),
                        )
                    ]
                )
                out.append(
                    _instance("PRE4", fam, n, lhs, rhs, i=i, d=direction, j=j, xi=xi)
                )
    if n >= 2:
        for xi in Sign:
            lhs = q_bracket(anti(A(n - 1, xi), A(n, xi)), A(n, xi), 1)
            out.append(_instance("PRE5", fam, n, lhs, const(0), xi=xi))
    return out


def _triple_relations(n: int) -> list[RelationInstance]:
    fam = RelationFamily.T
    modes = range(1, n + 1)
    out = []
    for i, j, kk, xi in itertools.product(modes, modes, modes, Sign):
        if i == j:
            continue
        x, mx = xi.factor, xi.flipped
        tau_ij = tau(i, j)
        assert tau_ij != 0, "L_k^(xi tau_ij) needs i != j"
        lhs = q_bracket(anti(A(i, mx), A(j, xi)), A(kk, xi), tau(j, i) * delta(j, kk))
        rhs = combine(
            [
                (2 * x * delta(i, kk), lambda: A(j, xi) * L(kk, x * tau_ij)),
                (-Q_DIFF * tau(i, kk, j), lambda: anti(A(i, mx), A(kk, xi)) * A(j, xi)),
            ]
        )
        out.append(_instance("T1", fam, n, lhs, rhs, i=i, j=j, k=kk, xi=xi))
    for i, j, kk, xi in itertools.product(modes, modes, modes, Sign):
        if i == j:
            continue
        x, mx = xi.factor, xi.flipped
        lhs = bracket(anti(A(i, xi), A(j, xi)), A(kk, mx))
        rhs = combine(
            [
                (Q_DIFF * tau(kk, i, j), lambda: anti(A(i, xi), A(kk, mx)) * A(j, xi)),
                (Q_DIFF * tau(kk, j, i), lambda: anti(A(j, xi), A(kk, mx)) * A(i, xi)),
                (-2 * x * delta(i, kk), lambda: A(j, xi) * L(i, x * tau(i, j))),
                (-2 * x * delta(j, kk), lambda: A(i, xi) * L(j, x * tau(j, i))),
            ]
        )
        out.append(_instance("T2", fam, n, lhs, rhs, i=i, j=j, k=kk, xi=xi))
    for i, kk, xi, eta in itertools.product(modes, modes, Sign, Sign):
        x, y, same = xi.factor, eta.factor, int(xi is eta)
        lhs = bracket(anti(A(i, xi), A(i, eta)), A(kk, eta.flipped))
        outer = -2 * x * y * (1 + same) * delta(i, kk) * INV_Q_DIFF
        rhs = combine(
            [
                (
                    QFraction(QCoeff.q_power(tau(kk, i)) - 1) * (2 * same),
                    lambda: anti(A(i, xi), A(kk, xi.flipped)) * A(i, xi),
                ),
                (outer * QFraction(QCoeff.q_power(x) - 1), lambda: A(i, xi) * L(i, -1)),
                (outer * QFraction(1 - QCoeff.q_power(-x)), lambda: A(i, xi) * L(i)),
            ]
        )
        out.append(_instance("T3", fam, n, lhs, rhs, i=i, k=kk, xi=xi, eta=eta))
    for i, j, kk, xi in itertools.product(modes, modes, modes, Sign):
        if i > j:
            continue
        lhs = q_bracket(anti(A(i, xi), A(j, xi)), A(kk, xi), tau(i, kk) + tau(j, kk))
        out.append(_instance("T4", fam, n, lhs, const(0), i=i, j=j, k=kk, xi=xi))
    return out


def _gl_relations(n: int) -> list[RelationInstance]:
    fam = RelationFamily.G
    modes = range(1, n + 1)
    roots = [(i, j) for i in modes for j in modes if i != j]

    def eg(i: int, j: int) -> GenExpr:
        return build_gl_generator(n, i, j)

    out = []
    for i, j in itertools.product(modes, repeat=2):
        for xi, eta in itertools.product(Sign, repeat=2):
            if i > j or (i == j and xi is eta):
                continue
            lhs = L(i, xi.factor) * L(j, eta.factor)
            rhs = L(j, eta.factor) * L(i, xi.factor)
            out.append(_instance("G1", fam, n, lhs, rhs, i=i, j=j, xi=xi, eta=eta))
    for i in modes:
        for j, kk in roots:
            rhs = (eg(j, kk) * L(i)) * q_power(delta(i, j) - delta(i, kk))
            out.append(_instance("G1", fam, n, L(i) * eg(j, kk), rhs, i=i, j=j, k=kk))
    for (i, j), (kk, l) in itertools.product(roots, repeat=2):
        if not (i < j and kk > l):
            continue
        d_il, d_jk = delta(i, l), delta(j, kk)
        right = L(kk) * L(i, -1)
        left = L(l) * L(j, -1)
        rhs = combine(
            [
                (Q_DIFF * theta(j, kk, i, l), lambda: eg(kk, j) * eg(i, l) * right),
                (-d_il * theta(j, kk), lambda: eg(kk, j) * right),
                (d_jk * theta(i, l), lambda: eg(i, l) * right),
                (-Q_DIFF * theta(kk, j, l, i), lambda: left * eg(i, l) * eg(kk, j)),
                (-d_il * theta(kk, j), lambda: left * eg(kk, j)),
                (d_jk * theta(l, i), lambda: left * eg(i, l)),
                (INV_Q_DIFF * d_il * d_jk, lambda: L(i) * L(j, -1)),
                (-INV_Q_DIFF * d_il * d_jk, lambda: L(i, -1) * L(j)),
            ]
        )
        out.append(_instance("G2", fam, n, bracket(eg(i, j), eg(kk, l)), rhs, i=i, j=j, k=kk, l=l))
    for (i, j), (kk, l) in itertools.product(roots, repeat=2):
        first, second = gl_order_key(i, j), gl_order_key(kk, l)
        if i < j and kk < l and first < second:
            xi = 1
        elif i > j and kk > l and first > second:
            xi = -1
        else:
            continue
        exponent = xi * (delta(i, kk) - delta(i, l) - delta(j, kk) + delta(j, l))
        lhs = q_bracket(eg(i, j), eg(kk, l), exponent)
        rhs = combine(
            [
                (delta(j, kk), lambda: eg(i, l)),
                (Q_DIFF * tau(l, j, kk, i), lambda: eg(kk, j) * eg(i, l)),
            ]
        )
        out.append(
            _instance("G3", fam, n, lhs, rhs, i=i, j=j, k=kk, l=l, xi=Sign.from_factor(xi))
        )
    return out


def catalog(
    n: int,
    families: Iterable[RelationFamily] | None = None,
    seed: int = 0,
    sample_size: int = DEFAULT_SAMPLE_SIZE,
) -> list[RelationInstance]:
    """
    Relation instances of U_q[osp(1/2n)] and U_q[gl(n)] over their index ranges.

    For n > 3 every relation tag is cut down to a seeded sample of
    ``sample_size`` instances, kept in enumeration order.
    """

    if not 1 <= n <= MAX_CATALOG_N:
        raise IndexRangeError(f"catalog supports 1 <= n <= {MAX_CATALOG_N}, got {n}")
    selected = set(families) if families is not None else set(RelationFamily)
    builders: list[tuple[RelationFamily, Callable[[], list[RelationInstance]]]] = [
        (RelationFamily.CK, lambda: _ck_relations(n)),
        (RelationFamily.SERRE, lambda: _serre_relations(n, "E") + _serre_relations(n, "F")),
        (RelationFamily.PRE, lambda: _pre_relations(n)),
        (RelationFamily.T, lambda: _triple_relations(n)),
        (RelationFamily.G, lambda: _gl_relations(n)),
    ]
    rng = random.Random(seed)
    instances: list[RelationInstance] = []
    for family, build in builders:
        if family not in selected:
            continue
        built = build()
        if n > FULL_SWEEP_MAX_N:
            built = _sample_per_tag(built, rng, sample_size)
        instances.extend(built)
    logger.info("catalog for n=%d: %d instances", n, len(instances))
    return instances


def _sample_per_tag(
    instances: list[RelationInstance], rng: random.Random, sample_size: int
) -> list[RelationInstance]:
    tags = list(dict.fromkeys(inst.tag for inst in instances))
    kept: list[RelationInstance] = []
    for tag in tags:
        group = [inst for inst in instances if inst.tag == tag]
        if len(group) > sample_size:
            chosen = sorted(rng.sample(range(len(group)), sample_size))
            group = [group[c] for c in chosen]
        kept.extend(group)
    return kept


def verify_instance(instance: RelationInstance, corrupted: bool = False) -> CheckResult:
    realization = get_realization(instance.n, corrupted)
    residual = realization(instance.lhs) - realization(instance.rhs)
    reduced = residual.reduced()
    detail = "" if not reduced.terms else f"residual {reduced}"
    return exact_check(instance.id, not reduced.terms, detail)


def verify_catalog(
    instances: list[RelationInstance], threads: int = 1, corrupted: bool = False
) -> list[CheckResult]:
    """Realize both sides of every instance; results come back in catalog order."""
    if threads <= 1:
        return [verify_instance(inst, corrupted) for inst in instances]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda inst: verify_instance(inst, corrupted), instances))


class ClassicalBackend:
    """q = 1 specialisation: A_i become the osp(1/2n) matrices and L_i the identity."""

    def __init__(self, n: int):
        self.n = n
        dim = 2 * n + 1
        self.identity = GradedMatrix(
            np.eye(dim, dtype=np.int64), np.zeros((dim, dim), dtype=np.int64), Grade.EVEN
        )

    @staticmethod
    def _at_one(value: QFraction) -> Surd:
        result = value.at_one()
        if result is None:
            raise ValueError(f"{value} has no value at q = 1")
        return result

    def leaf(self, leaf: Leaf) -> GradedMatrix:
        match leaf.kind:
            case LeafKind.A:
                return classical_parabose(self.n, leaf.index, leaf.sign)
            case LeafKind.L:
                return self.identity
        raise ValueError(f"no classical image for {leaf}")

    def scalar(self, value: QFraction) -> GradedMatrix:
        return self.identity * self._at_one(value)

    def add(self, a: GradedMatrix, b: GradedMatrix) -> GradedMatrix:
        return a + b

    def mul(self, a: GradedMatrix, b: GradedMatrix) -> GradedMatrix:
        return a @ b

    def scale(self, a: GradedMatrix, value: QFraction) -> GradedMatrix:
        return a * self._at_one(value)


CLASSICAL_LIMIT_TAGS = ("PRE2", "PRE4", "PRE5", "T1", "T2", "T4")


def classical_limit_check(n: int) -> list[CheckResult]:
    """
    Evaluate the pre-oscillator and triple relations at q = 1 with the osp(1/2n) matrices.

    Only relations whose coefficients have a value at q = 1 take part; they must
    reduce to the undeformed para-Bose relations.
    """

    evaluate = Evaluator(ClassicalBackend(n))
    instances = [
        inst
        for inst in catalog(n, [RelationFamily.PRE, RelationFamily.T])
        if inst.tag in CLASSICAL_LIMIT_TAGS
    ]
    results = []
    for inst in instances:
        residual = evaluate(inst.lhs) - evaluate(inst.rhs)
        results.append(exact_check(f"CL_{inst.id}", residual.is_zero()))
    return results


def cartan_weyl_basis(n: int) -> list[tuple[str, GenExpr]]:
    """
    Cartan-Weyl elements L_i^(+-1), A_i^+-, {A_i^-, A_j^+} (i != j) and {A_k^xi, A_l^xi} (k <= l).
    """

    modes = range(1, n + 1)
    basis: list[tuple[str, GenExpr]] = []
    for i in modes:
        basis.append((f"L{i}", L(i)))
        basis.append((f"L{i}^-1", L(i, -1)))
    for i, sign in itertools.product(modes, Sign):
        basis.append((f"A{i}{sign.value}", A(i, sign)))
    for i, j in itertools.product(modes, repeat=2):
        if i != j:
            basis.append((f"{{A{i}-,A{j}+}}", anti(A(i, Sign.MINUS), A(j, Sign.PLUS))))
    for sign in Sign:
        for kk, l in itertools.combinations_with_replacement(modes, 2):
            basis.append((f"{{A{kk}{sign.value},A{l}{sign.value}}}", anti(A(kk, sign), A(l, sign))))
    return basis


def oscillator_cartan_weyl(n: int) -> list[tuple[str, WeylElement]]:
    """Images of the Cartan-Weyl elements in W_q(n)."""
    return [(label, realize(expr, n)) for label, expr in cartan_weyl_basis(n)]
