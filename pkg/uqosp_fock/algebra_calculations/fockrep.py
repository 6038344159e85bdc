import cmath
import itertools
import logging
import math
import re
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property

import numpy as np
import numpy.typing as npt
import pandas as pd
import scipy.sparse as sp
import sympy
from scipy.sparse.csgraph import connected_components
from scipy.sparse.linalg import norm as sparse_norm
from sympy.ntheory.multinomial import multinomial_coefficients

from uqosp_fock.algebra_calculations.alg_enums import (
    GuardError,
    IndexRangeError,
    UnitarityError,
)
from uqosp_fock.algebra_calculations.gen_expr import Evaluator, L, Leaf, LeafKind
from uqosp_fock.algebra_calculations.qcoeff import (
    FOCK_CONSTANT,
    QFraction,
    eval_root,
    fock_norm_factor,
    q_int,
)
from uqosp_fock.algebra_calculations.results import (
    CheckResult,
    exact_check,
    instance_id,
    numeric_check,
)
from uqosp_fock.algebra_calculations.uqosp import (
    RelationInstance,
    build_chevalley_from_pre,
    build_gl_generator,
    gl_order_key,
    realize,
)
from uqosp_fock.algebra_calculations.walgebra import Letter, LetterKind, WeylElement

logger = logging.getLogger(__name__)

MAX_DIMENSION = 10**5
DENSE_LIMIT = 4096
TOL_REL = 1e-9
TOL_ENTRY = 1e-12
TOL_NORM = 1e-10

SparseMatrix = sp.csr_matrix


def check_guard(n: int, k: int) -> None:
    if n < 1:
        raise GuardError(f"n must be >= 1, got {n}")
    if k < 2:
        raise GuardError(f"k must be >= 2, got {k}")
    if k**n > MAX_DIMENSION:
        raise GuardError(f"dimension k^n = {k**n} exceeds {MAX_DIMENSION}")


@dataclass(frozen=True)
class FockBasisIndex:
    """Occupation numbers m_1..m_n in 0..k-1; linear index is base k with m_1 most significant."""

    m: tuple[int, ...]
    k: int

    def __post_init__(self):
        if any(not 0 <= x < self.k for x in self.m):
            raise IndexRangeError(f"occupation {self.m} outside 0..{self.k - 1}")

    @classmethod
    def from_linear(cls, index: int, n: int, k: int) -> "FockBasisIndex":
        if not 0 <= index < k**n:
            raise IndexRangeError(f"linear index {index} outside 0..{k**n - 1}")
        return cls(tuple(int(x) for x in np.unravel_index(index, (k,) * n)), k)

    @property
    def linear(self) -> int:
        return int(np.ravel_multi_index(self.m, (self.k,) * len(self.m)))

    @property
    def total(self) -> int:
        return sum(self.m)


class OpKind(Enum):
    A_PLUS = "a+"
    A_MINUS = "a-"
    KAPPA = "k"
    L = "L"
    E = "e"


_OP_PATTERNS = {
    OpKind.A_PLUS: re.compile(r"^a(\d+)\+$"),
    OpKind.A_MINUS: re.compile(r"^a(\d+)-$"),
    OpKind.KAPPA: re.compile(r"^k(\d+)(\^-1)?$"),
    OpKind.L: re.compile(r"^L(\d+)(\^-1)?$"),
    OpKind.E: re.compile(r"^e(\d+)_?(\d+)$"),
}


@dataclass(frozen=True)
class OpLabel:
    kind: OpKind
    i: int
    j: int = 0
    power: int = 1

    @classmethod
    def parse(cls, text: str) -> "OpLabel":
        for kind, pattern in _OP_PATTERNS.items():
            if match := pattern.match(text):
                if kind is OpKind.E:
                    return cls(kind, int(match.group(1)), int(match.group(2)))
                power = -1 if match.lastindex == 2 and match.group(2) else 1
                return cls(kind, int(match.group(1)), power=power)
        raise IndexRangeError(f"invalid operator label {text!r}")

    def __str__(self) -> str:
        match self.kind:
            case OpKind.A_PLUS:
                return f"a{self.i}+"
            case OpKind.A_MINUS:
                return f"a{self.i}-"
            case OpKind.E:
                return f"e{self.i}_{self.j}"
        suffix = "^-1" if self.power == -1 else ""
        return f"{self.kind.value}{self.i}{suffix}"


@dataclass(frozen=True, eq=False)
class RepMatrix:
    label: str
    data: SparseMatrix

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def dense(self) -> npt.NDArray[np.complex128]:
        return self.data.toarray()

    def triplets(self) -> pd.DataFrame:
        """Nonzero entries as ``row,col,re,im`` sorted row-major."""
        coo = self.data.tocoo()
        frame = pd.DataFrame(
            {"row": coo.row, "col": coo.col, "re": coo.data.real, "im": coo.data.imag}
        )
        return frame.sort_values(["row", "col"], ignore_index=True)


def occupations(n: int, k: int) -> npt.NDArray[np.int64]:
    """Row r holds the occupation numbers of the basis vector with linear index r."""
    return np.array(np.unravel_index(np.arange(k**n), (k,) * n)).T


def _ladder_matrix(n: int, k: int, i: int, raising: bool) -> SparseMatrix:
    occ = occupations(n, k)
    mi = occ[:, i - 1]
    below = occ[:, : i - 1].sum(axis=1)
    stride = k ** (n - i)
    scale = 2 * math.sin(math.pi / (2 * k)) / math.sin(math.pi / k) ** 2
    cols = np.arange(k**n)
    if raising:
        mask = mi < k - 1
        sines = np.sin(np.pi * (mi[mask] + 1) / k)
        phases = np.exp(-1j * np.pi * below[mask] / k)
        rows = cols[mask] + stride
    else:
        mask = mi > 0
        sines = np.sin(np.pi * mi[mask] / k)
        phases = np.exp(1j * np.pi * below[mask] / k)
        rows = cols[mask] - stride
    values = phases * np.sqrt(scale * sines)
    return sp.csr_matrix((values, (rows, cols[mask])), shape=(k**n, k**n), dtype=complex)


def _kappa_matrix(n: int, k: int, i: int, power: int) -> SparseMatrix:
    mi = occupations(n, k)[:, i - 1]
    return sp.diags(np.exp(1j * np.pi * power * mi / k), format="csr", dtype=complex)


def build_generator_matrix(label: OpLabel | str, n: int, k: int) -> RepMatrix:
    """
    Matrix of one generator in the orthonormal Fock basis at q = exp(i pi / k).

    a_i^+ |m> = exp(-i pi (m_1+...+m_(i-1))/k) sqrt(2 sin(pi(m_i+1)/k) sin(pi/2k) / sin^2(pi/k)) |m_i+1>,
    a_i^- is its adjoint, kappa_i |m> = exp(i pi m_i/k) |m>; e_ij are products of
    these, L_i comes from its image q^(-1/2) kappa_i^-1.
    """

    check_guard(n, k)
    if isinstance(label, str):
        label = OpLabel.parse(label)
    if not 1 <= label.i <= n or (label.kind is OpKind.E and not 1 <= label.j <= n):
        raise IndexRangeError(f"operator {label} outside 1..{n}")
    match label.kind:
        case OpKind.A_PLUS:
            data = _ladder_matrix(n, k, label.i, raising=True)
        case OpKind.A_MINUS:
            data = _ladder_matrix(n, k, label.i, raising=False)
        case OpKind.KAPPA:
            data = _kappa_matrix(n, k, label.i, label.power)
        case OpKind.L:
            data = _kappa_matrix(n, k, label.i, -label.power) * cmath.exp(
                -1j * math.pi * label.power / (2 * k)
            )
        case OpKind.E:
            i, j = label.i, label.j
            if i == j:
                raise IndexRangeError("e_ii is not a root vector")
            factor = -math.cos(math.pi / (2 * k))
            plus = _ladder_matrix(n, k, j, raising=True)
            minus = _ladder_matrix(n, k, i, raising=False)
            if i < j:
                data = factor * (_kappa_matrix(n, k, j, 1) @ plus @ minus)
            else:
                data = factor * (plus @ minus @ _kappa_matrix(n, k, i, -1))
    return RepMatrix(str(label), sp.csr_matrix(data))


@dataclass
class FockRepresentation:
    """All generator matrices of the k^n dimensional Fock representation."""

    n: int
    k: int
    matrices: dict[str, RepMatrix] = field(init=False)

    def __post_init__(self):
        check_guard(self.n, self.k)
        labels = []
        for i in range(1, self.n + 1):
            labels += [f"a{i}+", f"a{i}-", f"k{i}", f"k{i}^-1", f"L{i}", f"L{i}^-1"]
        labels += [
            f"e{i}_{j}"
            for i, j in itertools.product(range(1, self.n + 1), repeat=2)
            if i != j
        ]
        self.matrices = {
            label: build_generator_matrix(label, self.n, self.k) for label in labels
        }
        logger.info("built Fock representation n=%d k=%d dim=%d", self.n, self.k, self.dim)

    @property
    def dim(self) -> int:
        return self.k**self.n

    @cached_property
    def identity(self) -> SparseMatrix:
        return sp.identity(self.dim, dtype=complex, format="csr")

    def __getitem__(self, label: str) -> SparseMatrix:
        return self.matrices[label].data

    def letter_matrix(self, letter: Letter) -> SparseMatrix:
        match letter.kind:
            case LetterKind.PLUS:
                return self[f"a{letter.mode}+"]
            case LetterKind.MINUS:
                return self[f"a{letter.mode}-"]
        return _kappa_matrix(self.n, self.k, letter.mode, letter.power)

    def element_matrix(self, x: WeylElement) -> SparseMatrix:
        """Evaluate a W_q(n) element with the Fock matrices at the root of unity."""
        total = sp.csr_matrix((self.dim, self.dim), dtype=complex)
        for monomial, coeff in x.terms.items():
            product = self.identity
            for letter in monomial.word():
                product = product @ self.letter_matrix(letter)
            total = total + eval_root(coeff, self.k) * product
        return total

    def weight_vector(self, i: int) -> npt.NDArray[np.complex128]:
        return self["k" + str(i)].diagonal()


class MatrixBackend:
    """Evaluates relation expressions directly with the Fock matrices."""

    def __init__(self, rep: FockRepresentation):
        self.rep = rep
        self.evaluate: Evaluator[SparseMatrix] = Evaluator(self)

    def leaf(self, leaf: Leaf) -> SparseMatrix:
        n, i, p = self.rep.n, leaf.index, leaf.power
        suffix = "^-1" if p == -1 else ""
        match leaf.kind:
            case LeafKind.A | LeafKind.OSC:
                return self.rep[f"a{i}{leaf.sign.value}"]
            case LeafKind.KAPPA:
                return self.rep[f"k{i}{suffix}"]
            case LeafKind.L:
                return self.rep[f"L{i}{suffix}"]
            case LeafKind.K:
                if i == n:
                    return self.leaf(L(n, p))
                return self.leaf(L(i, p)) @ self.leaf(L(i + 1, -p))
            case LeafKind.E:
                return self.evaluate(build_chevalley_from_pre(n, i)[0])
            case LeafKind.F:
                return self.evaluate(build_chevalley_from_pre(n, i)[1])
        raise ValueError(f"unknown leaf {leaf}")

    def scalar(self, value: QFraction) -> SparseMatrix:
        return self.rep.identity * eval_root(value, self.rep.k)

    def add(self, a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
        return a + b

    def mul(self, a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
        return a @ b

    def scale(self, a: SparseMatrix, value: QFraction) -> SparseMatrix:
        return a * eval_root(value, self.rep.k)


def operator_norm(matrix: SparseMatrix) -> float:
    """Spectral norm; above the dense limit the Frobenius norm bounds it from above."""
    if matrix.nnz == 0:
        return 0.0
    if matrix.shape[0] <= DENSE_LIMIT:
        return float(np.linalg.norm(matrix.toarray(), 2))
    return float(sparse_norm(matrix))


def max_entry(matrix: SparseMatrix) -> float:
    if matrix.nnz == 0:
        return 0.0
    return float(np.abs(matrix.data).max())


def check_unitarity(rep: FockRepresentation, tol_entry: float = TOL_ENTRY) -> list[CheckResult]:
    """(a_i^+)^dagger = a_i^- entrywise; kappa_i and L_i unitary and diagonal."""
    results = []
    for i in range(1, rep.n + 1):
        deviation = max_entry(rep[f"a{i}-"] - rep[f"a{i}+"].conj().T)
        results.append(
            numeric_check(instance_id("ADJOINT", n=rep.n, k=rep.k, i=i), deviation, tol_entry)
        )
        for label in (f"k{i}", f"L{i}"):
            matrix = rep[label]
            off_diagonal = max_entry(matrix - sp.diags(matrix.diagonal(), format="csr"))
            modulus = float(np.abs(np.abs(matrix.diagonal()) - 1).max())
            results.append(
                numeric_check(
                    instance_id("UNITARY", n=rep.n, k=rep.k, op=label),
                    max(off_diagonal, modulus),
                    tol_entry,
                )
            )
    return results


def check_matrix_relations(
    rep: FockRepresentation,
    instances: list[RelationInstance],
    tol_rel: float = TOL_REL,
    cross_check: bool = True,
) -> list[CheckResult]:
    """
    Every relation instance as a matrix identity, plus agreement with the symbolic residual.

    Parameters
    ----------
    rep : FockRepresentation
        matrices at q = exp(i pi / k)
    instances : list[RelationInstance]
        catalog entries, all with ``n == rep.n``
    tol_rel : float
        bound for the operator norm of the residuals
    cross_check : bool
        also evaluate realize(lhs) - realize(rhs) with the matrices

    Returns
    -------
    list[CheckResult]
        ``MAT_<id>`` entries and, with ``cross_check``, ``SYM_<id>`` entries
    """

    evaluate = MatrixBackend(rep).evaluate
    results = []
    for inst in instances:
        if inst.n != rep.n:
            raise IndexRangeError(f"instance {inst.id} is for n={inst.n}, representation has n={rep.n}")
        direct = evaluate(inst.lhs) - evaluate(inst.rhs)
        results.append(numeric_check(f"MAT_{inst.id}", operator_norm(direct), tol_rel))
        if cross_check:
            symbolic = realize(inst.lhs, rep.n) - realize(inst.rhs, rep.n)
            gap = operator_norm(rep.element_matrix(symbolic) - direct)
            results.append(numeric_check(f"SYM_{inst.id}", gap, tol_rel))
    return results


def norm_consistency_checks(rep: FockRepresentation, tol: float = TOL_NORM) -> list[CheckResult]:
    """
    Ties the matrices to the exact norms: |amp(a_i^+)|^2 equals the ratio of consecutive
    one-mode norm factors, and the phase of amp(a_i^+) is exp(-i pi (m_1+...+m_(i-1))/k).
    Also checks the kappa weights and the crossing rule of distinct modes.
    """

    n, k = rep.n, rep.k
    occ = occupations(n, k)
    ratios = [
        (eval_root(fock_norm_factor(m + 1), k) / eval_root(fock_norm_factor(m), k)).real
        for m in range(k - 1)
    ]
    results = []
    for i in range(1, n + 1):
        plus = rep[f"a{i}+"].tocsc()
        stride = k ** (n - i)
        modulus_gap, phase_gap = 0.0, 0.0
        for col, m in enumerate(occ):
            if m[i - 1] == k - 1:
                continue
            amp = plus[col + stride, col]
            modulus_gap = max(modulus_gap, abs(abs(amp) ** 2 - ratios[m[i - 1]]))
            expected = cmath.exp(-1j * math.pi * int(m[: i - 1].sum()) / k)
            phase_gap = max(phase_gap, abs(amp / abs(amp) - expected))
        results.append(numeric_check(instance_id("NORM", n=n, k=k, i=i), modulus_gap, tol))
        results.append(numeric_check(instance_id("PHASE", n=n, k=k, i=i), phase_gap, tol))
        weight_gap = float(np.abs(rep.weight_vector(i) - np.exp(1j * np.pi * occ[:, i - 1] / k)).max())
        results.append(numeric_check(instance_id("WEIGHT", n=n, k=k, i=i), weight_gap, tol))
    q = cmath.exp(1j * math.pi / k)
    for i, j in itertools.combinations(range(1, n + 1), 2):
        for si, sj in itertools.product("+-", repeat=2):
            x, y = rep[f"a{i}{si}"], rep[f"a{j}{sj}"]
            exponent = (1 if si == "+" else -1) * (1 if sj == "+" else -1)
            gap = operator_norm(x @ y - q**exponent * (y @ x))
            results.append(
                numeric_check(instance_id("CROSSING", n=n, k=k, i=i, j=j, xi=si, eta=sj), gap, TOL_REL)
            )
    return results


@dataclass(frozen=True)
class GlBlock:
    m: int
    dim: int
    basis: list[FockBasisIndex]
    invariant: bool
    strongly_connected: bool
    polynomial_dim: int
    multinomial_dim: int

    def as_record(self) -> dict[str, object]:
        return {
            "m": self.m,
            "dim": self.dim,
            "indices": [b.linear for b in self.basis],
            "invariant": self.invariant,
            "strongly_connected": self.strongly_connected,
        }


@dataclass(frozen=True)
class GlDecomposition:
    n: int
    k: int
    blocks: list[GlBlock]
    fock_strongly_connected: bool

    @property
    def dims(self) -> list[int]:
        return [block.dim for block in self.blocks]

    def to_json(self) -> dict[str, object]:
        return {"n": self.n, "k": self.k, "blocks": [b.as_record() for b in self.blocks]}


def block_dimension_polynomial(n: int, k: int) -> list[int]:
    """Coefficients of (1 + x + ... + x^(k-1))^n, lowest power first."""
    x = sympy.Symbol("x")
    poly = sympy.Poly(sum(x**p for p in range(k)) ** n, x)
    return [int(c) for c in reversed(poly.all_coeffs())]


def block_dimension_multinomial(n: int, k: int, m: int) -> int:
    """Sum of n!/(j_0! ... j_(k-1)!) over j_0+...+j_(k-1) = n with j_1 + 2 j_2 + ... = m."""
    return sum(
        int(coeff)
        for js, coeff in multinomial_coefficients(k, n).items()
        if sum(p * j for p, j in enumerate(js)) == m
    )


def _strongly_connected(adjacency: SparseMatrix) -> bool:
    if adjacency.shape[0] <= 1:
        return True
    count, _ = connected_components(adjacency, directed=True, connection="strong")
    return count == 1


def _nonzero_pattern(matrices: list[SparseMatrix], tol: float) -> SparseMatrix:
    pattern = sum((abs(m) > tol for m in matrices[1:]), abs(matrices[0]) > tol)
    return sp.csr_matrix(pattern, dtype=np.int8)


def decompose_gl(rep: FockRepresentation, tol_entry: float = TOL_ENTRY) -> GlDecomposition:
    """
    Split the Fock space into the total-number blocks of U_q[gl(n)].

    Each block is checked for invariance under every pi(e_ij) and L_i, its
    dimension is compared with two independent counting formulas, and its
    irreducibility is judged by strong connectivity of the nonzero pattern of the
    pi(e_ij) restricted to the block.
    """

    n, k = rep.n, rep.k
    occ = occupations(n, k)
    totals = occ.sum(axis=1)
    gl_labels = [f"e{i}_{j}" for i, j in itertools.product(range(1, n + 1), repeat=2) if i != j]
    invariance_labels = gl_labels + [f"L{i}" for i in range(1, n + 1)]
    leaking = set()
    for label in invariance_labels:
        coo = rep[label].tocoo()
        for row, col, value in zip(coo.row, coo.col, coo.data):
            if value != 0 and totals[row] != totals[col]:
                leaking.add(int(totals[col]))
    polynomial = block_dimension_polynomial(n, k)
    pattern = _nonzero_pattern([rep[label] for label in gl_labels], tol_entry) if gl_labels else None
    blocks = []
    for m in range(n * (k - 1) + 1):
        members = np.flatnonzero(totals == m)
        if pattern is not None:
            connected = _strongly_connected(pattern[members][:, members])
        else:
            connected = len(members) == 1
        blocks.append(
            GlBlock(
                m=m,
                dim=len(members),
                basis=[FockBasisIndex(tuple(int(x) for x in occ[r]), k) for r in members],
                invariant=m not in leaking,
                strongly_connected=connected,
                polynomial_dim=polynomial[m],
                multinomial_dim=block_dimension_multinomial(n, k, m),
            )
        )
    ladder = _nonzero_pattern(
        [rep[f"a{i}{s}"] for i in range(1, n + 1) for s in "+-"], tol_entry
    )
    return GlDecomposition(n, k, blocks, _strongly_connected(ladder))


def decomposition_checks(decomposition: GlDecomposition) -> list[CheckResult]:
    n, k = decomposition.n, decomposition.k
    results = [
        exact_check(
            instance_id("BLOCKS", n=n, k=k),
            len(decomposition.blocks) == n * k - n + 1
            and sum(decomposition.dims) == k**n,
            f"dims {decomposition.dims}",
        ),
        exact_check(
            instance_id("FOCK_CONNECTED", n=n, k=k), decomposition.fock_strongly_connected
        ),
    ]
    for block in decomposition.blocks:
        results.append(
            exact_check(
                instance_id("BLOCK", n=n, k=k, m=block.m),
                block.invariant
                and block.strongly_connected
                and block.dim == block.polynomial_dim == block.multinomial_dim,
                f"dim {block.dim}",
            )
        )
    return results


@dataclass(frozen=True)
class PositivityDiagnostic:
    q: complex
    unit_modulus: bool
    first_nonpositive_m: int | None
    norms: list[complex]

    def describe(self) -> str:
        where = (
            "none up to the probed range"
            if self.first_nonpositive_m is None
            else f"m = {self.first_nonpositive_m}"
        )
        return f"q = {self.q}: |q| = 1 is {self.unit_modulus}; first non-positive norm at {where}"


def positivity_diagnostic(q: complex, max_m: int = 64, tol: float = TOL_ENTRY) -> PositivityDiagnostic:
    """
    One-mode norms (2/(s+1/s))^m [m]_q! at a complex q, with s the principal square root.

    Evaluated through the recurrence N(m) = N(m-1) (2/(s+1/s)) [m]_q, which agrees
    with fock_norm_factor(m) at s.
    """

    s = cmath.sqrt(q)
    unit_modulus = abs(abs(q) - 1) <= tol
    if abs(q) <= tol or abs(s + 1 / s) <= tol:
        # 2/(s+1/s) has no value here, the first excited state already fails
        return PositivityDiagnostic(q, unit_modulus, 1, [1 + 0j])
    constant = FOCK_CONSTANT.eval_at(s)
    value = 1 + 0j
    norms = []
    first = None
    for m in range(max_m + 1):
        if m:
            value = value * constant * q_int(m).eval_at(s)
        norms.append(value)
        if first is None and not (abs(value.imag) <= tol * max(1.0, abs(value)) and value.real > tol):
            first = m
    return PositivityDiagnostic(q, unit_modulus, first, norms)


def root_order(q: complex, tol: float = TOL_ENTRY) -> int | None:
    """k with q = exp(i pi / k), if there is one."""
    if abs(abs(q) - 1) > tol:
        return None
    angle = cmath.phase(q)
    if angle <= 0:
        return None
    k = round(math.pi / angle)
    if k >= 1 and abs(cmath.exp(1j * math.pi / k) - q) <= tol:
        return k
    return None


def fock_representation_for_q(q: complex, n: int) -> FockRepresentation:
    """
    Build the unitary Fock representation when q is a primitive root exp(i pi/k), k >= 2;
    otherwise raise UnitarityError carrying the positivity diagnostic.
    """

    k = root_order(q)
    if k is None or k < 2:
        diagnostic = positivity_diagnostic(q)
        logger.warning("refusing to build matrices: %s", diagnostic.describe())
        raise UnitarityError("no unitary Fock representation at this q", diagnostic)
    return FockRepresentation(n, k)


@dataclass(frozen=True)
class PbwRankReport:
    n: int
    k: int
    max_degree: int
    monomials: int
    rank: int


def pbw_rank_report(rep: FockRepresentation, max_degree: int = 2) -> PbwRankReport:
    """
    Observed rank of normally ordered monomials in the gl(n) root vectors, as Fock matrices.

    Only a lower bound on independence in the algebra: the Fock representation is
    finite-dimensional, so the rank saturates at k^(2n).
    """

    n = rep.n
    roots = sorted(
        ((i, j) for i, j in itertools.product(range(1, n + 1), repeat=2) if i != j),
        key=lambda ij: gl_order_key(*ij),
    )
    vectors = [rep.identity.toarray().ravel()]
    for degree in range(1, max_degree + 1):
        for word in itertools.combinations_with_replacement(roots, degree):
            product = rep.identity
            for i, j in word:
                product = product @ rep[f"e{i}_{j}"]
            vectors.append(product.toarray().ravel())
    rank = int(np.linalg.matrix_rank(np.array(vectors), tol=TOL_REL))
    return PbwRankReport(n, rep.k, max_degree, len(vectors), rank)


def gl_generator_gap(rep: FockRepresentation) -> float:
    """Largest gap between pi(e_ij) and the realized e_ij evaluated with the matrices."""
    gap = 0.0
    for i, j in itertools.product(range(1, rep.n + 1), repeat=2):
        if i == j:
            continue
        realized = rep.element_matrix(realize(build_gl_generator(rep.n, i, j), rep.n))
        gap = max(gap, operator_norm(realized - rep[f"e{i}_{j}"]))
    return gap
