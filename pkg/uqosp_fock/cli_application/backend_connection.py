import logging

from uqosp_fock.algebra_calculations.alg_enums import RelationFamily
from uqosp_fock.algebra_calculations.fockrep import (
    FockRepresentation,
    GlDecomposition,
    check_matrix_relations,
    check_unitarity,
    decompose_gl,
    decomposition_checks,
    gl_generator_gap,
    norm_consistency_checks,
)
from uqosp_fock.algebra_calculations.ospclassic import MAX_CLASSICAL_N, verify_classical
from uqosp_fock.algebra_calculations.results import (
    CheckResult,
    instance_id,
    numeric_check,
)
from uqosp_fock.algebra_calculations.uqosp import (
    catalog,
    classical_limit_check,
    verify_catalog,
)
from uqosp_fock.algebra_calculations.walgebra import WeylElement, normal_order
from uqosp_fock.cli_application.exports import write_matrices_csv
from uqosp_fock.cli_application.param_enums import Check, Family, RunParameters
from uqosp_fock.cli_application.run_report import RunReport

logger = logging.getLogger(__name__)


def get_relation_families(params: RunParameters) -> list[RelationFamily]:
    return [f.relation_family for f in params.families if f.relation_family is not None]


def get_classical_results(params: RunParameters) -> list[CheckResult]:
    if params.n > MAX_CLASSICAL_N:
        logger.warning(
            "classical matrix checks cover n <= %d, skipped for n=%d", MAX_CLASSICAL_N, params.n
        )
        return []
    return verify_classical(params.n) + classical_limit_check(params.n)


def get_verify_report(params: RunParameters, corrupted: bool = False) -> RunReport:
    """Classical suite and the U_q[osp(1/2n)] relation catalog realized in W_q(n)."""
    report = RunReport("verify", params)
    if Family.CLASSICAL in params.families:
        report.extend(get_classical_results(params))
    families = get_relation_families(params)
    if families:
        instances = catalog(params.n, families, seed=params.seed)
        report.extend(verify_catalog(instances, threads=params.threads, corrupted=corrupted))
    report.extra["instances"] = len(report.results)
    return report


def get_rep_report(
    params: RunParameters, rep: FockRepresentation | None = None
) -> RunReport:
    """Build the root-of-unity Fock matrices, run the selected checks, export on request."""
    if rep is None:
        rep = FockRepresentation(params.n, params.k)
    report = RunReport("rep", params)
    report.extra["dim"] = rep.dim
    if Check.UNITARITY in params.checks:
        report.extend(check_unitarity(rep, params.tol_entry))
        report.extend(norm_consistency_checks(rep))
    if Check.RELATIONS in params.checks:
        instances = catalog(params.n, seed=params.seed)
        report.extend(check_matrix_relations(rep, instances, params.tol_rel))
        report.extend(
            [
                numeric_check(
                    instance_id("GL_GENERATORS", n=params.n, k=params.k),
                    gl_generator_gap(rep),
                    params.tol_rel,
                )
            ]
        )
    if Check.DIMS in params.checks:
        report.extend(decomposition_checks(decompose_gl(rep, params.tol_entry)))
    if params.out is not None:
        write_matrices_csv(rep, params.out)
    return report


def get_decompose_report(params: RunParameters) -> tuple[RunReport, GlDecomposition]:
    rep = FockRepresentation(params.n, params.k)
    decomposition = decompose_gl(rep, params.tol_entry)
    report = RunReport("decompose", params)
    report.extend(decomposition_checks(decomposition))
    report.extra["blocks"] = len(decomposition.blocks)
    report.extra["dims"] = decomposition.dims
    report.extra["fock_strongly_connected"] = decomposition.fock_strongly_connected
    return report, decomposition


def get_normal_form(word: str) -> WeylElement:
    return normal_order(word)
