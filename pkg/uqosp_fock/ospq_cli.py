import argparse
import logging
import sys
from pathlib import Path

from uqosp_fock.algebra_calculations.alg_enums import (
    OspqError,
    UnitarityError,
)
from uqosp_fock.algebra_calculations.fockrep import fock_representation_for_q
from uqosp_fock.cli_application.backend_connection import (
    get_decompose_report,
    get_normal_form,
    get_rep_report,
    get_verify_report,
)
from uqosp_fock.cli_application.exports import write_report, write_results_csv
from uqosp_fock.cli_application.param_enums import (
    Check,
    Family,
    OutputFormat,
    RunParameters,
    parse_choices,
)
from uqosp_fock.cli_application.run_report import RunReport, tool_version

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2


def _families(text: str) -> tuple[Family, ...]:
    return parse_choices(text, Family)  # type: ignore


def _checks(text: str) -> tuple[Check, ...]:
    return parse_choices(text, Check)  # type: ignore


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ospq",
        description="Exact checks for U_q[osp(1/2n)], the deformed Weyl algebra W_q(n) "
        "and its Fock representations at roots of unity.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {tool_version()}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, required=True, help="number of modes")
    common.add_argument(
        "--format", type=OutputFormat, default=OutputFormat.TEXT, choices=list(OutputFormat)
    )
    common.add_argument(
        "--out",
        type=str,
        default=None,
        help="report file (json) or results CSV (text); for rep it receives the matrix CSV "
        "and the report stays on stdout",
    )
    common.add_argument("--seed", type=int, default=0, help="sampling seed for n >= 4")
    common.add_argument("--tol-rel", type=float, default=1e-9)
    common.add_argument("--tol-entry", type=float, default=1e-12)

    verify = sub.add_parser("verify", parents=[common], help="symbolic relation checks")
    verify.add_argument("--families", type=_families, default=tuple(Family))
    verify.add_argument("--corrupt", action="store_true", help=argparse.SUPPRESS)

    rep = sub.add_parser("rep", parents=[common], help="root-of-unity Fock matrices")
    target = rep.add_mutually_exclusive_group(required=True)
    target.add_argument("--k", type=int, help="q = exp(i pi / k)")
    target.add_argument("--q", type=complex, help="explicit complex q, e.g. 0.5+0.866j")
    rep.add_argument("--checks", type=_checks, default=tuple(Check))

    decompose = sub.add_parser("decompose", parents=[common], help="U_q[gl(n)] blocks")
    decompose.add_argument("--k", type=int, required=True)

    order = sub.add_parser("normal-order", help="normal form of a word in W_q(n)")
    order.add_argument("word")
    return parser


def configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


def _parameters(args: argparse.Namespace, **overrides) -> RunParameters:
    values = dict(
        n=args.n,
        k=getattr(args, "k", None),
        format=args.format,
        out=args.out,
        seed=args.seed,
        tol_rel=args.tol_rel,
        tol_entry=args.tol_entry,
    )
    if getattr(args, "families", None) is not None:
        values["families"] = args.families
    if getattr(args, "checks", None) is not None:
        values["checks"] = args.checks
    values.update(overrides)
    return RunParameters(**values)


def emit(report: RunReport, fmt: OutputFormat, out: str | None = None) -> int:
    if fmt is OutputFormat.JSON and out is not None:
        write_report(report, Path(out))
    elif fmt is OutputFormat.JSON:
        print(report.dumps())
    else:
        if out is not None:
            write_results_csv(report, Path(out))
        print(report.to_text())
    return report.exit_code


def cmd_verify(args: argparse.Namespace) -> int:
    params = _parameters(args)
    report = get_verify_report(params, corrupted=args.corrupt)
    return emit(report, params.format, params.out)


def cmd_rep(args: argparse.Namespace) -> int:
    fock = None
    k = args.k
    if args.q is not None:
        fock = fock_representation_for_q(args.q, args.n)
        k = fock.k
    params = _parameters(args, k=k)
    report = get_rep_report(params, fock)
    return emit(report, params.format)


def cmd_decompose(args: argparse.Namespace) -> int:
    params = _parameters(args)
    report, decomposition = get_decompose_report(params)
    if params.format is OutputFormat.JSON:
        report.extra["decomposition"] = decomposition.to_json()
    return emit(report, params.format, params.out)


def cmd_normal_order(args: argparse.Namespace) -> int:
    print(get_normal_form(args.word))
    return EXIT_OK


COMMANDS = {
    "verify": cmd_verify,
    "rep": cmd_rep,
    "decompose": cmd_decompose,
    "normal-order": cmd_normal_order,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    try:
        return COMMANDS[args.command](args)
    except UnitarityError as err:
        print(f"ospq: {err}; {err.diagnostic.describe()}", file=sys.stderr)
    except OspqError as err:
        print(f"ospq: {err}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
