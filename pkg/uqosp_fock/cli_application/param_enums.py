import logging
import os
from dataclasses import asdict, dataclass, field
from enum import Enum

from uqosp_fock.algebra_calculations.alg_enums import RelationFamily

logger = logging.getLogger(__name__)

THREADS_ENV = "OSPQ_THREADS"


class Params(Enum):
    N = "n"
    K = "k"
    FAMILIES = "families"
    CHECKS = "checks"
    FORMAT = "format"
    OUT = "out"
    SEED = "seed"
    TOL_REL = "tol_rel"
    TOL_ENTRY = "tol_entry"
    THREADS = "threads"


class Family(Enum):
    CLASSICAL = "classical"
    CK = "CK"
    SERRE = "SERRE"
    PRE = "PRE"
    T = "T"
    G = "G"

    @property
    def relation_family(self) -> RelationFamily | None:
        if self is Family.CLASSICAL:
            return None
        return RelationFamily[self.name]


class Check(Enum):
    UNITARITY = "unitarity"
    RELATIONS = "relations"
    DIMS = "dims"


class OutputFormat(Enum):
    TEXT = "text"
    JSON = "json"


ALL_CHOICE = "all"


def parse_choices(text: str, choices: type[Enum]) -> tuple[Enum, ...]:
    """Comma separated enum values, or ``all``; order follows the enum declaration."""
    if text.strip() == ALL_CHOICE:
        return tuple(choices)
    wanted = {part.strip() for part in text.split(",") if part.strip()}
    known = {member.value: member for member in choices}
    unknown = wanted - known.keys()
    if unknown:
        raise ValueError(
            f"unknown choice(s) {sorted(unknown)}; expected {ALL_CHOICE} or {sorted(known)}"
        )
    return tuple(member for member in choices if member.value in wanted)


def threads_from_env() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        logger.warning("ignoring %s=%r, not an integer", THREADS_ENV, raw)
        return 1
    return value if value >= 1 else 1


@dataclass(frozen=True)
class RunParameters:
    n: int
    k: int | None = None
    families: tuple[Family, ...] = tuple(Family)
    checks: tuple[Check, ...] = tuple(Check)
    format: OutputFormat = OutputFormat.TEXT
    out: str | None = None
    seed: int = 0
    tol_rel: float = 1e-9
    tol_entry: float = 1e-12
    threads: int = field(default_factory=threads_from_env)

    def as_record(self) -> dict[str, object]:
        record = asdict(self)
        record[Params.FAMILIES.value] = [f.value for f in self.families]
        record[Params.CHECKS.value] = [c.value for c in self.checks]
        record[Params.FORMAT.value] = self.format.value
        return record
