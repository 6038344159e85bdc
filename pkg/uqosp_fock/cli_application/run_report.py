import datetime
import json
import logging
from dataclasses import dataclass, field
from importlib import metadata

import pandas as pd

from uqosp_fock.algebra_calculations.alg_enums import Status
from uqosp_fock.algebra_calculations.results import CheckResult
from uqosp_fock.cli_application.param_enums import RunParameters

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "1"
RESULT_COLUMNS = ["id", "status", "residual", "detail"]


def tool_version() -> str:
    try:
        return metadata.version("uqosp-fock")
    except metadata.PackageNotFoundError:
        return "0.1.0"


@dataclass
class RunReport:
    """Collects check results of one invocation; every result id appears once."""

    command: str
    parameters: RunParameters
    results: list[CheckResult] = field(default_factory=list)
    extra: dict[str, object] = field(default_factory=dict)
    timestamp: str = field(
        default_factory=lambda: datetime.datetime.now(datetime.timezone.utc).isoformat(
            timespec="seconds"
        )
    )

    def extend(self, results: list[CheckResult]) -> None:
        seen = {r.id for r in self.results}
        for result in results:
            if result.id in seen:
                raise ValueError(f"duplicate result id {result.id}")
            seen.add(result.id)
            self.results.append(result)

    @property
    def status(self) -> Status:
        return Status.PASS if all(r.passed for r in self.results) else Status.FAIL

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    @property
    def exit_code(self) -> int:
        return 0 if self.status is Status.PASS else 1

    def table(self) -> pd.DataFrame:
        return pd.DataFrame(
            [r.as_record() for r in self.results], columns=RESULT_COLUMNS
        )

    def to_json(self) -> dict[str, object]:
        return {
            "schema": SCHEMA_VERSION,
            "tool_version": tool_version(),
            "timestamp": self.timestamp,
            "command": self.command,
            "parameters": self.parameters.as_record(),
            "status": self.status.value,
            "results": [r.as_record() for r in self.results],
            **self.extra,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        table = self.table()
        lines = [f"ospq {tool_version()} {self.command}: {self.status.value}"]
        for key, value in self.extra.items():
            lines.append(f"{key}: {value}")
        counts = table["status"].value_counts()
        lines.append(
            f"{len(table)} checks, {counts.get(Status.PASS.value, 0)} passed, "
            f"{counts.get(Status.FAIL.value, 0)} failed"
        )
        for result in self.failures:
            lines.append(f"FAIL {result.id} residual={result.residual} {result.detail}".rstrip())
        return "\n".join(lines)
