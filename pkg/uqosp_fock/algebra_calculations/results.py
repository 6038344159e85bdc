from dataclasses import dataclass

from uqosp_fock.algebra_calculations.alg_enums import Sign, Status

EXACT_ZERO = "exact-zero"


def instance_id(tag: str, **indices: int | Sign | str) -> str:
    """Stable identifier such as ``T2[n=2,i=1,j=2,k=1,xi=+]``."""
    parts = []
    for name, value in indices.items():
        if isinstance(value, Sign):
            value = value.value
        parts.append(f"{name}={value}")
    return f"{tag}[{','.join(parts)}]"


@dataclass(frozen=True)
class CheckResult:
    id: str
    status: Status
    residual: float | str = EXACT_ZERO
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    def as_record(self) -> dict[str, object]:
        return {
            "id": self.id,
            "status": self.status.value,
            "residual": self.residual,
            "detail": self.detail,
        }


def exact_check(check_id: str, is_zero: bool, detail: str = "") -> CheckResult:
    if is_zero:
        return CheckResult(check_id, Status.PASS, EXACT_ZERO, detail)
    return CheckResult(check_id, Status.FAIL, "nonzero", detail)


def numeric_check(
    check_id: str, residual: float, tolerance: float, detail: str = ""
) -> CheckResult:
    status = Status.PASS if residual < tolerance else Status.FAIL
    return CheckResult(check_id, status, float(residual), detail)
