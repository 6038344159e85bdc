import logging
from pathlib import Path

import pandas as pd

from uqosp_fock.algebra_calculations.fockrep import FockRepresentation
from uqosp_fock.cli_application.run_report import RunReport

logger = logging.getLogger(__name__)

TRIPLET_COLUMNS = ["op", "row", "col", "re", "im"]


def matrix_table(rep: FockRepresentation) -> pd.DataFrame:
    """All generator matrices as one long table of nonzero triplets."""
    frames = []
    for label, matrix in rep.matrices.items():
        frame = matrix.triplets()
        frame.insert(0, "op", label)
        frames.append(frame)
    if not frames:
        return pd.DataFrame(columns=TRIPLET_COLUMNS)
    return pd.concat(frames, ignore_index=True)[TRIPLET_COLUMNS]


def write_matrices_csv(rep: FockRepresentation, path: str | Path) -> Path:
    path = Path(path)
    table = matrix_table(rep)
    table.to_csv(path, index=False, float_format="%.17g")
    logger.info("wrote %d matrix entries to %s", len(table), path)
    return path


def write_report(report: RunReport, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(report.dumps() + "\n", encoding="utf-8")
    logger.info("wrote report to %s", path)
    return path


def write_results_csv(report: RunReport, path: str | Path) -> Path:
    path = Path(path)
    report.table().to_csv(path, index=False)
    return path
