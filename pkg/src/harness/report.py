"""Side-by-side comparison of evaluation files, as plain text and CSV."""

import json
import logging
from collections.abc import Sequence
from pathlib import Path

import pandas as pd
from pydantic import BaseModel, ConfigDict, ValidationError

from src.evaluation import (
    COUNTED_KINDS,
    METRIC_LABELS,
    Area,
    BenchmarkMetrics,
    HallucinationReport,
)
from src.orchestration import RevisitStats, RunMode
from src.world_state import EXPERT_ROLES

from .evaluate import EVAL_SCHEMA_VERSION, EvaluationFile

logger = logging.getLogger(__name__)

DELTA_COLUMN = "Δ"
REPORT_TEXT = "report.txt"
REPORT_CSV = "report.csv"


class ReportSchemaError(ValueError):
    """Raised when an evaluation file has another schema version or cannot be read."""


class ExperimentReport(BaseModel):
    """Numbers of every compared experiment, keyed by column name."""

    model_config = ConfigDict(frozen=True)

    columns: tuple[str, ...]
    modes: dict[str, RunMode]
    metrics: dict[str, BenchmarkMetrics]
    revisits: dict[str, RevisitStats]
    failure_areas: dict[str, dict[Area, float]]
    hallucinations: dict[str, HallucinationReport]
    config_digests: dict[str, tuple[str, ...]]


def load_evaluation(path: Path) -> EvaluationFile:
    """Read an evaluation file, checking its schema version first.

    Raises:
        ReportSchemaError: On a version mismatch or an unreadable file
    """
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise ReportSchemaError(f"cannot read evaluation file {path}: {e}") from e
    version = raw.get("schema_version") if isinstance(raw, dict) else None
    if version != EVAL_SCHEMA_VERSION:
        raise ReportSchemaError(
            f"{path.name}: schema version {version}, expected {EVAL_SCHEMA_VERSION}"
        )
    try:
        return EvaluationFile.model_validate(raw)
    except ValidationError as e:
        raise ReportSchemaError(f"{path.name}: invalid evaluation file ({e})") from e


def build_report(evaluations: Sequence[EvaluationFile]) -> ExperimentReport:
    """Collect the numbers of each evaluation under a unique column name."""
    if not evaluations:
        raise ValueError("at least one evaluation file is required")
    columns: list[str] = []
    for evaluation in evaluations:
        name = evaluation.experiment
        suffix = 2
        while name in columns:
            name = f"{evaluation.experiment}#{suffix}"
            suffix += 1
        columns.append(name)

    pairs = list(zip(columns, evaluations, strict=True))
    return ExperimentReport(
        columns=tuple(columns),
        modes={c: e.mode for c, e in pairs},
        metrics={c: e.metrics for c, e in pairs},
        revisits={c: e.revisits for c, e in pairs},
        failure_areas={c: e.failure_areas for c, e in pairs},
        hallucinations={c: e.hallucinations for c, e in pairs},
        config_digests={c: e.config_digests for c, e in pairs},
    )


def format_delta(before: float, after: float) -> str:
    """Direction marker and size of a change, from values rounded to two decimals."""
    diff = round(round(after, 2) - round(before, 2), 2)
    if diff < 0:
        return f"↓{abs(diff):.2f}"
    if diff > 0:
        return f"↑{diff:.2f}"
    return "0.00"


def _rows(report: ExperimentReport) -> list[tuple[str, list[float]]]:
    columns = report.columns
    rows: list[tuple[str, list[float]]] = []
    for field, label in METRIC_LABELS.items():
        rows.append((label, [getattr(report.metrics[c], field) for c in columns]))
    for role in EXPERT_ROLES:
        rows.append(
            (
                f"Avg revisits: {role.value}",
                [report.revisits[c].per_expert.get(role.value, 0.0) for c in columns],
            )
        )
    for area in Area:
        rows.append(
            (
                f"Failed constraints %: {area.value}",
                [report.failure_areas[c][area] for c in columns],
            )
        )
    for kind in COUNTED_KINDS:
        rows.append(
            (
                f"Hallucinations: {kind.value}",
                [float(report.hallucinations[c].counts.get(kind.value, 0)) for c in columns],
            )
        )
    rows.append(
        ("Plans with hallucination %", [report.hallucinations[c].share for c in columns])
    )
    return rows


def report_table(report: ExperimentReport) -> pd.DataFrame:
    """Metrics as rows, experiments as columns; a Δ column when exactly two are compared."""
    rows = _rows(report)
    data: dict[str, list[str]] = {
        column: [f"{values[i]:.2f}" for _, values in rows]
        for i, column in enumerate(report.columns)
    }
    if len(report.columns) == 2:
        data[DELTA_COLUMN] = [format_delta(values[0], values[1]) for _, values in rows]
    table = pd.DataFrame(data, index=[label for label, _ in rows])
    table.index.name = "Metric"
    return table


def render_text(table: pd.DataFrame) -> str:
    return table.to_string() + "\n"


def render_csv(table: pd.DataFrame) -> str:
    text: str = table.to_csv(lineterminator="\n")
    return text


def cmd_report(
    eval_paths: Sequence[Path],
    out_dir: Path | None = None,
) -> tuple[ExperimentReport, pd.DataFrame]:
    """Compare evaluation files side by side.

    Args:
        eval_paths: One or more evaluation files, in column order
        out_dir: When given, report.txt and report.csv are written there

    Raises:
        ReportSchemaError: If a file has a different schema version or is unreadable
        ValueError: If no file is given
    """
    if not eval_paths:
        raise ValueError("at least one evaluation file is required")
    report = build_report([load_evaluation(path) for path in eval_paths])
    table = report_table(report)

    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / REPORT_TEXT).write_text(render_text(table), encoding="utf-8")
        (out_dir / REPORT_CSV).write_text(render_csv(table), encoding="utf-8")
        logger.info(
            f"Wrote comparison of {len(report.columns)} experiments to {out_dir}",
            extra={"columns": list(report.columns), "out_dir": str(out_dir)},
        )
    return report, table
