"""Batch runner, evaluation files and comparison reports."""

from .evaluate import (
    EVAL_SCHEMA_VERSION,
    EVAL_SUFFIX,
    EvaluationFile,
    cmd_evaluate,
    evaluate_traces,
)
from .report import (
    DELTA_COLUMN,
    ExperimentReport,
    ReportSchemaError,
    build_report,
    cmd_report,
    format_delta,
    load_evaluation,
    render_csv,
    render_text,
    report_table,
)
from .runner import RunSummary, cassette_path, cmd_run, crash_trace, runs_dir_for
from .tasks import TaskLoadError, TaskSet, goal_from_record, load_tasks

__all__ = [
    "EVAL_SCHEMA_VERSION",
    "EVAL_SUFFIX",
    "EvaluationFile",
    "cmd_evaluate",
    "evaluate_traces",
    "DELTA_COLUMN",
    "ExperimentReport",
    "ReportSchemaError",
    "build_report",
    "cmd_report",
    "format_delta",
    "load_evaluation",
    "render_csv",
    "render_text",
    "report_table",
    "RunSummary",
    "cassette_path",
    "cmd_run",
    "crash_trace",
    "runs_dir_for",
    "TaskLoadError",
    "TaskSet",
    "goal_from_record",
    "load_tasks",
]
