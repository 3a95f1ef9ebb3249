"""Evaluate a directory of traces into one evaluation file."""

import json
import logging
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field

from src.evaluation import (
    Area,
    BenchmarkMetrics,
    EvaluationError,
    HallucinationReport,
    TaskEvaluation,
    categorize_failures,
    compute_metrics,
    count_hallucinations,
    evaluate_task,
)
from src.orchestration import RevisitStats, RunMode, RunTrace, average_revisits, read_traces
from src.sandbox import Sandbox

from .tasks import TaskSet

logger = logging.getLogger(__name__)

EVAL_SCHEMA_VERSION = 1
EVAL_SUFFIX = ".eval"


class EvaluationFile(BaseModel):
    """Per-task verdicts and aggregate numbers of one experiment."""

    model_config = ConfigDict(frozen=True)

    schema_version: int = EVAL_SCHEMA_VERSION
    experiment: str = Field(..., min_length=1)
    mode: RunMode
    config_digests: tuple[str, ...]
    metrics: BenchmarkMetrics
    failure_areas: dict[Area, float]
    hallucinations: HallucinationReport
    revisits: RevisitStats
    tasks: tuple[TaskEvaluation, ...]

    def to_json(self) -> str:
        """Deterministic JSON text (sorted keys, trailing newline)."""
        return json.dumps(self.model_dump(mode="json"), indent=2, sort_keys=True) + "\n"


def evaluate_traces(
    traces: list[RunTrace],
    tasks: TaskSet,
    sandbox: Sandbox,
    experiment: str,
) -> EvaluationFile:
    """Evaluate stored traces against their goals.

    Raises:
        EvaluationError: If there are no traces, a trace names an unknown task,
            or the traces mix modes
    """
    if not traces:
        raise EvaluationError("no traces to evaluate")
    modes = {trace.mode for trace in traces}
    if len(modes) > 1:
        names = ", ".join(sorted(mode.value for mode in modes))
        raise EvaluationError(f"traces mix modes ({names}); evaluate each experiment separately")

    goals = tasks.by_id()
    traces = sorted(traces, key=lambda t: t.task_id)
    evals = []
    plans = []
    for trace in traces:
        goal = goals.get(trace.task_id)
        if goal is None:
            raise EvaluationError(f"trace for unknown task {trace.task_id!r}")
        plan = trace.plan if trace.delivered else None
        plans.append(plan)
        evals.append(evaluate_task(goal, plan, sandbox))

    return EvaluationFile(
        experiment=experiment,
        mode=modes.pop(),
        config_digests=tuple(sorted({t.config_digest for t in traces})),
        metrics=compute_metrics(evals),
        failure_areas=categorize_failures(evals),
        hallucinations=count_hallucinations(plans, sandbox),
        revisits=average_revisits(traces),
        tasks=tuple(evals),
    )


def cmd_evaluate(
    traces_dir: Path,
    sandbox: Sandbox,
    tasks: TaskSet,
    out: Path,
    experiment: str | None = None,
) -> EvaluationFile:
    """Evaluate every trace in `traces_dir` and write the evaluation file to `out`.

    Raises:
        EvaluationError: If the directory holds no traces or they cannot be evaluated
    """
    if not traces_dir.is_dir():
        raise EvaluationError(f"traces directory not found: {traces_dir}")
    traces = read_traces(traces_dir)
    if not traces:
        raise EvaluationError(f"no traces in {traces_dir}")

    result = evaluate_traces(traces, tasks, sandbox, experiment or traces_dir.name)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(result.to_json(), encoding="utf-8")
    logger.info(
        f"Evaluated {len(traces)} traces of {result.experiment}: "
        f"final pass {result.metrics.final_pass_rate:.2f}%",
        extra={"experiment": result.experiment, "traces": len(traces)},
    )
    return result
