"""Benchmark rates and per-area failure breakdown."""

from collections.abc import Sequence

from .models import (
    Area,
    BenchmarkMetrics,
    ConstraintResult,
    EvaluationError,
    TaskEvaluation,
)


def _percent(part: int, whole: int) -> float:
    if whole == 0:
        return 0.0
    return round(100 * part / whole, 2)


def _micro(
    evals: Sequence[TaskEvaluation],
    pick: str,
    include_undelivered: bool,
) -> float:
    results: list[ConstraintResult] = []
    for evaluation in evals:
        if evaluation.delivered or include_undelivered:
            results.extend(getattr(evaluation, pick))
    return _percent(sum(r.passed for r in results), len(results))


def compute_metrics(
    evals: Sequence[TaskEvaluation],
    include_undelivered: bool = True,
) -> BenchmarkMetrics:
    """Compute the six benchmark rates over a task set.

    Macro and final rates are over all tasks, with undelivered tasks failing
    everything. Micro rates count individual constraints; by default the
    constraints of undelivered tasks stay in the denominator.

    Args:
        evals: One evaluation per task
        include_undelivered: Whether micro rates count undelivered tasks' constraints

    Returns:
        BenchmarkMetrics with percentages rounded to two decimals

    Raises:
        EvaluationError: If evals is empty
    """
    if not evals:
        raise EvaluationError("cannot compute metrics over zero tasks")

    total = len(evals)
    return BenchmarkMetrics(
        delivery_rate=_percent(sum(e.delivered for e in evals), total),
        commonsense_micro=_micro(evals, "commonsense", include_undelivered),
        commonsense_macro=_percent(sum(e.commonsense_passed for e in evals), total),
        hard_micro=_micro(evals, "hard", include_undelivered),
        hard_macro=_percent(sum(e.hard_passed for e in evals), total),
        final_pass_rate=_percent(sum(e.final_passed for e in evals), total),
        task_count=total,
    )


def categorize_failures(evals: Sequence[TaskEvaluation]) -> dict[Area, float]:
    """Failed constraints in each area as a percentage of that area's constraints."""
    failed = dict.fromkeys(Area, 0)
    seen = dict.fromkeys(Area, 0)
    for evaluation in evals:
        for result in evaluation.results:
            seen[result.area] += 1
            if not result.passed:
                failed[result.area] += 1
    return {area: _percent(failed[area], seen[area]) for area in Area}
