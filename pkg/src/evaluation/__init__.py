"""Plan validators, benchmark metrics and hallucination counting."""

from .commonsense import check_commonsense, sandbox_violations, stays
from .evaluator import evaluate_task, undelivered_evaluation
from .hallucinations import COUNTED_KINDS, count_hallucinations
from .hard import PlanCost, check_hard, plan_cost
from .metrics import categorize_failures, compute_metrics
from .models import (
    CATEGORY_AREAS,
    COMMONSENSE_CATEGORIES,
    HARD_CATEGORIES,
    METRIC_LABELS,
    NOT_DELIVERED,
    NOT_REQUESTED,
    Area,
    BenchmarkMetrics,
    ConstraintKind,
    ConstraintResult,
    EvaluationError,
    HallucinationReport,
    TaskEvaluation,
)

__all__ = [
    "check_commonsense",
    "sandbox_violations",
    "stays",
    "evaluate_task",
    "undelivered_evaluation",
    "COUNTED_KINDS",
    "count_hallucinations",
    "PlanCost",
    "check_hard",
    "plan_cost",
    "categorize_failures",
    "compute_metrics",
    "CATEGORY_AREAS",
    "COMMONSENSE_CATEGORIES",
    "HARD_CATEGORIES",
    "METRIC_LABELS",
    "NOT_DELIVERED",
    "NOT_REQUESTED",
    "Area",
    "BenchmarkMetrics",
    "ConstraintKind",
    "ConstraintResult",
    "EvaluationError",
    "HallucinationReport",
    "TaskEvaluation",
]
