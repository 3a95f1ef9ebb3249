"""Evaluate one task: both validator families plus the undelivered rule."""

from src.plans import Plan
from src.sandbox import Sandbox
from src.world_state import Goal

from .commonsense import check_commonsense
from .hard import check_hard
from .models import (
    CATEGORY_AREAS,
    COMMONSENSE_CATEGORIES,
    HARD_CATEGORIES,
    NOT_DELIVERED,
    ConstraintKind,
    ConstraintResult,
    TaskEvaluation,
)


def _failed(name: str, kind: ConstraintKind) -> ConstraintResult:
    return ConstraintResult(
        name=name,
        kind=kind,
        area=CATEGORY_AREAS[name],
        passed=False,
        detail=NOT_DELIVERED,
        violations=(NOT_DELIVERED,),
    )


def undelivered_evaluation(task_id: str) -> TaskEvaluation:
    """Every constraint recorded as failed."""
    return TaskEvaluation(
        task_id=task_id,
        delivered=False,
        commonsense=tuple(_failed(n, ConstraintKind.COMMONSENSE) for n in COMMONSENSE_CATEGORIES),
        hard=tuple(_failed(n, ConstraintKind.HARD) for n in HARD_CATEGORIES),
    )


def evaluate_task(goal: Goal, plan: Plan | None, sandbox: Sandbox) -> TaskEvaluation:
    """Run every validator on a delivered plan; None means the task was not delivered."""
    if plan is None:
        return undelivered_evaluation(goal.task_id)
    return TaskEvaluation(
        task_id=goal.task_id,
        delivered=True,
        commonsense=tuple(check_commonsense(plan, sandbox, goal)),
        hard=tuple(check_hard(plan, goal, sandbox)),
    )
