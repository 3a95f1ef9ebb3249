"""Plan evaluation endpoint."""

import logging

from fastapi import APIRouter, Depends

from src.api.dependencies import get_sandbox
from src.api.schemas.requests import EvaluateRequest
from src.api.schemas.responses import EvaluateResponse
from src.evaluation import evaluate_task, plan_cost
from src.plans import parse_plan
from src.sandbox import Sandbox

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/api/v1", tags=["evaluation"])


@router.post("/evaluate", response_model=EvaluateResponse)
def evaluate_plan(
    request_body: EvaluateRequest,
    sandbox: Sandbox = Depends(get_sandbox),
) -> EvaluateResponse:
    """
    Check a plan against the commonsense and hard constraints of its goal.

    Raises:
        HTTPException 400: The plan text does not parse (PlanParseError)
        HTTPException 422: Malformed goal (handled by FastAPI)
    """
    goal = request_body.goal
    plan = parse_plan(request_body.plan_text)
    evaluation = evaluate_task(goal, plan, sandbox)

    logger.info(
        f"Evaluated plan for {goal.task_id}: final {'pass' if evaluation.final_passed else 'fail'}",
        extra={"task_id": goal.task_id, "final_passed": evaluation.final_passed},
    )
    return EvaluateResponse(
        task_id=goal.task_id,
        day_count=len(plan),
        commonsense=list(evaluation.commonsense),
        hard=list(evaluation.hard),
        commonsense_passed=evaluation.commonsense_passed,
        hard_passed=evaluation.hard_passed,
        final_passed=evaluation.final_passed,
        cost=plan_cost(plan, goal, sandbox),
    )
