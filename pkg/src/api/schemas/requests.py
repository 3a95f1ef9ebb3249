"""Pydantic request models for API endpoints."""

from pydantic import BaseModel, Field

from src.world_state import Goal


class EvaluateRequest(BaseModel):
    """Request schema for the plan evaluation endpoint."""

    goal: Goal = Field(..., description="Task the plan answers (id, query, constraints)")
    plan_text: str = Field(
        ...,
        min_length=1,
        max_length=50_000,
        description="Plan in the Day/Current City/... text format",
    )
