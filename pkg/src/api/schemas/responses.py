"""Pydantic response models for API endpoints."""

from datetime import datetime
from typing import Any, Literal

from pydantic import BaseModel, Field

from src.evaluation import ConstraintResult, PlanCost
from src.sandbox import EntityKind


class DependencyStatus(BaseModel):
    """Status of a single dependency."""

    connected: bool = Field(..., description="Connection status")
    url: str = Field(..., description="Dependency URL")
    response_time_ms: int | None = Field(
        default=None, ge=0, description="Response time (if connected)"
    )
    error: str | None = Field(default=None, description="Error message (if not connected)")


class HealthResponse(BaseModel):
    """Response schema for health check."""

    status: Literal["healthy", "degraded", "unavailable"] = Field(
        ..., description="Overall health status"
    )
    version: str = Field(..., description="API version")
    timestamp: datetime = Field(..., description="Health check timestamp")
    sandbox: dict[str, int] | None = Field(
        default=None, description="Rows per sandbox table (null if not loaded)"
    )
    dependencies: dict[str, DependencyStatus] = Field(..., description="Dependency statuses")


class RootResponse(BaseModel):
    """Response schema for root endpoint."""

    name: str = Field(..., description="API name")
    version: str = Field(..., description="API version (semver)")
    description: str = Field(..., description="API description")
    documentation: dict[str, str] = Field(..., description="Documentation links")


class ToolResponse(BaseModel):
    """Records one sandbox tool returned."""

    tool: str = Field(..., description="External tool name")
    arguments: list[str] = Field(..., description="Positional arguments, in signature order")
    count: int = Field(..., ge=0, description="Number of records")
    records: list[dict[str, Any]] = Field(..., description="Typed records as JSON")
    text: str = Field(..., description="Records rendered the way experts see them")


class EntityResponse(BaseModel):
    """Grounding check for one entity name."""

    kind: EntityKind
    name: str
    exists: bool = Field(..., description="True iff the sandbox holds this exact name")
    record: dict[str, Any] | None = Field(
        default=None, description="Matching record (cities have none)"
    )


class EvaluateResponse(BaseModel):
    """Constraint results of one plan against one goal."""

    task_id: str
    day_count: int = Field(..., ge=1)
    commonsense: list[ConstraintResult]
    hard: list[ConstraintResult]
    commonsense_passed: bool
    hard_passed: bool
    final_passed: bool
    cost: PlanCost
