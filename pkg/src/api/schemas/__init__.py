"""Pydantic schemas for API requests and responses."""

from src.api.schemas.requests import EvaluateRequest
from src.api.schemas.responses import (
    DependencyStatus,
    EntityResponse,
    EvaluateResponse,
    HealthResponse,
    RootResponse,
    ToolResponse,
)

__all__ = [
    # Requests
    "EvaluateRequest",
    # Responses
    "DependencyStatus",
    "EntityResponse",
    "EvaluateResponse",
    "HealthResponse",
    "RootResponse",
    "ToolResponse",
]
