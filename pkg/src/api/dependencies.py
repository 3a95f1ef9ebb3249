"""
FastAPI dependency injection functions.

Routes receive the sandbox loaded at startup and the planner settings through
these functions, so tests can override either with `app.dependency_overrides`.
"""

from fastapi import HTTPException, Request, status

from src.config import PlannerSettings, get_settings
from src.sandbox import Sandbox


def get_sandbox(request: Request) -> Sandbox:
    """
    Get the sandbox loaded by the application lifespan.

    Raises:
        HTTPException 503: If the sandbox could not be loaded at startup
    """
    sandbox: Sandbox | None = getattr(request.app.state, "sandbox", None)
    if sandbox is None:
        raise HTTPException(
            status_code=status.HTTP_503_SERVICE_UNAVAILABLE,
            detail={
                "error": "sandbox_unavailable",
                "message": "sandbox is not loaded; check API_SANDBOX_DIR",
            },
        )
    return sandbox


def get_planner_settings() -> PlannerSettings:
    """Get the planner settings (model endpoint and limits)."""
    return get_settings()
