"""Health check endpoint."""

from datetime import UTC, datetime

import httpx
from fastapi import APIRouter, Depends, Request, status
from fastapi.responses import JSONResponse

from src.api.dependencies import get_planner_settings
from src.api.schemas.responses import DependencyStatus, HealthResponse
from src.config import PlannerSettings
from src.sandbox import Sandbox

API_VERSION = "0.1.0"

router = APIRouter(prefix="/api/v1", tags=["monitoring"])


@router.get("/health")
async def get_health(
    request: Request,
    settings: PlannerSettings = Depends(get_planner_settings),
) -> JSONResponse:
    """Report sandbox row counts and whether the model endpoint answers.

    The service is "healthy" when both are available, "degraded" when only the
    sandbox is (tools and evaluation still work), "unavailable" without a sandbox.
    """
    sandbox: Sandbox | None = getattr(request.app.state, "sandbox", None)
    endpoint_status = await check_model_endpoint(settings.base_url)

    if sandbox is None:
        overall = "unavailable"
    elif endpoint_status.connected:
        overall = "healthy"
    else:
        overall = "degraded"

    health_data = HealthResponse(
        status=overall,
        version=API_VERSION,
        timestamp=datetime.now(UTC),
        sandbox=sandbox.counts if sandbox is not None else None,
        dependencies={"model_endpoint": endpoint_status},
    )

    status_code = (
        status.HTTP_503_SERVICE_UNAVAILABLE if sandbox is None else status.HTTP_200_OK
    )
    return JSONResponse(status_code=status_code, content=health_data.model_dump(mode="json"))


async def check_model_endpoint(base_url: str) -> DependencyStatus:
    """Check whether the chat endpoint lists its models."""
    models_url = f"{base_url.rstrip('/')}/models"
    try:
        async with httpx.AsyncClient(timeout=5.0) as client:
            start = datetime.now()
            response = await client.get(models_url)
            elapsed_ms = int((datetime.now() - start).total_seconds() * 1000)

            if response.status_code == 200:
                return DependencyStatus(connected=True, url=base_url, response_time_ms=elapsed_ms)
            return DependencyStatus(
                connected=False,
                url=base_url,
                error=f"HTTP {response.status_code}",
            )
    except httpx.HTTPError as e:
        return DependencyStatus(connected=False, url=base_url, error=str(e) or type(e).__name__)
