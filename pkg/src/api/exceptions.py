"""Global exception handlers for the API."""

import logging

from fastapi import Request
from fastapi.encoders import jsonable_encoder
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from starlette.exceptions import HTTPException as StarletteHTTPException

from src.plans import PlanParseError

logger = logging.getLogger(__name__)


async def validation_exception_handler(
    request: Request, exc: RequestValidationError
) -> JSONResponse:
    """
    Handle Pydantic validation errors with detailed error messages.

    Args:
        request: The incoming request
        exc: The validation error

    Returns:
        JSONResponse with validation error details
    """
    logger.warning(
        f"Validation error: {request.method} {request.url.path}",
        extra={
            "method": request.method,
            "path": request.url.path,
            "errors": exc.errors(),
        },
    )

    return JSONResponse(status_code=422, content={"detail": jsonable_encoder(exc.errors())})


async def domain_exception_handler(request: Request, exc: Exception) -> JSONResponse:
    """
    Handle bad tool arguments and unparseable plans as client errors.

    Args:
        request: The incoming request
        exc: ToolArgumentError or PlanParseError

    Returns:
        JSONResponse with status 400
    """
    error = "invalid_plan" if isinstance(exc, PlanParseError) else "invalid_arguments"
    logger.warning(
        f"HTTP 400: {request.method} {request.url.path} - {exc}",
        extra={
            "method": request.method,
            "path": request.url.path,
            "status_code": 400,
            "error": error,
        },
    )

    return JSONResponse(
        status_code=400,
        content={"detail": {"error": error, "message": str(exc)}},
    )


async def http_exception_handler(request: Request, exc: StarletteHTTPException) -> JSONResponse:
    """
    Handle HTTP exceptions with consistent format.

    Args:
        request: The incoming request
        exc: The HTTP exception

    Returns:
        JSONResponse with error details
    """
    log = logger.error if exc.status_code >= 500 else logger.warning
    log(
        f"HTTP {exc.status_code}: {request.method} {request.url.path}",
        extra={
            "method": request.method,
            "path": request.url.path,
            "status_code": exc.status_code,
            "detail": exc.detail,
        },
    )

    return JSONResponse(status_code=exc.status_code, content={"detail": exc.detail})


async def unhandled_exception_handler(request: Request, exc: Exception) -> JSONResponse:
    """
    Handle unexpected exceptions with generic error message.

    Args:
        request: The incoming request
        exc: The unhandled exception

    Returns:
        JSONResponse with generic error message
    """
    logger.error(
        f"Unhandled exception: {request.method} {request.url.path} - {exc}",
        extra={
            "method": request.method,
            "path": request.url.path,
            "error": str(exc),
        },
        exc_info=True,
    )

    return JSONResponse(
        status_code=500,
        content={
            "detail": {
                "error": "internal_error",
                "message": "An unexpected error occurred",
            }
        },
    )

