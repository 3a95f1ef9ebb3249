"""FastAPI application initialization and configuration."""

import logging
from collections.abc import AsyncIterator
from contextlib import asynccontextmanager

from fastapi import FastAPI
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from starlette.exceptions import HTTPException as StarletteHTTPException

from src.api.config import get_api_config
from src.api.exceptions import (
    domain_exception_handler,
    http_exception_handler,
    unhandled_exception_handler,
    validation_exception_handler,
)
from src.api.routes import entities, evaluate, health, tools
from src.api.routes.health import API_VERSION
from src.api.schemas.responses import RootResponse
from src.plans import PlanParseError
from src.sandbox import SandboxLoadError, ToolArgumentError, load_sandbox

logger = logging.getLogger(__name__)

API_NAME = "Travel Planner Sandbox API"
API_DESCRIPTION = "Sandbox tools and plan evaluation for the multi-agent travel planner"


@asynccontextmanager
async def lifespan(app: FastAPI) -> AsyncIterator[None]:
    """Load the sandbox once; without it the service reports itself unavailable."""
    config = get_api_config()
    try:
        app.state.sandbox = load_sandbox(config.sandbox_dir)
    except SandboxLoadError as e:
        logger.error(
            f"Sandbox not loaded: {e}",
            extra={"sandbox_dir": str(config.sandbox_dir)},
        )
        app.state.sandbox = None
    yield


# Load configuration and setup logging
config = get_api_config()

app = FastAPI(
    title=API_NAME,
    version=API_VERSION,
    description=API_DESCRIPTION,
    lifespan=lifespan,
)

# When allow_credentials=True, allow_origins=["*"] is rejected by browsers,
# so the wildcard becomes a regex
if config.cors_origins_list == ["*"]:
    app.add_middleware(
        CORSMiddleware,
        allow_origin_regex="https?://.*",
        allow_credentials=True,
        allow_methods=["*"],
        allow_headers=["*"],
    )
else:
    app.add_middleware(
        CORSMiddleware,
        allow_origins=config.cors_origins_list,
        allow_credentials=True,
        allow_methods=["*"],
        allow_headers=["*"],
    )

# Register exception handlers
app.add_exception_handler(RequestValidationError, validation_exception_handler)  # type: ignore[arg-type]
app.add_exception_handler(ToolArgumentError, domain_exception_handler)
app.add_exception_handler(PlanParseError, domain_exception_handler)
app.add_exception_handler(StarletteHTTPException, http_exception_handler)  # type: ignore[arg-type]
app.add_exception_handler(Exception, unhandled_exception_handler)

# Register routers
app.include_router(health.router)
app.include_router(tools.router)
app.include_router(entities.router)
app.include_router(evaluate.router)


@app.get("/", response_model=RootResponse, tags=["info"])
def get_root() -> RootResponse:
    """Get API information and documentation links."""
    return RootResponse(
        name=API_NAME,
        version=API_VERSION,
        description=API_DESCRIPTION,
        documentation={
            "swagger": "/docs",
            "redoc": "/redoc",
            "openapi": "/openapi.json",
        },
    )
