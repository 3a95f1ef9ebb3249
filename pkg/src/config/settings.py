"""Configuration management for the travel planning system."""

import logging
from functools import lru_cache
from pathlib import Path

import httpx
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LOG_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


class PlannerSettings(BaseSettings):
    """Planner configuration from environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="TRAVEL_MAS_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    base_url: str = Field(
        default="http://localhost:11434/v1",
        description="OpenAI-compatible chat completion base URL",
    )
    model_name: str = Field(
        default="gpt-4o",
        description="Model id sent with every request",
    )
    api_key_env: str = Field(
        default="TRAVEL_MAS_API_KEY",
        description="Name of the environment variable holding the bearer token",
    )
    temperature: float = Field(
        default=0.0,
        ge=0.0,
        le=2.0,
        description="Sampling temperature",
    )
    max_tokens: int = Field(
        default=2048,
        ge=1,
        le=32768,
        description="Maximum tokens per completion",
    )
    timeout: int = Field(
        default=60,
        ge=1,
        le=600,
        description="Request timeout in seconds",
    )
    max_attempts: int = Field(
        default=3,
        ge=1,
        le=10,
        description="Attempts per request on transient failures",
    )
    backoff_initial: float = Field(
        default=1.0,
        ge=0.0,
        description="First retry delay in seconds (doubles per attempt)",
    )
    requests_per_minute: int | None = Field(
        default=60,
        ge=1,
        description="Shared request budget across parallel runs (unset disables limiting)",
    )
    max_steps: int = Field(
        default=30,
        ge=0,
        description="Public message limit per episode",
    )
    max_critic_rounds: int = Field(
        default=3,
        ge=0,
        description="Critic/compiler refinement rounds",
    )
    max_tool_rounds: int = Field(
        default=5,
        ge=0,
        description="Tool-call rounds per expert turn",
    )
    workers: int = Field(
        default=4,
        ge=1,
        le=64,
        description="Episodes executed concurrently by the harness",
    )
    prompt_dir: Path | None = Field(
        default=None,
        description="Directory whose template files override the bundled prompts",
    )
    log_level: str = Field(
        default="WARNING",
        description="Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)",
    )


@lru_cache
def get_settings() -> PlannerSettings:
    """Get cached planner settings instance."""
    return PlannerSettings()


def configure_logging(level: str) -> None:
    """Configure root logging for CLI and service entry points."""
    log_level = getattr(logging, level.upper(), logging.WARNING)
    logging.basicConfig(level=log_level, format=LOG_FORMAT, datefmt=LOG_DATE_FORMAT)
    logging.getLogger("src").setLevel(log_level)
    # httpx logs every request at INFO
    logging.getLogger("httpx").setLevel(max(log_level, logging.WARNING))


def list_remote_models(base_url: str | None = None, timeout: int = 10) -> list[str]:
    """Query the chat endpoint for the model ids it serves.

    Args:
        base_url: OpenAI-compatible base URL (defaults to settings)
        timeout: Request timeout in seconds

    Returns:
        List of model ids

    Raises:
        ConnectionError: If the endpoint cannot be reached
        RuntimeError: If the request fails or the reply is not a model list
    """
    if base_url is None:
        base_url = get_settings().base_url

    models_url = f"{base_url.rstrip('/')}/models"

    try:
        response = httpx.get(models_url, timeout=timeout)
        response.raise_for_status()
        data = response.json()
        entries = data.get("data", [])
        return [entry["id"] for entry in entries if entry.get("id")]

    except httpx.ConnectError as e:
        raise ConnectionError(f"Unable to connect to model endpoint at {base_url}") from e
    except httpx.TimeoutException as e:
        raise RuntimeError(f"Request to model endpoint timed out after {timeout}s") from e
    except httpx.HTTPStatusError as e:
        raise RuntimeError(f"Model endpoint error: {e.response.status_code}") from e
    except Exception as e:
        raise RuntimeError(f"Failed to fetch models: {e}") from e
