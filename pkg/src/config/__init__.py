"""Configuration package."""

from .settings import PlannerSettings, configure_logging, get_settings, list_remote_models

__all__ = [
    "PlannerSettings",
    "get_settings",
    "configure_logging",
    "list_remote_models",
]
