"""Local travel database and the retrieval tools experts call."""

from .database import Sandbox
from .loader import SandboxLoadError, load_sandbox
from .models import (
    AttractionRecord,
    EntityKind,
    FlightRecord,
    HotelRecord,
    RestaurantRecord,
    SandboxRecord,
    normalize_name,
    record_name,
)
from .tools import (
    DOMAIN_ORDER,
    TOOL_BY_DOMAIN,
    TOOL_SPECS,
    Domain,
    ToolArgumentError,
    ToolRecord,
    ToolSpec,
    describe_record,
    describe_results,
    execute_tool,
)

__all__ = [
    "Sandbox",
    "SandboxLoadError",
    "load_sandbox",
    "AttractionRecord",
    "EntityKind",
    "FlightRecord",
    "HotelRecord",
    "RestaurantRecord",
    "SandboxRecord",
    "normalize_name",
    "record_name",
    "DOMAIN_ORDER",
    "TOOL_BY_DOMAIN",
    "TOOL_SPECS",
    "Domain",
    "ToolArgumentError",
    "ToolRecord",
    "ToolSpec",
    "describe_record",
    "describe_results",
    "execute_tool",
]
