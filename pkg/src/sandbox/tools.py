"""The four retrieval tools experts call, by their external names."""

import datetime as dt
from collections.abc import Callable, Sequence
from enum import Enum

from pydantic import BaseModel, ConfigDict

from src.sandbox.database import Sandbox
from src.sandbox.models import AttractionRecord, FlightRecord, HotelRecord, RestaurantRecord

ToolRecord = FlightRecord | HotelRecord | RestaurantRecord | AttractionRecord


class Domain(str, Enum):
    """Planning domain an expert and its tool cover."""

    TRANSPORTATION = "transportation"
    HOTEL = "hotel"
    RESTAURANT = "restaurant"
    ATTRACTION = "attraction"


DOMAIN_ORDER: tuple[Domain, ...] = (
    Domain.TRANSPORTATION,
    Domain.HOTEL,
    Domain.RESTAURANT,
    Domain.ATTRACTION,
)


class ToolArgumentError(ValueError):
    """Raised when a tool call has the wrong arity or an unparseable argument."""


class ToolSpec(BaseModel):
    """External signature of one sandbox tool."""

    model_config = ConfigDict(frozen=True)

    name: str
    domain: Domain
    parameters: tuple[str, ...]
    description: str

    @property
    def signature(self) -> str:
        return f"{self.name}({', '.join(self.parameters)})"


# `resturant_search` keeps the spelling the expert prompts use.
TOOL_SPECS: dict[str, ToolSpec] = {
    spec.name: spec
    for spec in (
        ToolSpec(
            name="flight_search",
            domain=Domain.TRANSPORTATION,
            parameters=("Departure City", "Destination City", "Date"),
            description="A flight information retrieval tool.",
        ),
        ToolSpec(
            name="hotel_search",
            domain=Domain.HOTEL,
            parameters=("City",),
            description="Discover accommodations in your desired city.",
        ),
        ToolSpec(
            name="resturant_search",
            domain=Domain.RESTAURANT,
            parameters=("City",),
            description="Explore dining options in a city of your choice.",
        ),
        ToolSpec(
            name="attraction_search",
            domain=Domain.ATTRACTION,
            parameters=("City",),
            description="Find attractions in a city of your choice.",
        ),
    )
}

TOOL_BY_DOMAIN: dict[Domain, ToolSpec] = {spec.domain: spec for spec in TOOL_SPECS.values()}


def parse_date(value: str) -> dt.date:
    """Parse a YYYY-MM-DD date argument."""
    try:
        return dt.date.fromisoformat(value.strip())
    except ValueError as e:
        raise ToolArgumentError(f"invalid date {value!r}, expected YYYY-MM-DD") from e


def execute_tool(sandbox: Sandbox, name: str, arguments: Sequence[str]) -> list[ToolRecord]:
    """Run one tool call against the sandbox.

    Args:
        sandbox: Loaded travel database
        name: External tool name
        arguments: Positional arguments exactly as the model wrote them

    Returns:
        The typed records the tool returns (possibly empty)

    Raises:
        ToolArgumentError: If the tool is unknown, the arity is wrong or the date is invalid
    """
    spec = TOOL_SPECS.get(name)
    if spec is None:
        raise ToolArgumentError(f"unknown tool: {name}")
    if len(arguments) != len(spec.parameters):
        raise ToolArgumentError(
            f"{name} takes {len(spec.parameters)} argument(s) "
            f"({', '.join(spec.parameters)}), got {len(arguments)}"
        )

    searches: dict[Domain, Callable[[], Sequence[ToolRecord]]] = {
        Domain.TRANSPORTATION: lambda: sandbox.flight_search(
            arguments[0], arguments[1], parse_date(arguments[2])
        ),
        Domain.HOTEL: lambda: sandbox.hotel_search(arguments[0]),
        Domain.RESTAURANT: lambda: sandbox.restaurant_search(arguments[0]),
        Domain.ATTRACTION: lambda: sandbox.attraction_search(arguments[0]),
    }
    return list(searches[spec.domain]())


def _amount(value: float) -> str:
    if value.is_integer():
        return str(int(value))
    return repr(value)


def describe_record(record: ToolRecord) -> str:
    """Render a record field by field, keeping exact names and numbers."""
    if isinstance(record, FlightRecord):
        return (
            f"Flight Number: {record.flight_number}, "
            f"from {record.origin_city} to {record.destination_city}, "
            f"Date: {record.date.isoformat()}, "
            f"Departure Time: {record.departure_time.strftime('%H:%M')}, "
            f"Arrival Time: {record.arrival_time.strftime('%H:%M')}, "
            f"Duration: {record.duration_minutes} min, "
            f"Price: {_amount(record.price)}"
        )
    if isinstance(record, HotelRecord):
        rules = "; ".join(record.house_rules) or "none"
        return (
            f"Name: {record.name}, City: {record.city}, "
            f"Price per night: {_amount(record.price_per_night)}, "
            f"Room type: {record.room_type}, House rules: {rules}, "
            f"Minimum nights: {record.minimum_nights}, "
            f"Maximum occupancy: {record.maximum_occupancy}"
        )
    if isinstance(record, RestaurantRecord):
        return (
            f"Name: {record.name}, City: {record.city}, "
            f"Cuisines: {'; '.join(record.cuisines)}, "
            f"Average cost: {_amount(record.average_cost)}, Rating: {_amount(record.rating)}"
        )
    address = f", Address: {record.address}" if record.address else ""
    return f"Name: {record.name}, City: {record.city}{address}"


def describe_results(name: str, arguments: Sequence[str], records: Sequence[ToolRecord]) -> str:
    """Text block an expert receives back for one executed call."""
    header = f"{name}({', '.join(arguments)}) returned {len(records)} result(s)"
    if not records:
        return f"{header}."
    return "\n".join([f"{header}:", *(f"- {describe_record(r)}" for r in records)])
