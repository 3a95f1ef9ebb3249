"""Typed records of the local travel database."""

import datetime as dt
from enum import Enum
from typing import Annotated, Any, Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator


class EntityKind(str, Enum):
    """Kinds of named entity a plan can reference."""

    FLIGHT = "flight"
    HOTEL = "hotel"
    RESTAURANT = "restaurant"
    ATTRACTION = "attraction"
    CITY = "city"


def normalize_name(value: str) -> str:
    """Canonical form used for grounding: case-folded, whitespace collapsed."""
    return " ".join(value.split()).casefold()


def split_list(value: str) -> list[str]:
    """Split a `;`-separated CSV cell into trimmed, non-empty items."""
    return [item.strip() for item in value.split(";") if item.strip()]


class _Record(BaseModel):
    model_config = ConfigDict(frozen=True, str_strip_whitespace=True)


class FlightRecord(_Record):
    """One scheduled flight on one date."""

    record_type: Literal["flight"] = "flight"
    flight_number: str = Field(..., min_length=1)
    origin_city: str = Field(..., min_length=1)
    destination_city: str = Field(..., min_length=1)
    departure_time: dt.time
    arrival_time: dt.time
    duration_minutes: int = Field(..., ge=0)
    price: float = Field(..., ge=0)
    date: dt.date

    @model_validator(mode="after")
    def check_route(self) -> "FlightRecord":
        if normalize_name(self.origin_city) == normalize_name(self.destination_city):
            raise ValueError("origin_city and destination_city must differ")
        return self

    @classmethod
    def from_row(cls, row: dict[str, Any]) -> "FlightRecord":
        return cls(
            flight_number=row["flight_number"],
            origin_city=row["origin_city"],
            destination_city=row["destination_city"],
            departure_time=row["departure_time"],
            arrival_time=row["arrival_time"],
            duration_minutes=row["duration_min"],
            price=row["price"],
            date=row["date"],
        )


class HotelRecord(_Record):
    """Accommodation listing with its house rules."""

    record_type: Literal["hotel"] = "hotel"
    name: str = Field(..., min_length=1)
    city: str = Field(..., min_length=1)
    price_per_night: float = Field(..., ge=0)
    room_type: str = Field(..., min_length=1)
    house_rules: tuple[str, ...] = ()
    minimum_nights: int = Field(..., ge=1)
    maximum_occupancy: int = Field(..., ge=1)

    @classmethod
    def from_row(cls, row: dict[str, Any]) -> "HotelRecord":
        return cls(
            name=row["name"],
            city=row["city"],
            price_per_night=row["price_per_night"],
            room_type=row["room_type"],
            house_rules=tuple(split_list(row["house_rules"])),
            minimum_nights=row["minimum_nights"],
            maximum_occupancy=row["maximum_occupancy"],
        )


class RestaurantRecord(_Record):
    """Restaurant with cuisine tags and per-person cost."""

    record_type: Literal["restaurant"] = "restaurant"
    name: str = Field(..., min_length=1)
    city: str = Field(..., min_length=1)
    cuisines: tuple[str, ...] = Field(..., min_length=1)
    average_cost: float = Field(..., ge=0)
    rating: float = Field(..., ge=0, le=5)

    @classmethod
    def from_row(cls, row: dict[str, Any]) -> "RestaurantRecord":
        return cls(
            name=row["name"],
            city=row["city"],
            cuisines=tuple(split_list(row["cuisines"])),
            average_cost=row["average_cost"],
            rating=row["rating"],
        )


class AttractionRecord(_Record):
    """Point of interest in a city."""

    record_type: Literal["attraction"] = "attraction"
    name: str = Field(..., min_length=1)
    city: str = Field(..., min_length=1)
    address: str = ""

    @classmethod
    def from_row(cls, row: dict[str, Any]) -> "AttractionRecord":
        return cls(name=row["name"], city=row["city"], address=row["address"])


SandboxRecord = Annotated[
    FlightRecord | HotelRecord | RestaurantRecord | AttractionRecord,
    Field(discriminator="record_type"),
]

RECORD_KINDS: dict[str, EntityKind] = {
    "flight": EntityKind.FLIGHT,
    "hotel": EntityKind.HOTEL,
    "restaurant": EntityKind.RESTAURANT,
    "attraction": EntityKind.ATTRACTION,
}


def record_name(record: FlightRecord | HotelRecord | RestaurantRecord | AttractionRecord) -> str:
    """Name a grounding check looks up for this record."""
    if isinstance(record, FlightRecord):
        return record.flight_number
    return record.name
