"""Canonical itinerary schema."""

from typing import Any, Self

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

EMPTY = "-"

# Plan key as written in the text -> ItineraryDay attribute
FIELD_KEYS: dict[str, str] = {
    "Current City": "current_city",
    "Transportation": "transportation",
    "Breakfast": "breakfast",
    "Lunch": "lunch",
    "Dinner": "dinner",
    "Attraction": "attraction",
    "Accommodation": "accommodation",
}

MEAL_FIELDS: tuple[str, ...] = ("breakfast", "lunch", "dinner")


class PlanParseError(ValueError):
    """Raised when no well-formed plan block can be found in a text."""


def clean_value(value: Any) -> str:
    """Canonical field value: markdown emphasis dropped, whitespace collapsed, empty -> "-"."""
    text = " ".join(str(value).replace("**", "").split())
    return text or EMPTY


class ItineraryDay(BaseModel):
    """One day of the itinerary; absent fields are "-"."""

    model_config = ConfigDict(frozen=True)

    day: int = Field(..., ge=1)
    current_city: str = EMPTY
    transportation: str = EMPTY
    breakfast: str = EMPTY
    lunch: str = EMPTY
    dinner: str = EMPTY
    attraction: str = EMPTY
    accommodation: str = EMPTY

    @field_validator(*FIELD_KEYS.values(), mode="before")
    @classmethod
    def normalize(cls, value: Any) -> str:
        return EMPTY if value is None else clean_value(value)

    def is_empty(self, field: str) -> bool:
        return getattr(self, field) == EMPTY

    @property
    def meals(self) -> dict[str, str]:
        return {meal: getattr(self, meal) for meal in MEAL_FIELDS}


class Plan(BaseModel):
    """Ordered itinerary days plus the text they were parsed from.

    Equality compares days only.
    """

    model_config = ConfigDict(frozen=True)

    days: tuple[ItineraryDay, ...] = Field(..., min_length=1)
    raw_text: str = ""

    @model_validator(mode="after")
    def validate_day_order(self) -> Self:
        for i, day in enumerate(self.days, start=1):
            if day.day != i:
                raise ValueError(f"Day {i} has incorrect day number: {day.day}")
        return self

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Plan):
            return NotImplemented
        return self.days == other.days

    def __hash__(self) -> int:
        return hash(self.days)

    def __len__(self) -> int:
        return len(self.days)
