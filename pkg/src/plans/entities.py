"""Entity strings inside plan fields: "Name, City", flight legs and city transitions."""

import re
from collections.abc import Iterator

from pydantic import BaseModel, ConfigDict

from src.plans.models import EMPTY, MEAL_FIELDS, Plan
from src.sandbox import EntityKind

_FLIGHT_LEG = re.compile(
    r"^flight\s+number\s*:\s*(?P<number>[^,]+?)\s*,"
    r"\s*from\s+(?P<origin>.+?)\s+to\s+(?P<dest>.+?)\s*$",
    re.IGNORECASE,
)
_TRANSITION = re.compile(r"^from\s+(?P<origin>.+?)\s+to\s+(?P<dest>.+?)\s*$", re.IGNORECASE)


class FlightLeg(BaseModel):
    model_config = ConfigDict(frozen=True)

    flight_number: str
    origin: str
    destination: str


class CityStep(BaseModel):
    """A day's city: either a stay (destination is None) or a transition."""

    model_config = ConfigDict(frozen=True)

    city: str
    destination: str | None = None

    @property
    def is_transition(self) -> bool:
        return self.destination is not None

    @property
    def end_city(self) -> str:
        return self.destination if self.destination is not None else self.city


class PlanMention(BaseModel):
    """One entity a plan names, with where it was named."""

    model_config = ConfigDict(frozen=True)

    kind: EntityKind
    day: int
    field: str
    name: str
    city: str | None = None


def split_entity(value: str) -> tuple[str, str | None] | None:
    """Split "Name, City" on the last comma; "-" gives None."""
    value = value.strip()
    if not value or value == EMPTY:
        return None
    name, comma, city = value.rpartition(",")
    if not comma:
        return value, None
    return name.strip(), city.strip() or None


def split_attractions(value: str) -> list[tuple[str, str | None]]:
    """Entities of a `;`-separated attraction field."""
    entities = []
    for item in value.split(";"):
        entity = split_entity(item)
        if entity is not None:
            entities.append(entity)
    return entities


def parse_flight_leg(value: str) -> FlightLeg | None:
    """Parse "Flight Number: <id>, from <A> to <B>"; anything else gives None."""
    match = _FLIGHT_LEG.match(value.strip())
    if match is None:
        return None
    return FlightLeg(
        flight_number=match.group("number"),
        origin=match.group("origin"),
        destination=match.group("dest"),
    )


def parse_current_city(value: str) -> CityStep | None:
    """Parse a Current City field: "from A to B" or a single city."""
    value = value.strip()
    if not value or value == EMPTY:
        return None
    match = _TRANSITION.match(value)
    if match is not None:
        return CityStep(city=match.group("origin"), destination=match.group("dest"))
    return CityStep(city=value)


def iter_mentions(plan: Plan) -> Iterator[PlanMention]:
    """Every flight, hotel, restaurant and attraction the plan names, in day order."""
    for day in plan.days:
        leg = parse_flight_leg(day.transportation)
        if leg is not None:
            yield PlanMention(
                kind=EntityKind.FLIGHT,
                day=day.day,
                field="transportation",
                name=leg.flight_number,
            )
        for meal in MEAL_FIELDS:
            entity = split_entity(getattr(day, meal))
            if entity is not None:
                yield PlanMention(
                    kind=EntityKind.RESTAURANT,
                    day=day.day,
                    field=meal,
                    name=entity[0],
                    city=entity[1],
                )
        for name, city in split_attractions(day.attraction):
            yield PlanMention(
                kind=EntityKind.ATTRACTION,
                day=day.day,
                field="attraction",
                name=name,
                city=city,
            )
        entity = split_entity(day.accommodation)
        if entity is not None:
            yield PlanMention(
                kind=EntityKind.HOTEL,
                day=day.day,
                field="accommodation",
                name=entity[0],
                city=entity[1],
            )
