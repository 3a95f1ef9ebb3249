"""Canonical itinerary schema, parser and serializer."""

from .entities import (
    CityStep,
    FlightLeg,
    PlanMention,
    iter_mentions,
    parse_current_city,
    parse_flight_leg,
    split_attractions,
    split_entity,
)
from .models import EMPTY, FIELD_KEYS, MEAL_FIELDS, ItineraryDay, Plan, PlanParseError
from .parser import parse_plan, serialize_plan, try_parse_plan

__all__ = [
    "CityStep",
    "FlightLeg",
    "PlanMention",
    "iter_mentions",
    "parse_current_city",
    "parse_flight_leg",
    "split_attractions",
    "split_entity",
    "EMPTY",
    "FIELD_KEYS",
    "MEAL_FIELDS",
    "ItineraryDay",
    "Plan",
    "PlanParseError",
    "parse_plan",
    "serialize_plan",
    "try_parse_plan",
]
