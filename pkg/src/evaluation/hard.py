"""Hard-constraint validators and the plan cost model."""

import math

from pydantic import BaseModel, ConfigDict, computed_field

from src.plans import MEAL_FIELDS, Plan, parse_flight_leg, split_entity
from src.sandbox import HotelRecord, RestaurantRecord, Sandbox, normalize_name
from src.world_state import Goal

from .commonsense import stays
from .models import (
    BUDGET,
    CUISINE,
    NOT_REQUESTED,
    ROOM_RULE,
    ROOM_TYPE,
    TRANSPORTATION_PREFERENCE,
    ConstraintKind,
    ConstraintResult,
)

NOT_SHARED_ROOM = "not shared room"
SHARED_ROOM = "shared room"
NO_FLIGHT = "no flight"


class PlanCost(BaseModel):
    """Total cost of a plan and its parts; unknown entities cost nothing."""

    model_config = ConfigDict(frozen=True)

    flights: float = 0.0
    accommodation: float = 0.0
    meals: float = 0.0

    @computed_field  # type: ignore[prop-decorator]
    @property
    def total(self) -> float:
        return self.flights + self.accommodation + self.meals


def plan_cost(plan: Plan, goal: Goal, sandbox: Sandbox) -> PlanCost:
    """Price a plan for the whole party.

    flights x people + nightly rate x nights x rooms + meal cost x people,
    with rooms = ceil(people / maximum occupancy).
    """
    meta = goal.metadata
    people = meta.people_number
    flights = accommodation = meals = 0.0

    for day in plan.days:
        leg = parse_flight_leg(day.transportation)
        if leg is not None:
            date = meta.dates[day.day - 1] if day.day <= len(meta.dates) else None
            flight = sandbox.find_flight(leg.flight_number, date)
            if flight is not None:
                flights += flight.price * people

        for meal in MEAL_FIELDS:
            entity = split_entity(getattr(day, meal))
            if entity is not None:
                restaurant = sandbox.find_restaurant(*entity)
                if restaurant is not None:
                    meals += restaurant.average_cost * people

        entity = split_entity(day.accommodation)
        if entity is not None:
            hotel = sandbox.find_hotel(*entity)
            if hotel is not None:
                rooms = math.ceil(people / hotel.maximum_occupancy)
                accommodation += hotel.price_per_night * rooms

    return PlanCost(flights=flights, accommodation=accommodation, meals=meals)


def _hotels(plan: Plan, sandbox: Sandbox) -> tuple[list[HotelRecord], list[str]]:
    """Distinct hotels stayed at, plus the names the sandbox does not know."""
    found: list[HotelRecord] = []
    unknown: list[str] = []
    for name, city, _ in stays(plan):
        hotel = sandbox.find_hotel(name, city)
        if hotel is None:
            unknown.append(name)
        elif hotel not in found:
            found.append(hotel)
    return found, unknown


def _restaurants(plan: Plan, sandbox: Sandbox) -> list[RestaurantRecord]:
    found: list[RestaurantRecord] = []
    for day in plan.days:
        for meal in MEAL_FIELDS:
            entity = split_entity(getattr(day, meal))
            if entity is None:
                continue
            restaurant = sandbox.find_restaurant(*entity)
            if restaurant is not None and restaurant not in found:
                found.append(restaurant)
    return found


def _not_requested(name: str) -> ConstraintResult:
    return ConstraintResult.verdict(name, ConstraintKind.HARD, [], ok_detail=NOT_REQUESTED)


def check_budget(plan: Plan, goal: Goal, sandbox: Sandbox) -> ConstraintResult:
    """Total cost must not exceed the budget (equal is fine)."""
    budget = goal.metadata.budget
    if budget is None:
        return _not_requested(BUDGET)
    total = plan_cost(plan, goal, sandbox).total
    summary = f"total cost {total:.2f} vs budget {budget:.2f}"
    violations = [f"total cost {total:.2f} exceeds budget {budget:.2f}"] if total > budget else []
    return ConstraintResult.verdict(BUDGET, ConstraintKind.HARD, violations, ok_detail=summary)


def _room_type_matches(wanted: str, room_type: str) -> bool:
    wanted, room_type = normalize_name(wanted), normalize_name(room_type)
    if wanted == NOT_SHARED_ROOM:
        return room_type != SHARED_ROOM
    return wanted == room_type


def check_room_type(plan: Plan, goal: Goal, sandbox: Sandbox) -> ConstraintResult:
    wanted = goal.metadata.room_type
    if wanted is None:
        return _not_requested(ROOM_TYPE)
    hotels, unknown = _hotels(plan, sandbox)
    violations = [f"{name}: room type unknown" for name in unknown]
    violations.extend(
        f"{hotel.name} offers {hotel.room_type}, not {wanted}"
        for hotel in hotels
        if not _room_type_matches(wanted, hotel.room_type)
    )
    return ConstraintResult.verdict(ROOM_TYPE, ConstraintKind.HARD, violations)


def check_room_rule(plan: Plan, goal: Goal, sandbox: Sandbox) -> ConstraintResult:
    """The party's requirement (e.g. "pets") must not be forbidden by a "No <rule>" house rule."""
    rule = goal.metadata.house_rule
    if rule is None:
        return _not_requested(ROOM_RULE)
    forbidden = normalize_name(f"No {rule}")
    hotels, unknown = _hotels(plan, sandbox)
    violations = [f"{name}: house rules unknown" for name in unknown]
    violations.extend(
        f"{hotel.name} does not allow {rule}"
        for hotel in hotels
        if forbidden in {normalize_name(r) for r in hotel.house_rules}
    )
    return ConstraintResult.verdict(ROOM_RULE, ConstraintKind.HARD, violations)


def check_cuisine(plan: Plan, goal: Goal, sandbox: Sandbox) -> ConstraintResult:
    """Every requested cuisine is served by at least one restaurant in the plan."""
    wanted = goal.metadata.cuisines
    if not wanted:
        return _not_requested(CUISINE)
    served = {
        normalize_name(cuisine)
        for restaurant in _restaurants(plan, sandbox)
        for cuisine in restaurant.cuisines
    }
    violations = [f"no {c} restaurant" for c in wanted if normalize_name(c) not in served]
    return ConstraintResult.verdict(CUISINE, ConstraintKind.HARD, violations)


def check_transportation_preference(plan: Plan, goal: Goal) -> ConstraintResult:
    """A "no flight" request forbids every flight; other modes are not modelled."""
    wanted = goal.metadata.transportation
    if wanted is None:
        return _not_requested(TRANSPORTATION_PREFERENCE)
    violations: list[str] = []
    if normalize_name(wanted) == NO_FLIGHT:
        violations = [
            f"day {day.day}: flight {leg.flight_number} despite a no-flight request"
            for day in plan.days
            if (leg := parse_flight_leg(day.transportation)) is not None
        ]
    return ConstraintResult.verdict(TRANSPORTATION_PREFERENCE, ConstraintKind.HARD, violations)


def check_hard(plan: Plan, goal: Goal, sandbox: Sandbox) -> list[ConstraintResult]:
    """Evaluate every hard category, in report order; unrequested ones pass."""
    return [
        check_budget(plan, goal, sandbox),
        check_room_type(plan, goal, sandbox),
        check_room_rule(plan, goal, sandbox),
        check_cuisine(plan, goal, sandbox),
        check_transportation_preference(plan, goal),
    ]
