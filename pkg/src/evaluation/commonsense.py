"""Commonsense validators: grounding, completeness, route, consistency, diversity."""

from collections import Counter, defaultdict
from collections.abc import Callable, Sequence

from src.plans import (
    CityStep,
    Plan,
    PlanMention,
    iter_mentions,
    parse_current_city,
    parse_flight_leg,
    split_entity,
)
from src.sandbox import (
    AttractionRecord,
    EntityKind,
    HotelRecord,
    RestaurantRecord,
    Sandbox,
    normalize_name,
)
from src.world_state import Goal

from .models import (
    ACCOMMODATION_RULES,
    CITY_VALID_ACCOMMODATION,
    CITY_VALID_ATTRACTION,
    CITY_VALID_RESTAURANT,
    CITY_VALID_TRANSPORTATION,
    COMPLETE_INFORMATION,
    DIVERSE_ATTRACTIONS,
    DIVERSE_RESTAURANTS,
    REASONABLE_CITY_ROUTE,
    TRANSPORTATION_CONSISTENCY,
    WITHIN_CURRENT_CITY,
    WITHIN_SANDBOX,
    ConstraintKind,
    ConstraintResult,
)

NamedRecord = HotelRecord | RestaurantRecord | AttractionRecord
Finder = Callable[[str, str | None], NamedRecord | None]


def _same(a: str | None, b: str | None) -> bool:
    return a is not None and b is not None and normalize_name(a) == normalize_name(b)


def _finder(sandbox: Sandbox, kind: EntityKind) -> Finder:
    finders: dict[EntityKind, Finder] = {
        EntityKind.HOTEL: sandbox.find_hotel,
        EntityKind.RESTAURANT: sandbox.find_restaurant,
        EntityKind.ATTRACTION: sandbox.find_attraction,
    }
    return finders[kind]


def _steps(plan: Plan) -> list[tuple[int, CityStep]]:
    steps = []
    for day in plan.days:
        step = parse_current_city(day.current_city)
        if step is not None:
            steps.append((day.day, step))
    return steps


def _where(mention: PlanMention) -> str:
    return f"day {mention.day} {mention.field}"


def sandbox_violations(plan: Plan, sandbox: Sandbox) -> list[str]:
    """One violation per plan mention that is not in the sandbox."""
    return [
        f"{_where(m)}: {m.kind.value} {m.name!r} is not in the sandbox"
        for m in iter_mentions(plan)
        if not sandbox.entity_exists(m.kind, m.name)
    ]


def check_within_sandbox(plan: Plan, sandbox: Sandbox) -> ConstraintResult:
    return ConstraintResult.verdict(
        WITHIN_SANDBOX, ConstraintKind.COMMONSENSE, sandbox_violations(plan, sandbox)
    )


def check_complete_information(plan: Plan, goal: Goal) -> ConstraintResult:
    """Right number of days; every day says where it is and what it needs.

    Travel days need transportation, every day but the last needs
    accommodation, and stay days need at least one meal and one attraction.
    """
    violations = []
    expected = goal.metadata.duration_days
    if len(plan.days) != expected:
        violations.append(f"plan has {len(plan.days)} days, expected {expected}")

    last = plan.days[-1].day
    for day in plan.days:
        step = parse_current_city(day.current_city)
        if step is None:
            violations.append(f"day {day.day}: no current city")
        elif step.is_transition and day.is_empty("transportation"):
            violations.append(f"day {day.day}: no transportation")
        elif not step.is_transition:
            if day.is_empty("attraction"):
                violations.append(f"day {day.day}: no attraction")
            if all(day.is_empty(meal) for meal in day.meals):
                violations.append(f"day {day.day}: no meals")
        if day.day < last and day.is_empty("accommodation"):
            violations.append(f"day {day.day}: no accommodation")
    return ConstraintResult.verdict(COMPLETE_INFORMATION, ConstraintKind.COMMONSENSE, violations)


def check_within_current_city(plan: Plan, sandbox: Sandbox) -> ConstraintResult:
    """Meals and attractions lie in one of the day's cities.

    The hotel must be in the city the day ends in.
    """
    by_day: dict[int, list[PlanMention]] = defaultdict(list)
    for mention in iter_mentions(plan):
        if mention.kind is not EntityKind.FLIGHT:
            by_day[mention.day].append(mention)

    violations = []
    for day_number, step in _steps(plan):
        cities = {normalize_name(step.city), normalize_name(step.end_city)}
        for mention in by_day[day_number]:
            city = mention.city
            if city is None:
                record = _finder(sandbox, mention.kind)(mention.name, None)
                city = record.city if record is not None else None
            if city is None:
                continue
            if mention.kind is EntityKind.HOTEL:
                if not _same(city, step.end_city):
                    violations.append(
                        f"{_where(mention)}: {mention.name} is in {city}, "
                        f"but the day ends in {step.end_city}"
                    )
            elif normalize_name(city) not in cities:
                violations.append(
                    f"{_where(mention)}: {mention.name} is in {city}, "
                    f"not in {' or '.join(sorted({step.city, step.end_city}))}"
                )
    return ConstraintResult.verdict(WITHIN_CURRENT_CITY, ConstraintKind.COMMONSENSE, violations)


def check_city_route(plan: Plan, goal: Goal, sandbox: Sandbox) -> ConstraintResult:
    """Closed loop from the origin, continuous day to day, visiting the destination."""
    meta = goal.metadata
    steps = _steps(plan)
    if not steps:
        return ConstraintResult.verdict(
            REASONABLE_CITY_ROUTE, ConstraintKind.COMMONSENSE, ["plan names no city"]
        )

    violations = []
    _, first = steps[0]
    if not _same(first.city, meta.origin):
        violations.append(f"trip starts in {first.city}, not {meta.origin}")
    _, last = steps[-1]
    if not _same(last.end_city, meta.origin):
        violations.append(f"trip ends in {last.end_city}, not back in {meta.origin}")

    for (day_a, a), (day_b, b) in zip(steps, steps[1:], strict=False):
        if not _same(a.end_city, b.city):
            violations.append(
                f"day {day_b} starts in {b.city} but day {day_a} ended in {a.end_city}"
            )

    visited: list[str] = []
    for _, step in steps:
        for city in (step.city, step.end_city):
            if not _same(city, meta.origin) and normalize_name(city) not in visited:
                visited.append(normalize_name(city))
    if sandbox.is_known_city(meta.destination) and normalize_name(meta.destination) not in visited:
        violations.append(f"destination {meta.destination} is never visited")
    if len(visited) != meta.visiting_city_number:
        violations.append(
            f"trip visits {len(visited)} cities, expected {meta.visiting_city_number}"
        )
    return ConstraintResult.verdict(REASONABLE_CITY_ROUTE, ConstraintKind.COMMONSENSE, violations)


def check_transportation_consistency(
    plan: Plan, goal: Goal, sandbox: Sandbox
) -> ConstraintResult:
    """Every city change has a matching flight on that day's date, and only city changes do."""
    dates = goal.metadata.dates
    violations = []
    for day in plan.days:
        step = parse_current_city(day.current_city)
        leg = parse_flight_leg(day.transportation)
        moving = step is not None and step.is_transition

        if step is not None and moving and leg is None:
            violations.append(
                f"day {day.day}: travels from {step.city} to {step.destination} without a flight"
            )
        if leg is None:
            continue
        if not moving:
            violations.append(
                f"day {day.day}: flight {leg.flight_number} on a day without a city change"
            )
        elif step is not None and not (
            _same(leg.origin, step.city) and _same(leg.destination, step.destination)
        ):
            violations.append(
                f"day {day.day}: flight {leg.flight_number} goes from {leg.origin} to "
                f"{leg.destination}, but the day travels from {step.city} to {step.destination}"
            )

        date = dates[day.day - 1] if day.day <= len(dates) else None
        record = sandbox.find_flight(leg.flight_number, date)
        if record is None:
            continue
        same_route = _same(record.origin_city, leg.origin) and _same(
            record.destination_city, leg.destination
        )
        if not same_route:
            violations.append(
                f"day {day.day}: flight {record.flight_number} flies from {record.origin_city} "
                f"to {record.destination_city}, not from {leg.origin} to {leg.destination}"
            )
        if date is not None and record.date != date:
            violations.append(
                f"day {day.day}: flight {record.flight_number} departs on {record.date}, "
                f"not on {date}"
            )
    return ConstraintResult.verdict(
        TRANSPORTATION_CONSISTENCY, ConstraintKind.COMMONSENSE, violations
    )


def check_transport_cities(plan: Plan, sandbox: Sandbox) -> ConstraintResult:
    """Every city a day travels through or a flight connects is a sandbox city."""
    violations = []
    for day in plan.days:
        cities: list[str] = []
        step = parse_current_city(day.current_city)
        if step is not None:
            cities.extend([step.city, step.end_city])
        leg = parse_flight_leg(day.transportation)
        if leg is not None:
            cities.extend([leg.origin, leg.destination])
        seen: set[str] = set()
        for city in cities:
            key = normalize_name(city)
            if key in seen:
                continue
            seen.add(key)
            if not sandbox.is_known_city(city):
                violations.append(f"day {day.day}: unknown city {city!r}")
    return ConstraintResult.verdict(
        CITY_VALID_TRANSPORTATION, ConstraintKind.COMMONSENSE, violations
    )


def _entity_city_violations(
    mentions: Sequence[PlanMention], sandbox: Sandbox
) -> list[str]:
    violations = []
    for mention in mentions:
        if mention.city is None:
            violations.append(f"{_where(mention)}: {mention.name!r} names no city")
            continue
        if not sandbox.is_known_city(mention.city):
            violations.append(f"{_where(mention)}: unknown city {mention.city!r}")
            continue
        record = _finder(sandbox, mention.kind)(mention.name, mention.city)
        if record is not None and not _same(record.city, mention.city):
            violations.append(
                f"{_where(mention)}: {record.name} is in {record.city}, not {mention.city}"
            )
    return violations


def check_entity_cities(plan: Plan, sandbox: Sandbox, kind: EntityKind) -> ConstraintResult:
    """Hotels, restaurants or attractions are listed with the city the sandbox has them in."""
    names = {
        EntityKind.HOTEL: CITY_VALID_ACCOMMODATION,
        EntityKind.RESTAURANT: CITY_VALID_RESTAURANT,
        EntityKind.ATTRACTION: CITY_VALID_ATTRACTION,
    }
    mentions = [m for m in iter_mentions(plan) if m.kind is kind]
    return ConstraintResult.verdict(
        names[kind], ConstraintKind.COMMONSENSE, _entity_city_violations(mentions, sandbox)
    )


def _repeats(plan: Plan, kind: EntityKind) -> list[str]:
    counts: Counter[str] = Counter()
    display: dict[str, str] = {}
    for mention in iter_mentions(plan):
        if mention.kind is kind:
            key = normalize_name(mention.name)
            counts[key] += 1
            display.setdefault(key, mention.name)
    return [f"{display[key]} appears {n} times" for key, n in counts.items() if n > 1]


def check_diverse_restaurants(plan: Plan) -> ConstraintResult:
    return ConstraintResult.verdict(
        DIVERSE_RESTAURANTS, ConstraintKind.COMMONSENSE, _repeats(plan, EntityKind.RESTAURANT)
    )


def check_diverse_attractions(plan: Plan) -> ConstraintResult:
    return ConstraintResult.verdict(
        DIVERSE_ATTRACTIONS, ConstraintKind.COMMONSENSE, _repeats(plan, EntityKind.ATTRACTION)
    )


def stays(plan: Plan) -> list[tuple[str, str | None, int]]:
    """Consecutive nights at the same hotel: (name, city, nights), in order."""
    runs: list[tuple[str, str | None, int]] = []
    previous: str | None = None
    for day in plan.days:
        entity = split_entity(day.accommodation)
        if entity is None:
            previous = None
            continue
        name, city = entity
        key = normalize_name(name)
        if runs and key == previous:
            runs[-1] = (runs[-1][0], runs[-1][1], runs[-1][2] + 1)
        else:
            runs.append((name, city, 1))
        previous = key
    return runs


def check_accommodation_rules(plan: Plan, goal: Goal, sandbox: Sandbox) -> ConstraintResult:
    """Minimum nights and occupancy per stay, and no hotel booked on the last day."""
    people = goal.metadata.people_number
    violations = []
    for name, city, nights in stays(plan):
        hotel = sandbox.find_hotel(name, city)
        if hotel is None:
            continue
        if nights < hotel.minimum_nights:
            violations.append(
                f"{hotel.name}: {nights} night(s), minimum stay is {hotel.minimum_nights}"
            )
        if people > hotel.maximum_occupancy:
            violations.append(
                f"{hotel.name}: party of {people} exceeds occupancy {hotel.maximum_occupancy}"
            )
    last = plan.days[-1]
    if not last.is_empty("accommodation"):
        violations.append(f"day {last.day}: accommodation booked on the last day")
    return ConstraintResult.verdict(ACCOMMODATION_RULES, ConstraintKind.COMMONSENSE, violations)


def check_commonsense(plan: Plan, sandbox: Sandbox, goal: Goal) -> list[ConstraintResult]:
    """Evaluate every commonsense category on a parsed plan, in report order."""
    return [
        check_within_sandbox(plan, sandbox),
        check_complete_information(plan, goal),
        check_within_current_city(plan, sandbox),
        check_city_route(plan, goal, sandbox),
        check_transportation_consistency(plan, goal, sandbox),
        check_transport_cities(plan, sandbox),
        check_entity_cities(plan, sandbox, EntityKind.HOTEL),
        check_entity_cities(plan, sandbox, EntityKind.RESTAURANT),
        check_entity_cities(plan, sandbox, EntityKind.ATTRACTION),
        check_diverse_restaurants(plan),
        check_diverse_attractions(plan),
        check_accommodation_rules(plan, goal, sandbox),
    ]
