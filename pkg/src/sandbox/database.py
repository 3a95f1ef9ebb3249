"""In-memory indexed travel database and its retrieval operations."""

import datetime as dt
from collections import defaultdict
from collections.abc import Iterable
from types import MappingProxyType
from typing import TypeVar

from src.sandbox.models import (
    AttractionRecord,
    EntityKind,
    FlightRecord,
    HotelRecord,
    RestaurantRecord,
    normalize_name,
)

R = TypeVar("R", HotelRecord, RestaurantRecord, AttractionRecord)


class Sandbox:
    """Immutable travel database indexed by city (and date for flights).

    Built once by the loader and shared read-only between concurrent runs.
    Every search returns a fresh list; the underlying tuples never change.
    """

    def __init__(
        self,
        flights: Iterable[FlightRecord] = (),
        hotels: Iterable[HotelRecord] = (),
        restaurants: Iterable[RestaurantRecord] = (),
        attractions: Iterable[AttractionRecord] = (),
    ) -> None:
        self._flights = tuple(flights)
        self._hotels = tuple(hotels)
        self._restaurants = tuple(restaurants)
        self._attractions = tuple(attractions)

        flight_index: dict[tuple[str, str, dt.date], list[FlightRecord]] = defaultdict(list)
        for flight in self._flights:
            key = (
                normalize_name(flight.origin_city),
                normalize_name(flight.destination_city),
                flight.date,
            )
            flight_index[key].append(flight)
        self._flight_index = MappingProxyType(
            {
                key: tuple(sorted(rows, key=lambda f: (f.departure_time, f.flight_number)))
                for key, rows in flight_index.items()
            }
        )

        self._hotel_index = _index_by_city(self._hotels)
        self._restaurant_index = _index_by_city(self._restaurants)
        self._attraction_index = _index_by_city(self._attractions)

        cities: set[str] = set()
        for flight in self._flights:
            cities.update((flight.origin_city, flight.destination_city))
        for record in (*self._hotels, *self._restaurants, *self._attractions):
            cities.add(record.city)
        self._cities = frozenset(cities)

        self._names: MappingProxyType[EntityKind, frozenset[str]] = MappingProxyType(
            {
                EntityKind.FLIGHT: frozenset(
                    normalize_name(f.flight_number) for f in self._flights
                ),
                EntityKind.HOTEL: frozenset(normalize_name(h.name) for h in self._hotels),
                EntityKind.RESTAURANT: frozenset(
                    normalize_name(r.name) for r in self._restaurants
                ),
                EntityKind.ATTRACTION: frozenset(
                    normalize_name(a.name) for a in self._attractions
                ),
                EntityKind.CITY: frozenset(normalize_name(c) for c in self._cities),
            }
        )

    @property
    def city_set(self) -> frozenset[str]:
        """Every city named by any record."""
        return self._cities

    @property
    def counts(self) -> dict[str, int]:
        """Row counts per table."""
        return {
            "flights": len(self._flights),
            "hotels": len(self._hotels),
            "restaurants": len(self._restaurants),
            "attractions": len(self._attractions),
        }

    @property
    def flights(self) -> tuple[FlightRecord, ...]:
        return self._flights

    @property
    def hotels(self) -> tuple[HotelRecord, ...]:
        return self._hotels

    @property
    def restaurants(self) -> tuple[RestaurantRecord, ...]:
        return self._restaurants

    @property
    def attractions(self) -> tuple[AttractionRecord, ...]:
        return self._attractions

    def flight_search(self, origin: str, destination: str, date: dt.date) -> list[FlightRecord]:
        """Flights matching all three keys, ordered by departure time then flight number."""
        key = (normalize_name(origin), normalize_name(destination), date)
        return list(self._flight_index.get(key, ()))

    def hotel_search(self, city: str) -> list[HotelRecord]:
        """Hotels in a city, ordered by name."""
        return list(self._hotel_index.get(normalize_name(city), ()))

    def restaurant_search(self, city: str) -> list[RestaurantRecord]:
        """Restaurants in a city, ordered by name."""
        return list(self._restaurant_index.get(normalize_name(city), ()))

    def attraction_search(self, city: str) -> list[AttractionRecord]:
        """Attractions in a city, ordered by name."""
        return list(self._attraction_index.get(normalize_name(city), ()))

    def entity_exists(self, kind: EntityKind | str, name: str) -> bool:
        """True iff an entity of this kind carries exactly this canonical name."""
        return normalize_name(name) in self._names[EntityKind(kind)]

    def is_known_city(self, city: str) -> bool:
        return self.entity_exists(EntityKind.CITY, city)

    def find_flight(self, flight_number: str, date: dt.date | None = None) -> FlightRecord | None:
        """Look up a flight by number, preferring the one on `date` when given."""
        wanted = normalize_name(flight_number)
        matches = [f for f in self._flights if normalize_name(f.flight_number) == wanted]
        if date is not None:
            dated = [f for f in matches if f.date == date]
            if dated:
                return dated[0]
        return matches[0] if matches else None

    def find_hotel(self, name: str, city: str | None = None) -> HotelRecord | None:
        return _find_named(self._hotels, name, city)

    def find_restaurant(self, name: str, city: str | None = None) -> RestaurantRecord | None:
        return _find_named(self._restaurants, name, city)

    def find_attraction(self, name: str, city: str | None = None) -> AttractionRecord | None:
        return _find_named(self._attractions, name, city)


def _index_by_city(
    records: tuple[R, ...],
) -> MappingProxyType[str, tuple[R, ...]]:
    grouped: dict[str, list[R]] = defaultdict(list)
    for record in records:
        grouped[normalize_name(record.city)].append(record)
    return MappingProxyType(
        {city: tuple(sorted(rows, key=lambda r: r.name)) for city, rows in grouped.items()}
    )


def _find_named(records: tuple[R, ...], name: str, city: str | None) -> R | None:
    wanted = normalize_name(name)
    matches = [r for r in records if normalize_name(r.name) == wanted]
    if city is not None:
        in_city = [r for r in matches if normalize_name(r.city) == normalize_name(city)]
        if in_city:
            return in_city[0]
    return matches[0] if matches else None
