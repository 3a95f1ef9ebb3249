"""CSV loading for the travel database."""

import logging
from collections.abc import Callable, Hashable
from pathlib import Path
from typing import Any, TypeVar

import pandas as pd
from pydantic import BaseModel, ValidationError

from src.sandbox.database import Sandbox
from src.sandbox.models import (
    AttractionRecord,
    FlightRecord,
    HotelRecord,
    RestaurantRecord,
    normalize_name,
)

logger = logging.getLogger(__name__)

R = TypeVar("R", bound=BaseModel)

TABLE_COLUMNS: dict[str, tuple[str, ...]] = {
    "flights": (
        "flight_number",
        "origin_city",
        "destination_city",
        "departure_time",
        "arrival_time",
        "duration_min",
        "price",
        "date",
    ),
    "hotels": (
        "name",
        "city",
        "price_per_night",
        "room_type",
        "house_rules",
        "minimum_nights",
        "maximum_occupancy",
    ),
    "restaurants": ("name", "city", "cuisines", "average_cost", "rating"),
    "attractions": ("name", "city", "address"),
}


class SandboxLoadError(ValueError):
    """Raised when the travel database cannot be loaded in full."""


def _flight_key(record: FlightRecord) -> Hashable:
    return (normalize_name(record.flight_number), record.date)


def _named_key(record: HotelRecord | RestaurantRecord | AttractionRecord) -> Hashable:
    return (normalize_name(record.name), normalize_name(record.city))


def _read_table(path: Path, columns: tuple[str, ...]) -> pd.DataFrame:
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, encoding="utf-8")
    except pd.errors.EmptyDataError as e:
        raise SandboxLoadError(f"{path.name}: file is empty (header row required)") from e
    except (pd.errors.ParserError, UnicodeDecodeError) as e:
        raise SandboxLoadError(f"{path.name}: {e}") from e

    frame.columns = [str(column).strip() for column in frame.columns]
    missing = [column for column in columns if column not in frame.columns]
    if missing:
        raise SandboxLoadError(f"{path.name}: missing columns {', '.join(missing)}")
    return frame


def _parse_rows(
    path: Path,
    frame: pd.DataFrame,
    parse: Callable[[dict[str, Any]], R],
    key: Callable[[R], Hashable],
) -> list[R]:
    records: list[R] = []
    seen: dict[Hashable, int] = {}
    for position, row in enumerate(frame.to_dict(orient="records")):
        # header is line 1
        line = position + 2
        try:
            record = parse(row)
        except (ValidationError, ValueError, KeyError) as e:
            raise SandboxLoadError(f"{path.name} line {line}: malformed row ({e})") from e

        record_key = key(record)
        if record_key in seen:
            raise SandboxLoadError(
                f"{path.name} line {line}: duplicate key {record_key} "
                f"(first seen on line {seen[record_key]})"
            )
        seen[record_key] = line
        records.append(record)
    return records


def load_sandbox(data_dir: Path | str) -> Sandbox:
    """Load the four CSV tables from a directory into an indexed Sandbox.

    Args:
        data_dir: Directory holding flights.csv, hotels.csv, restaurants.csv
            and attractions.csv

    Returns:
        Sandbox with every row parsed

    Raises:
        SandboxLoadError: If a table is missing, a row is malformed or a key repeats
    """
    data_dir = Path(data_dir)
    if not data_dir.is_dir():
        raise SandboxLoadError(f"sandbox directory not found: {data_dir}")

    for name in TABLE_COLUMNS:
        if not (data_dir / f"{name}.csv").is_file():
            raise SandboxLoadError(f"missing table: {name}")

    def table(name: str) -> tuple[Path, pd.DataFrame]:
        path = data_dir / f"{name}.csv"
        return path, _read_table(path, TABLE_COLUMNS[name])

    flights = _parse_rows(*table("flights"), FlightRecord.from_row, _flight_key)
    hotels = _parse_rows(*table("hotels"), HotelRecord.from_row, _named_key)
    restaurants = _parse_rows(*table("restaurants"), RestaurantRecord.from_row, _named_key)
    attractions = _parse_rows(*table("attractions"), AttractionRecord.from_row, _named_key)

    sandbox = Sandbox(
        flights=flights,
        hotels=hotels,
        restaurants=restaurants,
        attractions=attractions,
    )
    logger.info(
        f"Loaded sandbox from {data_dir}: {len(sandbox.city_set)} cities",
        extra={"sandbox_dir": str(data_dir), **sandbox.counts},
    )
    return sandbox
