"""Unit tests for the travel database loader, searches and tools."""

import datetime as dt
import shutil

import pandas as pd
import pytest

from src.sandbox import (
    EntityKind,
    FlightRecord,
    HotelRecord,
    RestaurantRecord,
    Sandbox,
    SandboxLoadError,
    ToolArgumentError,
    describe_record,
    describe_results,
    execute_tool,
    load_sandbox,
    normalize_name,
)
from tests.support.corpus import SANDBOX_DIR


@pytest.fixture(scope="module")
def sandbox() -> Sandbox:
    return load_sandbox(SANDBOX_DIR)


@pytest.fixture
def sandbox_copy(tmp_path):
    target = tmp_path / "sandbox"
    shutil.copytree(SANDBOX_DIR, target)
    return target


class TestLoadSandbox:
    """Test suite for load_sandbox()."""

    def test_counts_match_fixture_files(self, sandbox):
        """Should load every data row of every table."""
        expected = {
            name: len(pd.read_csv(SANDBOX_DIR / f"{name}.csv"))
            for name in ("flights", "hotels", "restaurants", "attractions")
        }
        assert sandbox.counts == expected
        assert sandbox.counts == {
            "flights": 12,
            "hotels": 6,
            "restaurants": 9,
            "attractions": 8,
        }

    def test_city_set(self, sandbox):
        """Should collect every city mentioned by any record."""
        assert sandbox.city_set == frozenset({"Boston", "Rome", "Lisbon"})

    def test_list_cells_are_split(self, sandbox):
        """Should split `;` separated cuisines and treat empty rules as none."""
        toasties = sandbox.find_restaurant("Mr Toasties")
        assert toasties is not None
        assert toasties.cuisines == ("Vegetarian", "Cafe")
        bairro = sandbox.find_hotel("Bairro Rooms")
        assert bairro is not None
        assert bairro.house_rules == ()

    def test_missing_directory(self, tmp_path):
        """Should fail when the directory does not exist."""
        with pytest.raises(SandboxLoadError, match="not found"):
            load_sandbox(tmp_path / "nope")

    def test_missing_table(self, sandbox_copy):
        """Should name the missing table."""
        (sandbox_copy / "hotels.csv").unlink()
        with pytest.raises(SandboxLoadError, match="missing table: hotels"):
            load_sandbox(sandbox_copy)

    def test_missing_column(self, sandbox_copy):
        """Should reject a table without a required column."""
        (sandbox_copy / "attractions.csv").write_text("name,city\nColosseum,Rome\n")
        with pytest.raises(SandboxLoadError, match="missing columns address"):
            load_sandbox(sandbox_copy)

    def test_empty_file(self, sandbox_copy):
        """Should reject a file without a header row."""
        (sandbox_copy / "restaurants.csv").write_text("")
        with pytest.raises(SandboxLoadError, match="empty"):
            load_sandbox(sandbox_copy)

    def test_malformed_row_reports_line(self, sandbox_copy):
        """Should report the line of a row that fails validation."""
        path = sandbox_copy / "hotels.csv"
        path.write_text(path.read_text() + "Bad Hotel,Rome,not-a-price,Private room,,1,2\n")
        with pytest.raises(SandboxLoadError, match="hotels.csv line 8: malformed row"):
            load_sandbox(sandbox_copy)

    def test_flight_with_same_origin_and_destination(self, sandbox_copy):
        """Should reject a flight that goes nowhere."""
        path = sandbox_copy / "flights.csv"
        path.write_text(path.read_text() + "F9000,Rome,rome,08:00,09:00,60,10,2022-03-10\n")
        with pytest.raises(SandboxLoadError, match="malformed row"):
            load_sandbox(sandbox_copy)

    def test_duplicate_key(self, sandbox_copy):
        """Should reject two rows with the same name in the same city."""
        path = sandbox_copy / "restaurants.csv"
        path.write_text(path.read_text() + "mr toasties,Rome,Cafe,10,3.0\n")
        with pytest.raises(SandboxLoadError, match="duplicate key"):
            load_sandbox(sandbox_copy)

    def test_same_flight_number_on_another_date_is_allowed(self, sandbox_copy):
        """Should key flights by number and date."""
        path = sandbox_copy / "flights.csv"
        path.write_text(path.read_text() + "F1001,Boston,Rome,08:00,21:30,570,410,2022-03-17\n")
        loaded = load_sandbox(sandbox_copy)
        assert loaded.counts["flights"] == 13
        later = loaded.find_flight("F1001", dt.date(2022, 3, 17))
        assert later is not None
        assert later.price == 410


class TestSearches:
    """Test suite for the four retrieval operations."""

    def test_flight_search_filters_route_and_date(self, sandbox):
        """Should return only flights on that route and date, by departure time."""
        results = sandbox.flight_search("Boston", "Rome", dt.date(2022, 3, 10))
        assert [f.flight_number for f in results] == ["F1001", "F1002"]

    def test_flight_search_matches_brute_force(self, sandbox):
        """Should agree with a scan of the raw table on every route and date."""
        frame = pd.read_csv(SANDBOX_DIR / "flights.csv", dtype=str)
        for _, row in frame.iterrows():
            date = dt.date.fromisoformat(row["date"])
            expected = sorted(
                frame[
                    (frame.origin_city == row["origin_city"])
                    & (frame.destination_city == row["destination_city"])
                    & (frame.date == row["date"])
                ].flight_number
            )
            found = sandbox.flight_search(row["origin_city"], row["destination_city"], date)
            assert sorted(f.flight_number for f in found) == expected

    def test_flight_search_is_case_insensitive(self, sandbox):
        """Should normalize city names."""
        results = sandbox.flight_search("  boston", "ROME ", dt.date(2022, 3, 11))
        assert [f.flight_number for f in results] == ["F1003"]

    def test_flight_search_no_match(self, sandbox):
        """Should return an empty list for an unknown route."""
        assert sandbox.flight_search("Boston", "Paris", dt.date(2022, 3, 10)) == []

    def test_hotel_search_sorted_by_name(self, sandbox):
        """Should list the city's hotels by name."""
        names = [h.name for h in sandbox.hotel_search("Rome")]
        assert names == ["Casa Roma", "Hotel Trevi", "Ostello Sole"]

    def test_restaurant_search(self, sandbox):
        """Should list the city's restaurants by name."""
        names = [r.name for r in sandbox.restaurant_search("rome")]
        assert names == ["Mr Toasties", "Pizzeria Roma", "Sakura Sushi", "Trattoria Da Enzo"]

    def test_attraction_search(self, sandbox):
        """Should list the city's attractions by name."""
        names = [a.name for a in sandbox.attraction_search("Rome")]
        assert names == [
            "Colosseum",
            "Pantheon",
            "Roman Forum",
            "Trevi Fountain",
            "Vatican Museums",
        ]

    def test_unknown_city(self, sandbox):
        """Should return empty lists for a city with no records."""
        assert sandbox.hotel_search("Gotham") == []
        assert sandbox.restaurant_search("Gotham") == []
        assert sandbox.attraction_search("Gotham") == []

    def test_results_are_fresh_lists(self, sandbox):
        """Should not let callers mutate the database."""
        first = sandbox.hotel_search("Rome")
        first.clear()
        assert len(sandbox.hotel_search("Rome")) == 3


class TestEntityLookup:
    """Test suite for entity_exists() and the find helpers."""

    def test_normalization(self):
        """Should case-fold and collapse whitespace."""
        assert normalize_name("  Mr   TOASTIES ") == "mr toasties"

    def test_exists_ignores_case_and_spacing(self, sandbox):
        """Should find a name written differently."""
        assert sandbox.entity_exists("restaurant", "  mr toasties  ") is True
        assert sandbox.entity_exists(EntityKind.FLIGHT, "f1004") is True
        assert sandbox.entity_exists(EntityKind.CITY, "lisbon") is True

    def test_unknown_names(self, sandbox):
        """Should reject names absent from the table of that kind."""
        assert sandbox.entity_exists(EntityKind.HOTEL, "Grand Palace") is False
        assert sandbox.entity_exists(EntityKind.HOTEL, "Mr Toasties") is False
        assert sandbox.entity_exists(EntityKind.FLIGHT, "F9999") is False

    def test_unknown_kind(self, sandbox):
        """Should raise for a kind that does not exist."""
        with pytest.raises(ValueError):
            sandbox.entity_exists("spaceship", "Apollo")

    def test_find_prefers_city(self, sandbox):
        """Should return the record in the requested city."""
        record = sandbox.find_hotel("hotel trevi", "Rome")
        assert record is not None
        assert record.city == "Rome"

    def test_find_falls_back_to_any_city(self, sandbox):
        """Should return the record from another city when none matches the city."""
        record = sandbox.find_restaurant("Sakura Sushi", "Lisbon")
        assert record is not None
        assert record.city == "Rome"

    def test_find_flight_by_date(self, sandbox):
        """Should find a flight by number with or without a date."""
        assert sandbox.find_flight("F1004") is not None
        flight = sandbox.find_flight("F1004", dt.date(2022, 3, 12))
        assert isinstance(flight, FlightRecord)
        assert flight.price == 420
        assert sandbox.find_flight("F9999") is None


class TestExecuteTool:
    """Test suite for execute_tool()."""

    def test_flight_search_by_external_name(self, sandbox):
        """Should parse the date argument and run the search."""
        records = execute_tool(sandbox, "flight_search", ["Boston", "Lisbon", "2022-03-10"])
        assert [r.flight_number for r in records] == ["F2001"]  # type: ignore[union-attr]

    def test_restaurant_tool_spelling(self, sandbox):
        """Should expose the restaurant tool as `resturant_search`."""
        records = execute_tool(sandbox, "resturant_search", ["Boston"])
        assert len(records) == 2
        with pytest.raises(ToolArgumentError, match="unknown tool"):
            execute_tool(sandbox, "restaurant_search", ["Boston"])

    def test_wrong_arity(self, sandbox):
        """Should reject calls with the wrong number of arguments."""
        with pytest.raises(ToolArgumentError, match="takes 3 argument"):
            execute_tool(sandbox, "flight_search", ["Boston", "Rome"])
        with pytest.raises(ToolArgumentError, match="takes 1 argument"):
            execute_tool(sandbox, "hotel_search", ["Rome", "Lisbon"])

    def test_bad_date(self, sandbox):
        """Should reject a date that is not YYYY-MM-DD."""
        with pytest.raises(ToolArgumentError, match="invalid date"):
            execute_tool(sandbox, "flight_search", ["Boston", "Rome", "March 10"])

    def test_describe_results(self, sandbox):
        """Should render exact names and prices, one record per line."""
        records = execute_tool(sandbox, "hotel_search", ["Lisbon"])
        text = describe_results("hotel_search", ["Lisbon"], records)
        lines = text.splitlines()
        assert lines[0] == "hotel_search(Lisbon) returned 2 result(s):"
        assert "Name: Alfama Loft" in lines[1]
        assert "Price per night: 120" in lines[1]
        assert "House rules: none" in lines[2]

    def test_describe_keeps_exact_amounts(self):
        """Should print large and many-digit amounts exactly as stored."""
        hotel = HotelRecord(
            name="Palazzo Grande",
            city="Rome",
            price_per_night=1234567.0,
            room_type="Entire home/apt",
            minimum_nights=1,
            maximum_occupancy=2,
        )
        restaurant = RestaurantRecord(
            name="Osteria Precisa",
            city="Rome",
            cuisines=("Italian",),
            average_cost=123.456789,
            rating=4.25,
        )
        assert "Price per night: 1234567," in describe_record(hotel)
        described = describe_record(restaurant)
        assert "Average cost: 123.456789," in described
        assert described.endswith("Rating: 4.25")

    def test_describe_empty_results(self):
        """Should say nothing was found."""
        text = describe_results("attraction_search", ["Gotham"], [])
        assert text == "attraction_search(Gotham) returned 0 result(s)."
