"""Tests for the sandbox tool and entity endpoints."""

from fastapi.testclient import TestClient


class TestToolEndpoint:
    """Tests for GET /api/v1/tools/{tool_name}."""

    def test_flight_search(self, client: TestClient):
        """Test that flights are returned with their rendered text."""
        response = client.get(
            "/api/v1/tools/flight_search",
            params={"origin": "Boston", "destination": "Rome", "date": "2022-03-10"},
        )

        assert response.status_code == 200
        data = response.json()
        assert data["tool"] == "flight_search"
        assert data["arguments"] == ["Boston", "Rome", "2022-03-10"]
        assert data["count"] == 2
        assert [r["flight_number"] for r in data["records"]] == ["F1001", "F1002"]
        assert data["text"].startswith("flight_search(Boston, Rome, 2022-03-10) returned 2")

    def test_restaurant_search_keeps_tool_spelling(self, client: TestClient):
        """Test that the restaurant tool answers under its external name."""
        response = client.get("/api/v1/tools/resturant_search", params={"city": "rome"})

        assert response.status_code == 200
        names = [r["name"] for r in response.json()["records"]]
        assert names == ["Mr Toasties", "Pizzeria Roma", "Sakura Sushi", "Trattoria Da Enzo"]

    def test_unknown_city_is_empty(self, client: TestClient):
        """Test that an unknown city returns no records rather than an error."""
        response = client.get("/api/v1/tools/hotel_search", params={"city": "Atlantis"})

        assert response.status_code == 200
        assert response.json()["count"] == 0

    def test_unknown_tool(self, client: TestClient):
        """Test that an unknown tool is 404."""
        response = client.get("/api/v1/tools/weather_search", params={"city": "Rome"})

        assert response.status_code == 404
        assert response.json()["detail"]["error"] == "unknown_tool"

    def test_missing_parameter(self, client: TestClient):
        """Test that a missing query parameter is 400."""
        response = client.get("/api/v1/tools/flight_search", params={"origin": "Boston"})

        assert response.status_code == 400
        detail = response.json()["detail"]
        assert detail["error"] == "missing_parameters"
        assert "destination, date" in detail["message"]

    def test_bad_date(self, client: TestClient):
        """Test that an unparseable date is 400."""
        response = client.get(
            "/api/v1/tools/flight_search",
            params={"origin": "Boston", "destination": "Rome", "date": "next tuesday"},
        )

        assert response.status_code == 400
        assert response.json()["detail"]["error"] == "invalid_arguments"

    def test_sandbox_unavailable(self, client_without_sandbox: TestClient):
        """Test that tools are 503 when the sandbox did not load."""
        response = client_without_sandbox.get("/api/v1/tools/hotel_search", params={"city": "Rome"})

        assert response.status_code == 503
        assert response.json()["detail"]["error"] == "sandbox_unavailable"


class TestEntityEndpoint:
    """Tests for GET /api/v1/entities/{kind}/{name}."""

    def test_known_hotel(self, client: TestClient):
        """Test that a sandbox hotel exists and carries its record."""
        response = client.get("/api/v1/entities/hotel/hotel trevi", params={"city": "Rome"})

        assert response.status_code == 200
        data = response.json()
        assert data["exists"] is True
        assert data["record"]["price_per_night"] == 90

    def test_hallucinated_restaurant(self, client: TestClient):
        """Test that an invented name does not exist."""
        response = client.get("/api/v1/entities/restaurant/Luigi's Grill")

        assert response.status_code == 200
        assert response.json()["exists"] is False
        assert response.json()["record"] is None

    def test_city(self, client: TestClient):
        """Test that cities are checked without a record."""
        data = client.get("/api/v1/entities/city/Lisbon").json()

        assert data["exists"] is True
        assert data["record"] is None

    def test_unknown_kind(self, client: TestClient):
        """Test that an unknown entity kind is 422."""
        response = client.get("/api/v1/entities/castle/Windsor")

        assert response.status_code == 422
