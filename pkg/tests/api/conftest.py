"""Pytest fixtures for API testing."""

from collections.abc import Iterator

import pytest
from fastapi.testclient import TestClient

from src.api.config import get_api_config
from src.api.main import app
from tests.support.corpus import SANDBOX_DIR


def _client(monkeypatch: pytest.MonkeyPatch, sandbox_dir: str) -> Iterator[TestClient]:
    monkeypatch.setenv("API_SANDBOX_DIR", sandbox_dir)
    get_api_config.cache_clear()
    with TestClient(app) as client:
        yield client
    get_api_config.cache_clear()


@pytest.fixture
def client(monkeypatch: pytest.MonkeyPatch) -> Iterator[TestClient]:
    """Provide a TestClient whose app loaded the fixture sandbox."""
    yield from _client(monkeypatch, str(SANDBOX_DIR))


@pytest.fixture
def client_without_sandbox(monkeypatch: pytest.MonkeyPatch, tmp_path) -> Iterator[TestClient]:
    """Provide a TestClient whose sandbox directory does not exist."""
    yield from _client(monkeypatch, str(tmp_path / "missing"))
