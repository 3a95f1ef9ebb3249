"""Cassettes: recorded request/response sequences and their replay backend."""

import json
import logging
from collections import defaultdict, deque
from collections.abc import Iterable
from pathlib import Path

from pydantic import BaseModel, ConfigDict, ValidationError

from src.llm_gateway.errors import (
    CassetteMismatchError,
    CassetteWriteError,
    GatewayError,
    ScriptUnderrunError,
)
from src.llm_gateway.models import ChatRequest, ChatResponse, FinishReason

logger = logging.getLogger(__name__)


class CassetteRecord(BaseModel):
    """One line of a cassette file.

    `request_digest` may be null in hand-written scripts; such records are
    replayed without a divergence check.
    """

    model_config = ConfigDict(frozen=True)

    role: str
    request_digest: str | None = None
    response_text: str

    def to_line(self) -> str:
        return json.dumps(self.model_dump(mode="json"), ensure_ascii=False, sort_keys=True)


def read_cassette(path: Path) -> list[CassetteRecord]:
    """Parse a cassette file; a missing file is an empty cassette.

    Raises:
        GatewayError: If a line is not a valid record
    """
    if not path.exists():
        return []
    records: list[CassetteRecord] = []
    for line_number, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        try:
            records.append(CassetteRecord.model_validate_json(line))
        except ValidationError as e:
            raise GatewayError(f"{path.name} line {line_number}: invalid cassette record") from e
    return records


def write_cassette(path: Path, records: Iterable[CassetteRecord]) -> None:
    """Write a whole cassette file, replacing any existing one."""
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text("".join(f"{r.to_line()}\n" for r in records), encoding="utf-8")
    except OSError as e:
        raise CassetteWriteError(f"Cannot write cassette {path}: {e}") from e


class CassetteRecorder:
    """Appends every exchange to a cassette as it happens."""

    def __init__(self, path: Path) -> None:
        self.path = path

    def append(self, request: ChatRequest, response: ChatResponse) -> CassetteRecord:
        record = CassetteRecord(
            role=request.role,
            request_digest=request.digest(),
            response_text=response.text or "",
        )
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a", encoding="utf-8") as f:
                f.write(f"{record.to_line()}\n")
        except OSError as e:
            raise CassetteWriteError(f"Cannot append to cassette {self.path}: {e}") from e
        return record


class ScriptedBackend:
    """Replays a cassette: each role gets its own queue, consumed in order."""

    def __init__(self, records: Iterable[CassetteRecord], source: str = "<script>") -> None:
        self._source = source
        self._queues: dict[str, deque[tuple[int, CassetteRecord]]] = defaultdict(deque)
        for line_number, record in enumerate(records, start=1):
            self._queues[record.role].append((line_number, record))
        self._turn = 0

    @classmethod
    def from_path(cls, path: Path) -> "ScriptedBackend":
        return cls(read_cassette(path), source=path.name)

    def remaining(self, role: str) -> int:
        return len(self._queues.get(role, ()))

    async def complete(self, request: ChatRequest) -> ChatResponse:
        self._turn += 1
        queue = self._queues.get(request.role)
        if not queue:
            raise ScriptUnderrunError(
                f"{self._source}: no scripted response left for {request.role} "
                f"(turn {self._turn})"
            )
        line_number, record = queue.popleft()
        if record.request_digest is not None and record.request_digest != request.digest():
            raise CassetteMismatchError(
                f"{self._source}: request diverges at turn {self._turn} "
                f"({request.role}, cassette line {line_number})"
            )
        logger.debug(
            f"Replayed cassette line {line_number} for {request.role}",
            extra={"role": request.role, "turn": self._turn},
        )
        return ChatResponse(text=record.response_text, finish_reason=FinishReason.COMPLETE)

    async def aclose(self) -> None:
        return None
