"""Chat completion gateway: remote HTTP backend and deterministic cassette replay."""

from .cassette import (
    CassetteRecord,
    CassetteRecorder,
    ScriptedBackend,
    read_cassette,
    write_cassette,
)
from .errors import (
    CassetteMismatchError,
    CassetteWriteError,
    GatewayError,
    MalformedReplyError,
    RemoteRequestError,
    RetryExhaustedError,
    ScriptUnderrunError,
)
from .gateway import Backend, LLMGateway, complete, create_gateway, record_replay
from .models import (
    BackendConfig,
    BackendKind,
    ChatRequest,
    ChatResponse,
    ChatTurn,
    FinishReason,
    Usage,
)
from .rate_limit import TokenBucket
from .remote import RemoteBackend

__all__ = [
    "CassetteRecord",
    "CassetteRecorder",
    "ScriptedBackend",
    "read_cassette",
    "write_cassette",
    "CassetteMismatchError",
    "CassetteWriteError",
    "GatewayError",
    "MalformedReplyError",
    "RemoteRequestError",
    "RetryExhaustedError",
    "ScriptUnderrunError",
    "Backend",
    "LLMGateway",
    "complete",
    "create_gateway",
    "record_replay",
    "BackendConfig",
    "BackendKind",
    "ChatRequest",
    "ChatResponse",
    "ChatTurn",
    "FinishReason",
    "Usage",
    "TokenBucket",
    "RemoteBackend",
]
